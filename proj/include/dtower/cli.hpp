/*
   Copyright 2026 The dtower Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DTOWER_CLI_HPP
#define DTOWER_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dtower/counting.hpp"
#include "dtower/serialize.hpp"

namespace dtower::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;

enum class Format { json, csv };

struct RunConfig {
    std::uint64_t q = 2;
    unsigned n = 2;
    Variant variant = Variant::xprime;
    unsigned m_first = 1;
    unsigned m_last = 1;
    Format format = Format::json;
    std::uint64_t cap = kDefaultFieldCap;
    std::optional<unsigned> genus;
    bool supersingular_only = false;
    unsigned workers = 1;
    ModulusTable moduli;

    /// Throws InvalidArgument when the invariants fail (q prime power, n >= 2, m1 <= m2).
    void validate() const;
    /// Every setting that can change the output; the worker count is left out.
    Json echo() const;
};

/// "key = value" lines with keys named after the long flags; '#' starts a comment.
/// Applies the entries on top of `cfg`.
void apply_config_text(const std::string& text, RunConfig& cfg);

/// "deg=c0,c1,...,cdeg".
std::pair<unsigned, std::vector<std::uint32_t>> parse_modulus_flag(const std::string& text);
/// "m" or "m1..m2".
std::pair<unsigned, unsigned> parse_ext(const std::string& text);
/// Decimal or "b^e".
std::uint64_t parse_cap(const std::string& text);

// Commands write their report to `out` and return an exit code. Errors escape as exceptions.
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_enumerate(const RunConfig& cfg, std::ostream& out);
int cmd_count(const RunConfig& cfg, std::ostream& out);
int cmd_zeta(const RunConfig& cfg, std::ostream& out);

/// Full command line: dtower <verify|enumerate|count|zeta> [flags].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dtower::cli

#endif  // DTOWER_CLI_HPP
