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

#ifndef DTOWER_SERIALIZE_HPP
#define DTOWER_SERIALIZE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtower/counting.hpp"
#include "dtower/drinfeld.hpp"
#include "dtower/finite_field.hpp"
#include "dtower/linearized.hpp"

namespace dtower {

using Json = nlohmann::ordered_json;

Json to_json(const FieldElement& a);
Json to_json(const FieldSpec& F);
/// {q, field, tau_degree, coeffs}
Json to_json(const LinearizedPoly& u);
/// {q, field, l0, g, delta}
Json to_json(const DrinfeldModule& M);
Json to_json(const ZetaReport& z);
Json to_json(const CountReport& r);
Json to_json(const HermitianReport& r);

LinearizedPoly linearized_from_json(const Json& j, std::uint64_t cap = kDefaultFieldCap);
DrinfeldModule module_from_json(const Json& j, std::uint64_t cap = kDefaultFieldCap);

/// Exact rationals print as "a" or "a/b".
std::string rational_string(const Rational& r);

/// A point listing: one row of coordinates per point plus its metadata block.
struct PointListing {
    std::uint64_t q = 0;
    unsigned n = 0;
    Variant variant = Variant::xprime;
    std::string field;
    bool affine_only = true;
    bool supersingular_only = false;
    std::optional<std::uint64_t> skipped_minus_one;
    std::vector<std::string> columns;            // x1..xn or Z2..Zn
    std::vector<std::vector<std::string>> rows;  // element strings
};

Json to_json(const PointListing& p);
/// "# key: value" metadata lines, a header row, then one quoted row per point.
std::string to_csv(const PointListing& p);
/// m,field,N_m,supersingular
std::string to_csv(const CountReport& r);

}  // namespace dtower

#endif  // DTOWER_SERIALIZE_HPP
