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

#ifndef DTOWER_COUNTING_HPP
#define DTOWER_COUNTING_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dtower/finite_field.hpp"

namespace dtower {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Variant { xprime, x0 };

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

/// Explicit moduli keyed by extension degree over the prime field.
using ModulusTable = std::map<unsigned, std::vector<std::uint32_t>>;

/// GF(q^(2m)) with the default modulus unless `moduli` overrides that degree.
FieldSpec extension_field(std::uint64_t q, unsigned m, std::uint64_t cap = kDefaultFieldCap,
                          const ModulusTable& moduli = {});

// ---------------------------------------------------------------------------
// Zeta consistency

/// Result of fitting an L-polynomial to projective counts N_1..N_K of a genus-g
/// curve over GF(q1). All algebra is exact; only the Weil deviation is numeric.
struct ZetaReport {
    unsigned genus = 0;
    std::uint64_t q1 = 0;
    std::vector<std::int64_t> counts;  // N_1..N_K as given
    /// L(t) = a_0 + a_1 t + ... + a_{2g} t^{2g}, a_0 = 1; indices above K completed
    /// from the functional equation a_{2g-i} = q1^(g-i) a_i.
    std::vector<Rational> l_poly;
    bool integral = true;
    /// max |a_k - q1^(k-g) a_{2g-k}| over coefficients fixed directly by the data.
    Rational functional_equation_residual;
    /// max |S_m(predicted) - S_m(given)| over the supplied counts.
    Rational count_residual;
    /// Distinct roots of the real Weil polynomial (x = alpha + q1/alpha).
    std::vector<double> real_roots;
    /// Moduli |alpha| of the inverse Frobenius roots (one pair per real root).
    std::vector<double> root_moduli;
    /// max ||alpha| - sqrt(q1)|.
    double weil_deviation = 0.0;

    bool residuals_zero() const { return functional_equation_residual == 0 && count_residual == 0; }
};

/// Needs at least `genus` counts (and at least one).
ZetaReport zeta_consistency(std::span<const std::int64_t> projective_counts, unsigned genus, std::uint64_t q1);

// ---------------------------------------------------------------------------
// Counts

struct CountOptions {
    unsigned workers = 1;
    std::uint64_t cap = kDefaultFieldCap;
    ModulusTable moduli;
};

struct ExtensionCount {
    unsigned m = 0;
    std::string field;
    std::uint64_t field_size = 0;
    std::uint64_t affine_count = 0;
    std::uint64_t skipped_minus_one = 0;  // x0 only
};

struct CountReport {
    std::uint64_t q = 0;
    unsigned n = 0;
    Variant variant = Variant::xprime;
    bool affine_only = true;
    std::vector<ExtensionCount> extensions;
    std::uint64_t supersingular = 0;           // over GF(q^2)
    std::uint64_t supersingular_expected = 0;  // closed form
    std::optional<ZetaReport> zeta;
};

/// (q^2 - 1) q^(n-1) for xprime, q^(n-1) for x0.
std::uint64_t expected_supersingular(Variant v, std::uint64_t q, unsigned n);

/// Enumerates the chosen tower level over GF(q^(2m)) for m_first <= m <= m_last.
CountReport count_points(std::uint64_t q, Variant variant, unsigned n, unsigned m_first, unsigned m_last,
                         const CountOptions& opts = {});

// ---------------------------------------------------------------------------
// Hermitian curve z^q + z = x^(q+1)

/// Affine points (x, z) over F with z^q + z = x^(q+1), including x = 0 or z = 0.
std::uint64_t hermitian_affine_brute_force(std::uint64_t q, const FieldSpec& F);
/// Same count, summing the size of each fiber over x.
std::uint64_t hermitian_affine_by_fibers(std::uint64_t q, const FieldSpec& F);

struct HermitianReport {
    std::uint64_t q = 0;
    unsigned genus = 0;                   // q(q-1)/2
    std::uint64_t affine_brute_force = 0; // over GF(q^2)
    std::uint64_t affine_by_fibers = 0;   // over GF(q^2)
    std::uint64_t projective = 0;         // affine + one place at infinity
    std::uint64_t hasse_weil_bound = 0;   // q^2 + 1 + 2 g q
    bool maximal = false;
    std::vector<std::int64_t> projective_counts;  // N_1.. over GF(q^(2m))
    ZetaReport zeta;
};

/// m_max defaults to the genus (at least 1); q <= 4 unless the cap allows more.
HermitianReport hermitian_check(std::uint64_t q, unsigned m_max = 0, std::uint64_t cap = kDefaultFieldCap);

/// Projective counts for the level-2 curves used by zeta checks: the Hermitian
/// model for xprime (affine including zeros, plus one place at infinity) and the
/// Z2-line for x0 (|F| + 1).
/// Returns N_1..N_{m_max}.
std::vector<std::int64_t> level2_projective_counts(std::uint64_t q, Variant variant, unsigned m_max,
                                                   std::uint64_t cap = kDefaultFieldCap,
                                                   const ModulusTable& moduli = {});

}  // namespace dtower

#endif  // DTOWER_COUNTING_HPP
