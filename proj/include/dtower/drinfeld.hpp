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

#ifndef DTOWER_DRINFELD_HPP
#define DTOWER_DRINFELD_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dtower/finite_field.hpp"
#include "dtower/linearized.hpp"

namespace dtower {

/// Element of A = k[T], k = GF(q). Coefficients are stored inside a field
/// containing k and must satisfy c^q = c.
class APoly {
   public:
    APoly(std::uint64_t q, std::vector<FieldElement> coeffs);

    static APoly T(std::uint64_t q, const FieldSpec& field);
    static APoly constant(std::uint64_t q, const FieldElement& c);

    std::uint64_t q() const noexcept { return q_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::span<const FieldElement> coeffs() const noexcept { return coeffs_; }

    /// a(x) for x in (an extension of) the coefficient field.
    FieldElement operator()(const FieldElement& x) const;

    friend APoly operator+(const APoly& a, const APoly& b);
    friend APoly operator*(const APoly& a, const APoly& b);

   private:
    std::uint64_t q_;
    std::vector<FieldElement> coeffs_;
};

/// T -> l0 - c1 tau.
struct Rank1Module {
    FieldElement l0;
    FieldElement c1;

    FieldElement tau_coefficient() const { return -c1; }
    friend bool operator==(const Rank1Module& a, const Rank1Module& b) { return a.l0 == b.l0 && a.c1 == b.c1; }
};

/// Rank-2 Drinfeld module over k[T] with phi_T = l0 + g tau + delta tau^2.
class DrinfeldModule {
   public:
    /// All three coefficients must share a field containing GF(q); delta != 0.
    DrinfeldModule(std::uint64_t q, FieldElement l0, FieldElement g, FieldElement delta);

    std::uint64_t q() const noexcept { return q_; }
    FieldSpec field() const { return l0_.field(); }
    const FieldElement& l0() const noexcept { return l0_; }
    const FieldElement& g() const noexcept { return g_; }
    const FieldElement& delta() const noexcept { return delta_; }

    friend bool operator==(const DrinfeldModule& a, const DrinfeldModule& b) {
        return a.q_ == b.q_ && a.l0_ == b.l0_ && a.g_ == b.g_ && a.delta_ == b.delta_;
    }

   private:
    std::uint64_t q_;
    FieldElement l0_, g_, delta_;
};

LinearizedPoly phi_T(const DrinfeldModule& M);
/// Image of a under the k-algebra map T -> phi_T (Horner in L{tau}).
LinearizedPoly phi_a(const DrinfeldModule& M, const APoly& a);

/// g^(q+1) / delta.
FieldElement j_invariant(const DrinfeldModule& M);

/// g == 0. Requires l0 in k (throws InvalidArgument otherwise).
bool is_supersingular(const DrinfeldModule& M);

/// l0 = 1 and delta = -1.
bool is_normalized(const DrinfeldModule& M);
/// -delta is a (q^2-1)-st power in L*. Requires l0 = 1.
bool is_normalizable(const DrinfeldModule& M);

/// The rank-1 module T -> l0 - delta tau.
Rank1Module wedge_square(const DrinfeldModule& M);

/// Zeros of phi_a inside L. a != 0.
std::vector<FieldElement> torsion_points(const DrinfeldModule& M, const APoly& a, const FieldSpec& L);

struct Isogeny {
    LinearizedPoly u;
    DrinfeldModule target;
};

/// u = prod_{x in G} (X - x) and the module N with u o phi_T(M) = phi_T(N) o u.
/// G must be a finite GF(q)-subspace stable under phi_T(M).
Isogeny isogeny_from_kernel(const DrinfeldModule& M, std::span<const FieldElement> G);

/// compose(u, phi_T(M)) == compose(phi_T(N), u).
bool verify_isogeny(const LinearizedPoly& u, const DrinfeldModule& M, const DrinfeldModule& N);

/// u^(1 - q^i) l_i transport of coefficients under the isomorphism u in L*.
DrinfeldModule transport(const DrinfeldModule& M, const FieldElement& u);

}  // namespace dtower

#endif  // DTOWER_DRINFELD_HPP
