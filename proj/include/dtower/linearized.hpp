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

#ifndef DTOWER_LINEARIZED_HPP
#define DTOWER_LINEARIZED_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dtower/finite_field.hpp"

namespace dtower {

/// Element l_0 + l_1 tau + ... + l_d tau^d of the twisted ring L{tau}, where
/// tau a = a^q tau. Acts on L as the q-linearized polynomial sum l_i X^(q^i).
///
/// Coefficients are kept trimmed: the leading coefficient is nonzero unless the
/// polynomial is zero (degree -1). q must be a power of char(L) whose field
/// GF(q) sits inside L.
class LinearizedPoly {
   public:
    LinearizedPoly(std::uint64_t q, FieldSpec field, std::vector<FieldElement> coeffs = {});

    static LinearizedPoly identity(std::uint64_t q, const FieldSpec& field);
    /// tau^power.
    static LinearizedPoly tau(std::uint64_t q, const FieldSpec& field, unsigned power = 1);
    /// The constant c (the map X -> c X).
    static LinearizedPoly scalar(std::uint64_t q, const FieldElement& c);

    std::uint64_t q() const noexcept { return q_; }
    const FieldSpec& field() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const FieldElement> coeffs() const noexcept { return coeffs_; }
    /// l_i, zero past the degree.
    FieldElement coeff(std::size_t i) const;

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// l_0 != 0, i.e. the roots are simple.
    bool is_separable() const noexcept { return !coeffs_.empty() && !coeffs_.front().is_zero(); }

    /// sum l_i x^(q^i); x may live in an extension of the coefficient field (or vice versa).
    FieldElement operator()(const FieldElement& x) const;

    /// The same polynomial with coefficients pushed into an extension field.
    LinearizedPoly embedded_in(const FieldSpec& target) const;

    LinearizedPoly& operator+=(const LinearizedPoly& b);
    LinearizedPoly& operator-=(const LinearizedPoly& b);
    friend LinearizedPoly operator+(LinearizedPoly a, const LinearizedPoly& b) { return a += b; }
    friend LinearizedPoly operator-(LinearizedPoly a, const LinearizedPoly& b) { return a -= b; }
    LinearizedPoly operator-() const;
    /// c * u (left scalar multiplication).
    friend LinearizedPoly operator*(const FieldElement& c, const LinearizedPoly& u);

    /// Exact coefficient-list equality; polynomials over different fields are unequal.
    friend bool operator==(const LinearizedPoly& a, const LinearizedPoly& b);

   private:
    void trim();

    std::uint64_t q_;
    FieldSpec field_;
    std::vector<FieldElement> coeffs_;
};

/// u o v as maps: (u o v)_n = sum_{i+j=n} u_i v_j^(q^i).
LinearizedPoly compose(const LinearizedPoly& u, const LinearizedPoly& v);

inline FieldElement eval(const LinearizedPoly& u, const FieldElement& x) { return u(x); }

/// Zeros of u inside a chosen finite field.
struct Kernel {
    std::vector<FieldElement> elements;  // sorted by index
    /// u has l_0 = 0; roots are listed once each, without multiplicities.
    bool inseparable = false;
};

/// All x in L with u(x) = 0, via the null space of u as a GF(p)-linear map on L.
Kernel kernel_in(const LinearizedPoly& u, const FieldSpec& L);
/// Same set by scanning every element of L (|L| <= 2^16).
std::vector<FieldElement> kernel_by_enumeration(const LinearizedPoly& u, const FieldSpec& L);
/// GF(p)-dimension of the kernel of u on L (no enumeration).
unsigned kernel_dimension(const LinearizedPoly& u, const FieldSpec& L);

/// All x in L with u(x) = c: empty, or a coset of kernel_in(u, L).
std::vector<FieldElement> preimages(const LinearizedPoly& u, const FieldElement& c, const FieldSpec& L);

/// Smallest extension GF(p^(m s)) of u's field containing every root of u,
/// trying s = 1, 2, 3, ... Throws CapExceeded once p^(m s) > cap.
FieldSpec splitting_field(const LinearizedPoly& u, std::uint64_t cap = kDefaultFieldCap);

/// Smallest extension of `base` in which u has all roots and u(y) = c is solvable.
FieldSpec solving_field(const LinearizedPoly& u, const FieldElement& c, std::uint64_t cap = kDefaultFieldCap);

/// Checks that a finite set contains 0 and is closed under addition and
/// multiplication by GF(q) (taken inside the elements' field).
bool is_k_subspace(std::span<const FieldElement> elements, std::uint64_t q);

}  // namespace dtower

#endif  // DTOWER_LINEARIZED_HPP
