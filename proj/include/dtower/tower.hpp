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

#ifndef DTOWER_TOWER_HPP
#define DTOWER_TOWER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dtower/drinfeld.hpp"
#include "dtower/finite_field.hpp"
#include "dtower/linearized.hpp"

namespace dtower {

// Building blocks. All require x != 0 and GF(q) inside x's field.

/// x^(q-1) X - X^q, vanishing on GF(q) x.
LinearizedPoly P(std::uint64_t q, const FieldElement& x);
/// x^(1-q) X + X^q.
LinearizedPoly Q(std::uint64_t q, const FieldElement& x);
/// X + ((x^(q^2) - x) / x^q) X^q - X^(q^2).
LinearizedPoly t(std::uint64_t q, const FieldElement& x);
/// P_x o Q_x = X + (x^(q-1) - x^(q-q^2)) X^q - X^(q^2).
LinearizedPoly t_prime(std::uint64_t q, const FieldElement& x);

/// The normalized module (1, g, -1) having x1 as a T-torsion point.
DrinfeldModule module_from_x1(std::uint64_t q, const FieldElement& x1);

/// Affine point (x1, ..., xn) on the level-n curve of the x-tower:
/// every x_j != 0 and Q_{x_{j-1}}(x_j) = x_{j-1}.
class TowerPoint {
   public:
    /// Validates the relations; throws InvalidArgument on failure.
    TowerPoint(std::uint64_t q, std::vector<FieldElement> coords);

    std::uint64_t q() const noexcept { return q_; }
    std::size_t level() const noexcept { return coords_.size(); }
    const std::vector<FieldElement>& coords() const noexcept { return coords_; }
    const FieldElement& x(std::size_t j) const { return coords_.at(j - 1); }  // 1-based
    FieldSpec field() const { return coords_.front().field(); }

    /// z_j = x_{j-1} x_j for 2 <= j <= level.
    FieldElement z(std::size_t j) const;

    friend bool operator==(const TowerPoint& a, const TowerPoint& b);
    friend bool operator<(const TowerPoint& a, const TowerPoint& b);

   private:
    std::uint64_t q_;
    std::vector<FieldElement> coords_;
};

/// (Z_2, ..., Z_n) on the level-n curve of the Z-tower.
class X0Point {
   public:
    /// Validates Z_j != -1 and the recursion between consecutive coordinates.
    X0Point(std::uint64_t q, std::vector<FieldElement> zcoords);

    std::uint64_t q() const noexcept { return q_; }
    std::size_t level() const noexcept { return zcoords_.size() + 1; }
    const std::vector<FieldElement>& zcoords() const noexcept { return zcoords_; }
    /// Z_j, 2 <= j <= level.
    const FieldElement& Z(std::size_t j) const { return zcoords_.at(j - 2); }

    friend bool operator==(const X0Point& a, const X0Point& b);
    friend bool operator<(const X0Point& a, const X0Point& b);

   private:
    std::uint64_t q_;
    std::vector<FieldElement> zcoords_;
};

/// Z (1 + Z)^(q-1), the left side of the Z-recursion.
FieldElement z_step_lhs(std::uint64_t q, const FieldElement& Z);
/// Z^q / (1 + Z)^(q-1), the right side. Z != -1.
FieldElement z_step_rhs(std::uint64_t q, const FieldElement& Z);

/// All next coordinates x_{n+1} in L (0 to q of them), via z^q + z = x_n^(q+1), z != 0.
std::vector<TowerPoint> extend(const TowerPoint& pt, const FieldSpec& L);

/// Every affine level-n point with all coordinates in L*, sorted; n >= 1.
std::vector<TowerPoint> enumerate_xprime(unsigned n, std::uint64_t q, const FieldSpec& L, unsigned workers = 1);

/// x1 in GF(q^2)*. When true, all coordinates are checked to lie in GF(q^2).
bool is_supersingular_point(const TowerPoint& pt);

/// P_{x_j} o ... o P_{x_1}, 1 <= j <= level.
LinearizedPoly kernel_polynomial(const TowerPoint& pt, std::size_t j);

/// Structure of the kernel G_j of kernel_polynomial(pt, j) in its splitting field.
struct KernelChainReport {
    std::size_t depth = 0;
    std::string field;               // splitting field used
    std::uint64_t size = 0;          // |G_j|
    bool size_ok = false;            // |G_j| = q^j
    bool contains_previous = false;  // G_{j-1} subset of G_j
    bool stable = false;             // t_{x1}(G_j) = G_{j-1}
    bool cyclic = false;             // some y in G_j with t_{x1}^(j-1)(y) != 0
    bool ok() const { return size_ok && contains_previous && stable && cyclic; }
};
KernelChainReport check_kernel_chain(const TowerPoint& pt, std::size_t j, std::uint64_t cap = kDefaultFieldCap);

/// Consecutive-pair identities: Q_{x_j} o P_{x_j} = t_{x_j} = P_{x_{j-1}} o Q_{x_{j-1}} = t'_{x_{j-1}}.
bool verify_swap_identities(const TowerPoint& pt);

/// For y with (P_{x_{n-1}} o ... o P_{x_1})(y) = x_n, checks that
/// (P_{x_{n-2}} o ... o P_{x_1})(t_{x1}(y)) = x_{n-1}, plus the swap identities.
/// Throws InvalidArgument if y violates its precondition. Level >= 2.
bool verify_gauntlet(const TowerPoint& pt, const FieldElement& y);

/// Every y in an extension solving (P_{x_{n-1}} o ... o P_{x_1})(y) = x_n.
std::vector<FieldElement> gauntlet_solutions(const TowerPoint& pt, std::uint64_t cap = kDefaultFieldCap);

/// Z_j = (x_{j-1} x_j)^(q-1), j = 2..n. Throws InvalidArgument if some Z_j = -1.
X0Point project_to_X0(const TowerPoint& pt);

/// c (x1, x2, x3, ...) = (c x1, c^q x2, c x3, ...), c in GF(q^2)*.
TowerPoint act(const FieldElement& c, const TowerPoint& pt);

struct X0Enumeration {
    std::vector<X0Point> points;  // sorted
    /// Branches dropped because the next coordinate would be -1.
    std::uint64_t skipped_minus_one = 0;
};

/// All (Z_2..Z_n) over L with Z_j != -1 satisfying the recursion; n >= 2.
X0Enumeration enumerate_x0(unsigned n, std::uint64_t q, const FieldSpec& L, unsigned workers = 1);

/// {Z in GF(q^2): Z^(q+1) = 1, Z != -1}, cross-checked against the two other
/// descriptions; L must contain GF(q^2).
std::vector<FieldElement> supersingular_Z_set(std::uint64_t q, const FieldSpec& L);

bool is_supersingular_x0(const X0Point& pt);

}  // namespace dtower

#endif  // DTOWER_TOWER_HPP
