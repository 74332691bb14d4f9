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

// Small-prime helpers: dense polynomials over GF(p) (irreducibility tests) and
// row reduction over GF(p) (kernels and preimages of GF(p)-linear maps).

#ifndef DTOWER_DETAIL_GFP_HPP
#define DTOWER_DETAIL_GFP_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace dtower::detail {

using GfpPoly = std::vector<std::uint64_t>;  // little-endian, trimmed

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p);

void trim(GfpPoly& f);
GfpPoly poly_sub(const GfpPoly& a, const GfpPoly& b, std::uint64_t p);
GfpPoly poly_mulmod(const GfpPoly& a, const GfpPoly& b, const GfpPoly& f, std::uint64_t p);
GfpPoly poly_mod(GfpPoly a, const GfpPoly& f, std::uint64_t p);
GfpPoly poly_gcd(GfpPoly a, GfpPoly b, std::uint64_t p);
/// x^(p^k) mod f.
GfpPoly poly_x_pow_p_k(const GfpPoly& f, unsigned k, std::uint64_t p);

/// Rabin's test; f monic of degree >= 1.
bool is_irreducible(const GfpPoly& f, std::uint64_t p);

/// Row-reduced matrix over GF(p); rows x cols, entries < p.
class GfpMatrix {
   public:
    GfpMatrix(std::size_t rows, std::size_t cols, std::uint64_t p)
        : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

    std::uint64_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    /// Basis of {v : A v = 0}.
    std::vector<std::vector<std::uint64_t>> nullspace() const;
    /// Some v with A v = b, if one exists.
    std::optional<std::vector<std::uint64_t>> solve(const std::vector<std::uint64_t>& b) const;
    std::size_t rank() const;

   private:
    // Reduces in place; returns pivot columns.
    std::vector<std::size_t> rref();

    std::size_t rows_, cols_;
    std::uint64_t p_;
    std::vector<std::uint64_t> a_;
};

}  // namespace dtower::detail

#endif  // DTOWER_DETAIL_GFP_HPP
