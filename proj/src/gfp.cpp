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

#include "dtower/detail/gfp.hpp"

#include <utility>

namespace dtower::detail {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

namespace {

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_u64(std::uint64_t a, std::uint64_t p) { return powmod_u64(a, p - 2, p); }

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

void trim(GfpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

GfpPoly poly_sub(const GfpPoly& a, const GfpPoly& b, std::uint64_t p) {
    GfpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

GfpPoly poly_mod(GfpPoly a, const GfpPoly& f, std::uint64_t p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const std::uint64_t lead_inv = inv_u64(f.back(), p);
    while (a.size() > df) {
        const std::size_t shift = a.size() - 1 - df;
        const std::uint64_t c = mulmod_u64(a.back(), lead_inv, p);
        for (std::size_t j = 0; j <= df; ++j) {
            a[shift + j] = (a[shift + j] + p - mulmod_u64(c, f[j], p)) % p;
        }
        trim(a);
    }
    return a;
}

GfpPoly poly_mulmod(const GfpPoly& a, const GfpPoly& b, const GfpPoly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    GfpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + mulmod_u64(a[i], b[j], p)) % p;
        }
    }
    return poly_mod(std::move(r), f, p);
}

GfpPoly poly_gcd(GfpPoly a, GfpPoly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        GfpPoly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const std::uint64_t li = inv_u64(a.back(), p);
        for (auto& c : a) c = mulmod_u64(c, li, p);
    }
    return a;
}

GfpPoly poly_x_pow_p_k(const GfpPoly& f, unsigned k, std::uint64_t p) {
    GfpPoly x = poly_mod({0, 1}, f, p);
    for (unsigned i = 0; i < k; ++i) {
        // x <- x^p by square-and-multiply
        GfpPoly base = x;
        GfpPoly acc = poly_mod({1}, f, p);
        std::uint64_t e = p;
        while (e) {
            if (e & 1) acc = poly_mulmod(acc, base, f, p);
            e >>= 1;
            if (e) base = poly_mulmod(base, base, f, p);
        }
        x = std::move(acc);
    }
    return x;
}

bool is_irreducible(const GfpPoly& f, std::uint64_t p) {
    const unsigned n = static_cast<unsigned>(f.size() - 1);
    if (n == 1) return true;
    if (f[0] == 0) return false;
    const GfpPoly x{0, 1};
    if (poly_sub(poly_x_pow_p_k(f, n, p), x, p) != GfpPoly{}) return false;
    for (unsigned r : prime_factors(n)) {
        GfpPoly h = poly_sub(poly_x_pow_p_k(f, n / r, p), x, p);
        if (poly_gcd(f, h, p).size() != 1) return false;
    }
    return true;
}

std::vector<std::size_t> GfpMatrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t sel = row;
        while (sel < rows_ && at(sel, col) == 0) ++sel;
        if (sel == rows_) continue;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(sel, c), at(row, c));
        const std::uint64_t inv = inv_u64(at(row, col), p_);
        for (std::size_t c = 0; c < cols_; ++c) at(row, c) = mulmod_u64(at(row, c), inv, p_);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row || at(r, col) == 0) continue;
            const std::uint64_t f = at(r, col);
            for (std::size_t c = 0; c < cols_; ++c) {
                at(r, c) = (at(r, c) + p_ - mulmod_u64(f, at(row, c), p_)) % p_;
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t GfpMatrix::rank() const {
    GfpMatrix m = *this;
    return m.rref().size();
}

std::vector<std::vector<std::uint64_t>> GfpMatrix::nullspace() const {
    GfpMatrix m = *this;
    const auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::uint64_t> v(cols_, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = (p_ - m.at(r, free)) % p_;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<std::uint64_t>> GfpMatrix::solve(const std::vector<std::uint64_t>& b) const {
    GfpMatrix aug(rows_, cols_ + 1, p_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
        aug.at(r, cols_) = b[r] % p_;
    }
    const auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<std::uint64_t> x(cols_, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
    return x;
}

}  // namespace dtower::detail
