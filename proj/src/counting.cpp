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

#include "dtower/counting.hpp"

#include <algorithm>
#include <bit>

#include "dtower/detail/gfp.hpp"
#include "dtower/tower.hpp"

namespace dtower {

std::string to_string(Variant v) { return v == Variant::xprime ? "xprime" : "x0"; }

Variant parse_variant(const std::string& s) {
    if (s == "xprime") return Variant::xprime;
    if (s == "x0") return Variant::x0;
    throw InvalidArgument("unknown tower variant '" + s + "' (expected xprime or x0)");
}

FieldSpec extension_field(std::uint64_t q, unsigned m, std::uint64_t cap, const ModulusTable& moduli) {
    const auto pr = prime_power(q);
    if (!pr) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
    if (m < 1) throw InvalidArgument("extension index m must be >= 1");
    const unsigned deg = 2 * pr->second * m;
    std::optional<std::vector<std::uint32_t>> mod;
    if (auto it = moduli.find(deg); it != moduli.end()) mod = it->second;
    return FieldSpec::make(pr->first, deg, mod, cap);
}

std::uint64_t expected_supersingular(Variant v, std::uint64_t q, unsigned n) {
    std::uint64_t s = 1;
    for (unsigned i = 1; i < n; ++i) s *= q;
    return v == Variant::xprime ? (q * q - 1) * s : s;
}

CountReport count_points(std::uint64_t q, Variant variant, unsigned n, unsigned m_first, unsigned m_last,
                         const CountOptions& opts) {
    if (m_first < 1 || m_first > m_last) throw InvalidArgument("extension range must satisfy 1 <= m1 <= m2");
    if (n < (variant == Variant::x0 ? 2u : 1u)) throw InvalidArgument("level too small for this variant");
    CountReport rep;
    rep.q = q;
    rep.n = n;
    rep.variant = variant;
    // Validate every field against the cap before doing any work.
    std::vector<FieldSpec> fields;
    for (unsigned m = m_first; m <= m_last; ++m) fields.push_back(extension_field(q, m, opts.cap, opts.moduli));

    for (unsigned m = m_first; m <= m_last; ++m) {
        const FieldSpec& F = fields[m - m_first];
        ExtensionCount ec;
        ec.m = m;
        ec.field = F.to_string();
        ec.field_size = F.size();
        if (variant == Variant::xprime) {
            ec.affine_count = enumerate_xprime(n, q, F, opts.workers).size();
        } else {
            const auto e = enumerate_x0(n, q, F, opts.workers);
            ec.affine_count = e.points.size();
            ec.skipped_minus_one = e.skipped_minus_one;
        }
        rep.extensions.push_back(std::move(ec));
    }

    const FieldSpec k1 = extension_field(q, 1, opts.cap, opts.moduli);
    if (variant == Variant::xprime) {
        for (const auto& pt : enumerate_xprime(n, q, k1, opts.workers)) rep.supersingular += is_supersingular_point(pt);
    } else {
        for (const auto& pt : enumerate_x0(n, q, k1, opts.workers).points) rep.supersingular += is_supersingular_x0(pt);
    }
    rep.supersingular_expected = expected_supersingular(variant, q, n);
    return rep;
}

// ---------------------------------------------------------------------------
// Hermitian curve

std::uint64_t hermitian_affine_brute_force(std::uint64_t q, const FieldSpec& F) {
    const auto& D = F.data();
    std::vector<std::uint64_t> lhs(F.size()), rhs(F.size());
    for (std::uint64_t a = 0; a < F.size(); ++a) {
        lhs[a] = D.add(D.pow(a, q), a);
        rhs[a] = D.pow(a, q + 1);
    }
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < F.size(); ++x) {
        for (std::uint64_t z = 0; z < F.size(); ++z) count += lhs[z] == rhs[x];
    }
    return count;
}

std::uint64_t hermitian_affine_by_fibers(std::uint64_t q, const FieldSpec& F) {
    const auto& D = F.data();
    const unsigned m = F.degree();
    const std::uint64_t p = F.characteristic();
    if (!log_base(q, p)) throw InvalidArgument("q is not a power of the characteristic");

    // Matrix of z -> z^q + z; every nonempty fiber has the kernel's size, and
    // c is a value iff every left annihilator of the matrix kills c.
    std::vector<std::uint64_t> basis(m);
    for (unsigned i = 0; i < m; ++i) basis[i] = (i == 0) ? 1 : D.mul(basis[i - 1], F.generator().index());
    detail::GfpMatrix A(m, m, p), At(m, m, p);
    std::vector<std::uint32_t> digits(m);
    for (unsigned j = 0; j < m; ++j) {
        D.decode(D.add(D.pow(basis[j], q), basis[j]), digits);
        for (unsigned i = 0; i < m; ++i) {
            A.at(i, j) = digits[i];
            At.at(j, i) = digits[i];
        }
    }
    std::uint64_t fiber = 1;
    for (std::size_t i = 0; i < m - A.rank(); ++i) fiber *= p;
    const auto annihilators = At.nullspace();

    std::uint64_t values = 0;
    if (p == 2) {
        std::vector<std::uint64_t> masks;
        for (const auto& row : annihilators) {
            std::uint64_t mask = 0;
            for (unsigned i = 0; i < m; ++i) mask |= row[i] << i;
            masks.push_back(mask);
        }
        // x -> x^q is GF(2)-linear.
        std::vector<std::uint64_t> frob(m);
        for (unsigned i = 0; i < m; ++i) frob[i] = D.pow(std::uint64_t{1} << i, q);
        // Gray-code walk: consecutive x differ in one bit, so x^q changes by one basis image.
        std::uint64_t x = 0, xq = 0;
        for (std::uint64_t i = 0; i < F.size(); ++i) {
            if (i > 0) {
                const int bit = std::countr_zero(i);
                x ^= std::uint64_t{1} << bit;
                xq ^= frob[bit];
            }
            const std::uint64_t c = D.mul(xq, x);
            bool hit = true;
            for (auto mask : masks) {
                if (std::popcount(mask & c) & 1) {
                    hit = false;
                    break;
                }
            }
            values += hit;
        }
    } else {
        for (std::uint64_t x = 0; x < F.size(); ++x) {
            D.decode(D.pow(x, q + 1), digits);
            bool hit = true;
            for (const auto& row : annihilators) {
                std::uint64_t s = 0;
                for (unsigned i = 0; i < m; ++i) s = (s + row[i] * digits[i]) % p;
                if (s != 0) {
                    hit = false;
                    break;
                }
            }
            values += hit;
        }
    }
    return values * fiber;
}

HermitianReport hermitian_check(std::uint64_t q, unsigned m_max, std::uint64_t cap) {
    HermitianReport rep;
    rep.q = q;
    rep.genus = static_cast<unsigned>(q * (q - 1) / 2);
    if (m_max == 0) m_max = std::max(1u, rep.genus);
    const FieldSpec k1 = extension_field(q, 1, cap);
    rep.affine_brute_force = hermitian_affine_brute_force(q, k1);
    rep.affine_by_fibers = hermitian_affine_by_fibers(q, k1);
    if (rep.affine_brute_force != rep.affine_by_fibers) {
        throw InternalError("Hermitian fiber count disagrees with brute force");
    }
    rep.projective = rep.affine_by_fibers + 1;
    rep.hasse_weil_bound = q * q + 1 + 2 * rep.genus * q;
    rep.maximal = rep.projective == rep.hasse_weil_bound;
    rep.projective_counts = level2_projective_counts(q, Variant::xprime, m_max, cap);
    rep.zeta = zeta_consistency(rep.projective_counts, rep.genus, q * q);
    return rep;
}

std::vector<std::int64_t> level2_projective_counts(std::uint64_t q, Variant variant, unsigned m_max,
                                                   std::uint64_t cap, const ModulusTable& moduli) {
    std::vector<FieldSpec> fields;
    for (unsigned m = 1; m <= m_max; ++m) fields.push_back(extension_field(q, m, cap, moduli));
    std::vector<std::int64_t> out;
    for (const auto& F : fields) {
        if (variant == Variant::xprime) {
            out.push_back(static_cast<std::int64_t>(hermitian_affine_by_fibers(q, F) + 1));
        } else {
            // The Z2-line: enumerated affine points, the excluded Z2 = -1, and infinity.
            const auto e = enumerate_x0(2, q, F);
            out.push_back(static_cast<std::int64_t>(e.points.size() + e.skipped_minus_one + 1));
        }
    }
    return out;
}

}  // namespace dtower
