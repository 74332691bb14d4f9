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

#include <algorithm>
#include <cmath>
#include <complex>

#include "dtower/counting.hpp"
#include "dtower/errors.hpp"

namespace dtower {

namespace {

using RPoly = std::vector<Rational>;  // low degree first

Rational rpow(const Rational& b, long e) {
    Rational r = 1;
    const Rational base = e < 0 ? Rational(1) / b : b;
    for (long i = 0; i < std::labs(e); ++i) r *= base;
    return r;
}

Rational rabs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

void rtrim(RPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

RPoly rmod(RPoly a, const RPoly& b) {
    rtrim(a);
    while (a.size() >= b.size()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        rtrim(a);
    }
    return a;
}

RPoly rgcd(RPoly a, RPoly b) {
    rtrim(a);
    rtrim(b);
    while (!b.empty()) {
        RPoly r = rmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

RPoly rdiv(RPoly a, const RPoly& b) {
    rtrim(a);
    if (a.size() < b.size()) return {};
    RPoly quot(a.size() - b.size() + 1);
    while (a.size() >= b.size()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        quot[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        rtrim(a);
    }
    return quot;
}

// Power sums S_1..S_count of the inverse roots of L via Newton's identities.
std::vector<Rational> power_sums(const RPoly& l, std::size_t count) {
    std::vector<Rational> s(count + 1);
    for (std::size_t k = 1; k <= count; ++k) {
        Rational acc = k < l.size() ? Rational(-static_cast<long>(k) * l[k]) : Rational(0);
        for (std::size_t i = 1; i < k; ++i) {
            if (k - i < l.size()) acc -= l[k - i] * s[i];
        }
        s[k] = acc;
    }
    return s;
}

using Cplx = std::complex<long double>;

std::vector<Cplx> durand_kerner(const std::vector<long double>& monic) {
    const std::size_t n = monic.size() - 1;
    std::vector<Cplx> z(n);
    const Cplx seed(0.4L, 0.9L);
    long double radius = 1;
    for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, 1 + std::fabs(monic[i]));
    for (std::size_t i = 0; i < n; ++i) z[i] = radius * std::pow(seed, static_cast<int>(i));
    auto eval = [&](Cplx x) {
        Cplx acc = 0;
        for (std::size_t i = monic.size(); i-- > 0;) acc = acc * x + monic[i];
        return acc;
    };
    for (int iter = 0; iter < 2000; ++iter) {
        long double move = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Cplx den = 1;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) den *= z[i] - z[j];
            }
            const Cplx step = eval(z[i]) / den;
            z[i] -= step;
            move = std::max(move, std::abs(step));
        }
        if (move < 1e-15L) break;
    }
    return z;
}

}  // namespace

ZetaReport zeta_consistency(std::span<const std::int64_t> counts, unsigned genus, std::uint64_t q1) {
    if (counts.empty() || counts.size() < genus) {
        throw InvalidArgument("zeta check needs at least max(1, genus) point counts");
    }
    if (q1 < 2) throw InvalidArgument("base field size must be at least 2");
    ZetaReport rep;
    rep.genus = genus;
    rep.q1 = q1;
    rep.counts.assign(counts.begin(), counts.end());
    const std::size_t K = counts.size();
    const std::size_t g2 = 2 * genus;
    const Rational Q(q1);

    std::vector<Rational> s_given(K + 1);
    for (std::size_t m = 1; m <= K; ++m) s_given[m] = rpow(Q, static_cast<long>(m)) + 1 - Rational(counts[m - 1]);

    // a_k from the data, k <= min(K, 2g).
    RPoly direct(std::min(K, g2) + 1);
    direct[0] = 1;
    for (std::size_t k = 1; k < direct.size(); ++k) {
        Rational acc = 0;
        for (std::size_t i = 1; i <= k; ++i) acc += s_given[i] * direct[k - i];
        direct[k] = -acc / static_cast<long>(k);
    }

    rep.l_poly.assign(g2 + 1, Rational(0));
    for (std::size_t k = 0; k < direct.size(); ++k) rep.l_poly[k] = direct[k];
    for (std::size_t k = direct.size(); k <= g2; ++k) {
        rep.l_poly[k] = rpow(Q, static_cast<long>(k) - genus) * rep.l_poly[g2 - k];
    }

    rep.functional_equation_residual = 0;
    for (std::size_t k = 0; k < direct.size(); ++k) {
        if (g2 - k < direct.size()) {
            const Rational r = rabs(direct[k] - rpow(Q, static_cast<long>(k) - genus) * direct[g2 - k]);
            rep.functional_equation_residual = std::max(rep.functional_equation_residual, r);
        }
    }

    const auto s_pred = power_sums(rep.l_poly, K);
    rep.count_residual = 0;
    for (std::size_t m = 1; m <= K; ++m) rep.count_residual = std::max(rep.count_residual, rabs(s_pred[m] - s_given[m]));

    rep.integral = std::all_of(rep.l_poly.begin(), rep.l_poly.end(),
                               [](const Rational& a) { return denominator(a) == 1; });

    if (genus == 0) return rep;

    // Real Weil polynomial h(x) = a_g + sum_{k>=1} a_{g-k} D_k(x).
    std::vector<RPoly> D{{Rational(2)}, {Rational(0), Rational(1)}};
    for (unsigned k = 2; k <= genus; ++k) {
        RPoly next(k + 1, Rational(0));
        for (std::size_t i = 0; i < D[k - 1].size(); ++i) next[i + 1] += D[k - 1][i];
        for (std::size_t i = 0; i < D[k - 2].size(); ++i) next[i] -= Q * D[k - 2][i];
        D.push_back(std::move(next));
    }
    RPoly h(genus + 1, Rational(0));
    h[0] = rep.l_poly[genus];
    for (unsigned k = 1; k <= genus; ++k) {
        for (std::size_t i = 0; i < D[k].size(); ++i) h[i] += rep.l_poly[genus - k] * D[k][i];
    }
    rtrim(h);
    if (h.size() < 2) return rep;

    RPoly dh(h.size() - 1);
    for (std::size_t i = 1; i < h.size(); ++i) dh[i - 1] = h[i] * static_cast<long>(i);
    RPoly sqfree = rdiv(h, rgcd(h, dh));
    const Rational lead = sqfree.back();
    std::vector<long double> monic;
    for (const auto& c : sqfree) monic.push_back(static_cast<long double>(Rational(c / lead)));

    const long double sq = std::sqrt(static_cast<long double>(q1));
    long double dev = 0;
    for (const auto& r : durand_kerner(monic)) {
        const long double x = r.real();
        rep.real_roots.push_back(static_cast<double>(x));
        const Cplx disc = std::sqrt(Cplx(x * x - 4 * static_cast<long double>(q1), 0));
        for (const Cplx alpha : {(Cplx(x) + disc) / 2.0L, (Cplx(x) - disc) / 2.0L}) {
            const long double mod = std::abs(alpha);
            rep.root_moduli.push_back(static_cast<double>(mod));
            dev = std::max(dev, std::fabs(mod - sq));
        }
    }
    std::sort(rep.real_roots.begin(), rep.real_roots.end());
    rep.weil_deviation = static_cast<double>(dev);
    return rep;
}

}  // namespace dtower
