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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "dtower/errors.hpp"
#include "dtower/tower.hpp"

using namespace dtower;

namespace {

std::vector<std::vector<std::uint64_t>> keys(const std::vector<TowerPoint>& pts) {
    std::vector<std::vector<std::uint64_t>> out;
    for (const auto& p : pts) {
        std::vector<std::uint64_t> k;
        for (const auto& c : p.coords()) k.push_back(c.index());
        out.push_back(k);
    }
    return out;
}

// Level-2 points by scanning all pairs against x1^(1-q) x2 + x2^q = x1.
std::set<std::vector<std::uint64_t>> brute_level2(std::uint64_t q, const FieldSpec& L) {
    std::set<std::vector<std::uint64_t>> out;
    for (const auto& x1 : L.elements()) {
        if (x1.is_zero()) continue;
        const FieldElement s = x1.pow(q - 1).inverse();
        for (const auto& x2 : L.elements()) {
            if (!x2.is_zero() && s * x2 + x2.pow(q) == x1) out.insert({x1.index(), x2.index()});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("building blocks") {
    const FieldSpec gf4 = make_field(2, 2);
    const FieldElement w = gf4.generator();
    CHECK(t(2, w).coeff(1).is_zero());
    CHECK(P(2, w) == LinearizedPoly(2, gf4, {w, gf4.one()}));
    CHECK(kernel_in(P(2, w), gf4).elements == std::vector<FieldElement>{gf4.zero(), w});
    const DrinfeldModule M = module_from_x1(2, w);
    CHECK(M == DrinfeldModule(2, gf4.one(), gf4.zero(), gf4.one()));
    CHECK(is_supersingular(M));
    const FieldSpec gf16 = make_field(2, 4);
    for (const auto& x : gf16.elements()) {
        if (x.is_zero()) continue;
        CHECK(module_from_x1(2, x).g().is_zero() == in_subfield(x, 4));
    }
    CHECK_THROWS_AS(P(2, gf4.zero()), InvalidArgument);
}

TEST_CASE("identities t = QP and PQ = t' exhaustively over GF(q^4)") {
    for (auto [p, m, q] : std::vector<std::tuple<std::uint64_t, unsigned, std::uint64_t>>{{2, 4, 2}, {3, 4, 3}, {2, 8, 4}}) {
        const FieldSpec F = make_field(p, m);
        for (const auto& x : F.elements()) {
            if (x.is_zero()) continue;
            REQUIRE(compose(Q(q, x), P(q, x)) == t(q, x));
            REQUIRE(compose(P(q, x), Q(q, x)) == t_prime(q, x));
        }
    }
}

TEST_CASE("points and extension") {
    const FieldSpec gf4 = make_field(2, 2);
    const FieldElement w = gf4.generator();
    const TowerPoint base(2, {w});
    const auto ext = extend(base, gf4);
    REQUIRE(ext.size() == 2);
    CHECK(ext[0].x(2) == gf4.one());
    CHECK(ext[1].x(2) == w);
    CHECK(is_supersingular_point(TowerPoint(2, {w, gf4.one()})));
    CHECK_THROWS_AS(TowerPoint(2, {w, w + gf4.one()}), InvalidArgument);
    CHECK_THROWS_AS(TowerPoint(2, {gf4.zero()}), InvalidArgument);
    CHECK(ext[0].z(2) == w);

    const FieldSpec gf16 = make_field(2, 4);
    for (const auto& x : gf16.elements()) {
        if (x.is_zero() || in_subfield(x, 4)) continue;
        CHECK_FALSE(is_supersingular_point(TowerPoint(2, {x})));
    }
    // x1^(q+1) outside the image of z^q + z on L has no extension.
    int empty = 0;
    for (const auto& x : gf16.elements()) {
        if (!x.is_zero()) empty += extend(TowerPoint(2, {x}), gf16).empty();
    }
    CHECK(empty > 0);
}

TEST_CASE("enumerate_xprime counts") {
    const FieldSpec gf4 = make_field(2, 2), gf16 = make_field(2, 4);
    CHECK(enumerate_xprime(2, 2, gf4).size() == 6);
    const auto lvl3 = enumerate_xprime(3, 2, gf4);
    CHECK(lvl3.size() == 12);
    for (const auto& pt : lvl3) CHECK(is_supersingular_point(pt));

    for (auto [p, m, q] : std::vector<std::tuple<std::uint64_t, unsigned, std::uint64_t>>{
             {2, 2, 2}, {2, 4, 2}, {2, 6, 2}, {3, 2, 3}, {3, 4, 3}, {2, 4, 4}}) {
        const FieldSpec L = make_field(p, m);
        const auto pts = enumerate_xprime(2, q, L);
        const auto k = keys(pts);
        CHECK(std::set<std::vector<std::uint64_t>>(k.begin(), k.end()) == brute_level2(q, L));
        CHECK(std::is_sorted(pts.begin(), pts.end()));
    }
    CHECK(enumerate_xprime(2, 2, gf16).size() == 6);

    // Level 3 from level-2 pairs (x1, x2), (x2, x3).
    const FieldSpec gf64 = make_field(2, 6);
    const auto pairs = brute_level2(2, gf64);
    std::uint64_t expect = 0;
    for (const auto& a : pairs) {
        for (const auto& b : pairs) expect += a[1] == b[0];
    }
    CHECK(enumerate_xprime(3, 2, gf64).size() == expect);
}

TEST_CASE("enumeration is independent of the worker count") {
    const FieldSpec L = make_field(3, 4);
    const auto one = enumerate_xprime(3, 3, L, 1);
    CHECK(one == enumerate_xprime(3, 3, L, 3));
    CHECK(one == enumerate_xprime(3, 3, L, 8));
    const auto z1 = enumerate_x0(3, 3, L, 1);
    const auto z4 = enumerate_x0(3, 3, L, 4);
    CHECK(z1.points == z4.points);
    CHECK(z1.skipped_minus_one == z4.skipped_minus_one);
}

TEST_CASE("supersingular counts") {
    for (std::uint64_t q : {2, 3}) {
        const FieldSpec k1 = make_field(q, 2);
        std::uint64_t power = 1;
        for (unsigned n = 2; n <= 5; ++n) {
            power *= q;
            CHECK(enumerate_xprime(n, q, k1).size() == (q * q - 1) * power);
            std::uint64_t ss = 0;
            for (const auto& z : enumerate_x0(n, q, k1).points) ss += is_supersingular_x0(z);
            CHECK(ss == power);
        }
    }
}

TEST_CASE("kernel chains") {
    const FieldSpec gf4 = make_field(2, 2);
    for (const auto& pt : enumerate_xprime(4, 2, gf4)) {
        CHECK(kernel_polynomial(pt, 1) == P(2, pt.x(1)));
        for (std::size_t j = 1; j <= 3; ++j) {
            const auto rep = check_kernel_chain(pt, j, std::uint64_t{1} << 40);
            CHECK(rep.ok());
        }
    }
    const TowerPoint pt(2, {gf4.generator()});
    CHECK_THROWS_AS(kernel_polynomial(pt, 2), InvalidArgument);
}

TEST_CASE("gauntlet and swap identities") {
    for (std::uint64_t q : {2, 3}) {
        const FieldSpec k1 = make_field(q, 2);
        for (const auto& pt : enumerate_xprime(3, q, k1)) {
            CHECK(verify_swap_identities(pt));
            const auto ys = gauntlet_solutions(pt, std::uint64_t{1} << 40);
            CHECK(ys.size() == q * q);
            for (const auto& y : ys) CHECK(verify_gauntlet(pt, y));
        }
    }
    const FieldSpec gf4 = make_field(2, 2);
    const TowerPoint pt = enumerate_xprime(2, 2, gf4).front();
    CHECK_THROWS_AS(verify_gauntlet(pt, gf4.zero()), InvalidArgument);
}

TEST_CASE("Z coordinates") {
    const FieldSpec gf4 = make_field(2, 2);
    const FieldElement w = gf4.generator();
    const auto e = enumerate_x0(2, 2, gf4);
    std::vector<FieldElement> zs;
    for (const auto& p : e.points) zs.push_back(p.Z(2));
    CHECK(zs == std::vector<FieldElement>{gf4.zero(), w, w + gf4.one()});
    CHECK(e.skipped_minus_one == 1);

    CHECK(supersingular_Z_set(2, gf4) == std::vector<FieldElement>{w, w + gf4.one()});
    CHECK(supersingular_Z_set(3, make_field(3, 2)).size() == 3);
    CHECK(supersingular_Z_set(4, make_field(2, 4)).size() == 4);

    // Z recursion against the defining formula, over a bigger field.
    const FieldSpec L = make_field(3, 4);
    for (const auto& z : enumerate_x0(3, 3, L).points) {
        const FieldElement a = z.Z(2), b = z.Z(3), one = L.one();
        CHECK(b * (one + b).pow(2) * (one + a).pow(2) == a.pow(3));
    }
    CHECK_THROWS_AS(X0Point(2, {gf4.one()}), InvalidArgument);
}

TEST_CASE("projection and action") {
    const FieldSpec gf4 = make_field(2, 2);
    const FieldElement w = gf4.generator();
    CHECK(act(w, TowerPoint(2, {w, gf4.one()})) == TowerPoint(2, {w * w, w * w}));
    for (std::uint64_t q : {2, 3}) {
        const FieldSpec k1 = make_field(q, 2);
        const auto pts = enumerate_xprime(3, q, k1);
        const auto x0 = enumerate_x0(3, q, k1).points;
        for (const auto& pt : pts) {
            const X0Point z = project_to_X0(pt);
            CHECK(std::binary_search(x0.begin(), x0.end(), z));
            CHECK(act(k1.one(), pt) == pt);
            for (const auto& c : k1.elements()) {
                if (c.is_zero()) continue;
                CHECK(project_to_X0(act(c, pt)) == z);
                CHECK(act(c.inverse(), act(c, pt)) == pt);
            }
        }
    }
    CHECK_THROWS_AS(act(gf4.zero(), TowerPoint(2, {w})), InvalidArgument);
    CHECK_THROWS_AS(act(make_field(2, 4).generator(), TowerPoint(2, {embed(w, make_field(2, 4))})), InvalidArgument);
}
