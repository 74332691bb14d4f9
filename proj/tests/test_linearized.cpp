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
#include <random>

#include "dtower/errors.hpp"
#include "dtower/linearized.hpp"

using namespace dtower;

namespace {

LinearizedPoly random_poly(std::uint64_t q, const FieldSpec& F, int degree, std::mt19937_64& rng) {
    std::vector<FieldElement> c;
    for (int i = 0; i <= degree; ++i) c.push_back(F.from_index(rng() % F.size()));
    return LinearizedPoly(q, F, c);
}

// Direct evaluation sum l_i x^(q^i) with repeated powering.
FieldElement naive_eval(const LinearizedPoly& u, const FieldElement& x) {
    FieldElement acc = x.field().zero(), power = x;
    for (const auto& c : u.coeffs()) {
        acc += c * power;
        power = power.pow(u.q());
    }
    return acc;
}

}  // namespace

TEST_CASE("compose examples") {
    const FieldSpec gf4 = make_field(2, 2);
    const FieldElement a = gf4.generator();
    const auto u = LinearizedPoly::tau(2, gf4);
    const auto v = LinearizedPoly::scalar(2, a);
    CHECK(compose(u, v) == LinearizedPoly(2, gf4, {gf4.zero(), a * a}));
    const LinearizedPoly one_tau2(2, gf4, {gf4.one(), gf4.zero(), gf4.one()});
    const LinearizedPoly one_tau4(2, gf4, {gf4.one(), gf4.zero(), gf4.zero(), gf4.zero(), gf4.one()});
    CHECK(compose(one_tau2, one_tau2) == one_tau4);
    CHECK(one_tau4.degree() == 4);
    CHECK(LinearizedPoly(2, gf4, {gf4.one(), gf4.zero()}).degree() == 0);
    CHECK(LinearizedPoly(2, gf4).degree() == -1);
}

TEST_CASE("eval examples") {
    const FieldSpec gf4 = make_field(2, 2), gf16 = make_field(2, 4);
    const LinearizedPoly u(2, gf16, {gf16.one(), gf16.zero(), gf16.zero(), gf16.zero(), gf16.one()});
    for (const auto& x : gf16.elements()) CHECK(u(x).is_zero());
    CHECK(LinearizedPoly::tau(2, gf4)(gf4.generator()).to_string() == "1,1");
    CHECK(u(gf16.zero()).is_zero());
    // coefficients in GF(4), argument in GF(16)
    const auto tw = LinearizedPoly::scalar(2, gf4.generator());
    CHECK(tw(gf16.one()) == embed(gf4.generator(), gf16));
}

TEST_CASE("composition is associative and evaluates as a composite map") {
    std::mt19937_64 rng(7);
    for (auto [p, m, q] : std::vector<std::tuple<std::uint64_t, unsigned, std::uint64_t>>{
             {2, 4, 2}, {2, 4, 4}, {3, 4, 3}, {3, 2, 3}, {5, 2, 5}, {2, 6, 2}}) {
        const FieldSpec F = make_field(p, m);
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_poly(q, F, 2, rng), b = random_poly(q, F, 3, rng), c = random_poly(q, F, 1, rng);
            CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
            CHECK(compose(a, b + c) == compose(a, b) + compose(a, c));
            const FieldElement x = F.from_index(rng() % F.size());
            CHECK(compose(a, b)(x) == a(b(x)));
            CHECK(a(x) == naive_eval(a, x));
        }
    }
}

TEST_CASE("kernels") {
    const FieldSpec gf4 = make_field(2, 2);
    const FieldElement w = gf4.generator();
    const LinearizedPoly t1(2, gf4, {gf4.one(), gf4.zero(), gf4.one()});
    CHECK(kernel_in(t1, gf4).elements.size() == 4);
    CHECK(kernel_in(LinearizedPoly::tau(2, gf4), gf4).elements == std::vector<FieldElement>{gf4.zero()});
    CHECK(kernel_in(LinearizedPoly::tau(2, gf4), gf4).inseparable);
    const LinearizedPoly Pw(2, gf4, {w, gf4.one()});
    CHECK(kernel_in(Pw, gf4).elements == std::vector<FieldElement>{gf4.zero(), w});

    std::mt19937_64 rng(11);
    for (auto [p, m, q] : std::vector<std::tuple<std::uint64_t, unsigned, std::uint64_t>>{
             {2, 6, 2}, {2, 8, 4}, {3, 4, 3}, {3, 6, 9}, {5, 3, 5}}) {
        const FieldSpec F = make_field(p, m);
        for (int trial = 0; trial < 10; ++trial) {
            const auto u = random_poly(q, F, 2, rng);
            if (u.is_zero()) continue;
            const auto k = kernel_in(u, F).elements;
            CHECK(k == kernel_by_enumeration(u, F));
            CHECK(is_k_subspace(k, q));
            std::uint64_t size = 1;
            for (unsigned i = 0; i < kernel_dimension(u, F); ++i) size *= p;
            CHECK(k.size() == size);
        }
    }
}

TEST_CASE("preimages") {
    const FieldSpec gf4 = make_field(2, 2);
    const FieldElement w = gf4.generator();
    const LinearizedPoly as(2, gf4, {gf4.one(), gf4.one()});
    CHECK(preimages(as, gf4.one(), gf4) == std::vector<FieldElement>{w, w + gf4.one()});
    CHECK(preimages(as, w, gf4).empty());
    CHECK(preimages(as, gf4.zero(), gf4) == kernel_in(as, gf4).elements);

    const FieldSpec F = make_field(3, 4);
    const LinearizedPoly u(3, F, {F.generator(), F.one(), F.from_int(2)});
    for (const auto& c : {F.one(), F.generator(), F.from_index(40)}) {
        std::vector<FieldElement> brute;
        for (const auto& x : F.elements()) {
            if (u(x) == c) brute.push_back(x);
        }
        CHECK(preimages(u, c, F) == brute);
    }
}

TEST_CASE("splitting fields") {
    const FieldSpec gf4 = make_field(2, 2);
    const LinearizedPoly u(2, gf4, {gf4.generator(), gf4.zero(), gf4.one()});
    const FieldSpec L = splitting_field(u);
    CHECK(kernel_in(u, L).elements.size() == 4);
    CHECK(L.degree() % 2 == 0);
    // nothing smaller works
    for (unsigned d = 2; d < L.degree(); d += 2) {
        CHECK(kernel_in(u, make_field(2, d)).elements.size() < 4);
    }
    CHECK_THROWS_AS(splitting_field(u, 8), CapExceeded);
    const FieldSpec S = solving_field(u, gf4.generator());
    CHECK_FALSE(preimages(u.embedded_in(S), embed(gf4.generator(), S), S).empty());
}

TEST_CASE("validation") {
    const FieldSpec gf8 = make_field(2, 3);
    CHECK_THROWS_AS(LinearizedPoly(4, gf8, {gf8.one()}), InvalidArgument);
    CHECK_THROWS_AS(LinearizedPoly(3, gf8, {gf8.one()}), InvalidArgument);
    const FieldSpec gf4 = make_field(2, 2);
    CHECK_FALSE(is_k_subspace(std::vector<FieldElement>{gf4.zero(), gf4.one(), gf4.generator()}, 2));
    CHECK(is_k_subspace(std::vector<FieldElement>{gf4.zero(), gf4.one()}, 2));
}
