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

#include <random>
#include <set>

#include "dtower/errors.hpp"
#include "dtower/finite_field.hpp"
#include "oracle.hpp"

using namespace dtower;

namespace {

std::vector<std::pair<std::uint64_t, unsigned>> small_fields() {
    return {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {2, 8}, {3, 1}, {3, 2}, {3, 3},
            {3, 4}, {3, 5}, {5, 1}, {5, 2}, {5, 3}, {7, 1}, {7, 2}, {11, 2}, {13, 2}};
}

oracle::Poly modulus_of(const FieldSpec& F) {
    return oracle::Poly(F.modulus().begin(), F.modulus().end());
}

}  // namespace

TEST_CASE("make_field examples") {
    const FieldSpec gf4 = make_field(2, 2, std::vector<std::uint32_t>{1, 1, 1});
    CHECK(gf4.size() == 4);
    CHECK(gf4.to_string() == "2^2/1,1,1");
    CHECK_THROWS_AS(make_field(2, 2, std::vector<std::uint32_t>{1, 0, 1}), InvalidArgument);
    CHECK(make_field(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(make_field(2, 4).modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
    CHECK_THROWS_AS(make_field(4, 2), InvalidArgument);
    CHECK_THROWS_AS(make_field(2, 30), CapExceeded);
    CHECK_NOTHROW(make_field(2, 30, std::nullopt, std::uint64_t{1} << 30));
}

TEST_CASE("default modulus is the first irreducible in index order") {
    for (auto [p, m] : small_fields()) {
        if (m < 2) continue;
        const FieldSpec F = make_field(p, m);
        const auto mod = modulus_of(F);
        CHECK(oracle::irreducible(mod, static_cast<std::int64_t>(p)));
        const std::uint64_t idx = oracle::to_index(oracle::Poly(mod.begin(), mod.end() - 1), p);
        for (std::uint64_t smaller = 0; smaller < idx; ++smaller) {
            auto cand = oracle::from_index(smaller, m, p);
            cand.push_back(1);
            CHECK_FALSE(oracle::irreducible(cand, p));
        }
    }
}

TEST_CASE("arith examples in GF(4) and GF(9)") {
    const FieldSpec gf4 = make_field(2, 2);
    const FieldElement w = gf4.generator();
    CHECK(arith(w, w, ArithOp::mul).to_string() == "1,1");
    CHECK(arith(w, w, ArithOp::add).is_zero());
    const FieldSpec gf9 = make_field(3, 2);
    const FieldElement i = gf9.generator();
    CHECK((i * i).to_string() == "2,0");
    CHECK((i * i) == gf9.from_int(-1));
    CHECK_THROWS_AS(arith(w, gf4.zero(), ArithOp::div), DivisionByZero);
    CHECK_THROWS_AS(w + i, FieldMismatch);
}

TEST_CASE("multiplication matches schoolbook reduction") {
    for (auto [p, m] : small_fields()) {
        const FieldSpec F = make_field(p, m);
        if (F.size() > 81) continue;
        const auto mod = modulus_of(F);
        for (const auto& a : F.elements()) {
            for (const auto& b : F.elements()) {
                const auto expect = oracle::mul(oracle::from_index(a.index(), m, p), oracle::from_index(b.index(), m, p),
                                                mod, static_cast<std::int64_t>(p));
                REQUIRE((a * b).index() == oracle::to_index(expect, p));
            }
        }
    }
}

TEST_CASE("field axioms exhaustively for p^m <= 256") {
    for (auto [p, m] : small_fields()) {
        const FieldSpec F = make_field(p, m);
        CAPTURE(F.to_string());
        const auto els = F.elements();
        REQUIRE(els.size() == F.size());
        const FieldElement c = F.generator() + F.one();
        for (const auto& a : els) {
            REQUIRE(a + F.zero() == a);
            REQUIRE(a * F.one() == a);
            REQUIRE(a + (-a) == F.zero());
            if (!a.is_zero()) REQUIRE(a * a.inverse() == F.one());
            REQUIRE(a.pow(F.size()) == a);
            for (const auto& b : els) {
                REQUIRE(a + b == b + a);
                REQUIRE(a * b == b * a);
                REQUIRE((a + b) * c == a * c + b * c);
                REQUIRE((a * b) * c == a * (b * c));
                REQUIRE((a + b) - b == a);
                if (!b.is_zero()) REQUIRE((a / b) * b == a);
            }
        }
    }
}

TEST_CASE("enumeration order and parsing") {
    const FieldSpec gf2 = make_field(2, 1);
    CHECK(gf2.elements().size() == 2);
    const FieldSpec gf4 = make_field(2, 2);
    std::vector<std::string> names;
    for (const auto& a : gf4.elements()) names.push_back(a.to_string());
    CHECK(names == std::vector<std::string>{"0,0", "1,0", "0,1", "1,1"});
    const FieldSpec gf9 = make_field(3, 2);
    std::set<std::uint64_t> seen;
    for (const auto& a : gf9.elements()) seen.insert(a.index());
    CHECK(seen.size() == 9);
    CHECK(gf9.parse_element("2,1") == gf9.from_index(5));
    CHECK_THROWS_AS(gf9.parse_element("3,0"), InvalidArgument);
    CHECK_THROWS_AS(gf9.parse_element("1"), InvalidArgument);
    CHECK(parse_field("3^2/1,0,1") == gf9);
    CHECK(parse_field(gf4.to_string()).to_string() == "2^2/1,1,1");
}

TEST_CASE("frobenius and trace") {
    const FieldSpec gf4 = make_field(2, 2);
    const FieldElement w = gf4.generator();
    CHECK(q_frobenius(w, 2, 1).to_string() == "1,1");
    CHECK(q_frobenius(w, 2, 0) == w);
    CHECK(q_frobenius(w, 2, 2) == w);
    const FieldSpec gf2 = make_field(2, 1);
    CHECK(trace_to_subfield(w, gf2) == gf2.one());
    CHECK(trace_to_subfield(gf4.zero(), gf2).is_zero());
    CHECK(trace_to_subfield(gf4.one(), gf2).is_zero());
    const FieldSpec gf9 = make_field(3, 2), gf3 = make_field(3, 1);
    for (const auto& a : gf9.elements()) {
        CHECK(embed(trace_to_subfield(a, gf3), gf9) == a + a.pow(3));
    }
}

TEST_CASE("embeddings are ring maps and Galois stable") {
    const FieldSpec gf2 = make_field(2, 1), gf4 = make_field(2, 2), gf16 = make_field(2, 4);
    CHECK(embed(gf2.one(), gf16) == gf16.one());
    const FieldElement y = embed(gf4.generator(), gf16);
    CHECK((y * y + y + gf16.one()).is_zero());
    for (const auto& a : gf4.elements()) {
        CHECK(q_frobenius(q_frobenius(embed(a, gf16), 2, 1), 2, 1) == embed(a, gf16));
        for (const auto& b : gf4.elements()) {
            CHECK(embed(a * b, gf16) == embed(a, gf16) * embed(b, gf16));
            CHECK(embed(a + b, gf16) == embed(a, gf16) + embed(b, gf16));
        }
        CHECK(embedding(gf4, gf16).preimage(embed(a, gf16)) == a);
    }
    CHECK_FALSE(embedding(gf4, gf16).preimage(gf16.generator()).has_value());
    CHECK_THROWS_AS(embed(gf4.generator(), make_field(2, 3)), InvalidArgument);

    const FieldSpec gf9 = make_field(3, 2), gf3_6 = make_field(3, 6);
    for (const auto& a : gf9.elements()) {
        for (const auto& b : gf9.elements()) CHECK(embed(a * b, gf3_6) == embed(a, gf3_6) * embed(b, gf3_6));
    }
    CHECK(subfield_elements(gf16, 2).size() == 4);
    for (const auto& a : subfield_elements(gf16, 2)) CHECK(in_subfield(a, 4));
}

TEST_CASE("large fields use carryless and generic paths consistently") {
    const FieldSpec F = make_field(2, 40, std::nullopt, std::uint64_t{1} << 40);
    const FieldElement g = F.generator();
    FieldElement acc = F.one();
    for (int i = 0; i < 100; ++i) acc *= g + F.one();
    CHECK(acc == (g + F.one()).pow(100));
    CHECK(acc.pow(F.size() - 1) == F.one());
    const FieldSpec G = make_field(3, 20, std::nullopt, std::uint64_t{1} << 40);
    const FieldElement h = G.generator() + G.from_int(2);
    CHECK(h.pow(G.size()) == h);
    CHECK(h * h.inverse() == G.one());
}

TEST_CASE("number helpers") {
    CHECK(is_prime(2));
    CHECK(is_prime(1'000'000'007));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));
    CHECK(prime_power(8) == std::make_pair(std::uint64_t{2}, 3u));
    CHECK_FALSE(prime_power(6).has_value());
    CHECK(log_base(27, 3) == 3u);
    CHECK_FALSE(log_base(12, 3).has_value());
}

TEST_CASE("characteristic-2 multiplication against schoolbook at larger degree") {
    std::mt19937_64 rng(99);
    for (unsigned m : {20u, 31u, 32u, 33u, 40u}) {
        const FieldSpec F = make_field(2, m, std::nullopt, std::uint64_t{1} << 40);
        const auto mod = modulus_of(F);
        for (int i = 0; i < 200; ++i) {
            const std::uint64_t a = rng() % F.size(), b = rng() % F.size();
            const auto expect = oracle::mul(oracle::from_index(a, m, 2), oracle::from_index(b, m, 2), mod, 2);
            REQUIRE(F.data().mul(a, b) == oracle::to_index(expect, 2));
        }
    }
}
