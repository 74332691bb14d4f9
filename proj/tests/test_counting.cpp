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

#include <cmath>

#include "dtower/counting.hpp"
#include "dtower/errors.hpp"

using namespace dtower;

namespace {

std::uint64_t pairs_with_nonzero(std::uint64_t q, const FieldSpec& F) {
    std::uint64_t n = 0;
    for (const auto& x : F.elements()) {
        for (const auto& z : F.elements()) {
            if (!x.is_zero() && !z.is_zero() && z.pow(q) + z == x.pow(q + 1)) ++n;
        }
    }
    return n;
}

// Point counts of a curve whose real Weil roots are `xs`.
std::vector<std::int64_t> counts_from_real_roots(const std::vector<std::int64_t>& xs, std::int64_t q1, int K) {
    std::vector<std::int64_t> out;
    std::vector<std::vector<std::int64_t>> p(xs.size(), std::vector<std::int64_t>{2});
    for (std::size_t i = 0; i < xs.size(); ++i) p[i].push_back(xs[i]);
    std::int64_t qm = 1;
    for (int m = 1; m <= K; ++m) {
        qm *= q1;
        std::int64_t s = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            while (static_cast<int>(p[i].size()) <= m) {
                const std::size_t k = p[i].size();
                p[i].push_back(xs[i] * p[i][k - 1] - q1 * p[i][k - 2]);
            }
            s += p[i][m];
        }
        out.push_back(qm + 1 - s);
    }
    return out;
}

}  // namespace

TEST_CASE("count_points examples") {
    const CountReport a = count_points(2, Variant::xprime, 2, 1, 1);
    CHECK(a.extensions.at(0).affine_count == 6);
    CHECK(a.supersingular == 6);
    CHECK(a.supersingular_expected == 6);
    CHECK(count_points(2, Variant::xprime, 3, 1, 1).supersingular == 12);
    const CountReport b = count_points(2, Variant::xprime, 2, 1, 2);
    CHECK(b.extensions.at(1).affine_count == pairs_with_nonzero(2, make_field(2, 4)));
    CHECK(count_points(3, Variant::xprime, 2, 2, 2).extensions.at(0).affine_count ==
          pairs_with_nonzero(3, make_field(3, 4)));
    CHECK(count_points(3, Variant::xprime, 4, 1, 1).supersingular == 216);
    const CountReport c = count_points(2, Variant::x0, 3, 1, 1);
    CHECK(c.supersingular == 4);
    CHECK(c.extensions.at(0).skipped_minus_one > 0);
    CHECK(count_points(2, Variant::xprime, 2, 1, 1, CountOptions{4, kDefaultFieldCap, {}}).extensions.at(0).affine_count ==
          6);
    CHECK_THROWS_AS(count_points(2, Variant::xprime, 2, 1, 13), CapExceeded);
    CHECK_THROWS_AS(count_points(6, Variant::xprime, 2, 1, 1), InvalidArgument);
    CHECK(expected_supersingular(Variant::xprime, 3, 5) == 8 * 81);
    CHECK(expected_supersingular(Variant::x0, 3, 5) == 81);
}

TEST_CASE("tower counts relate to the Hermitian model") {
    // Affine Hermitian points = tower points + the q points with x = 0.
    for (auto [q, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1}}) {
        const FieldSpec F = extension_field(q, m);
        CHECK(count_points(q, Variant::xprime, 2, m, m).extensions.at(0).affine_count + q ==
              hermitian_affine_by_fibers(q, F));
    }
}

TEST_CASE("Hermitian counts") {
    CHECK(hermitian_affine_brute_force(2, make_field(2, 2)) == 8);
    CHECK(hermitian_affine_brute_force(3, make_field(3, 2)) == 27);
    for (auto [p, m, q] : std::vector<std::tuple<std::uint64_t, unsigned, std::uint64_t>>{
             {2, 4, 2}, {2, 6, 2}, {2, 8, 4}, {3, 4, 3}, {2, 5, 2}, {5, 2, 5}}) {
        const FieldSpec F = make_field(p, m);
        CHECK(hermitian_affine_brute_force(q, F) == hermitian_affine_by_fibers(q, F));
    }
    for (std::uint64_t q : {2, 3, 4}) {
        const HermitianReport r = hermitian_check(q);
        CHECK(r.affine_brute_force == q * q * q);
        CHECK(r.projective == q * q * q + 1);
        CHECK(r.hasse_weil_bound == q * q + 1 + 2 * r.genus * q);
        CHECK(r.maximal);
        CHECK(r.zeta.residuals_zero());
        CHECK(r.zeta.integral);
    }
    const HermitianReport r2 = hermitian_check(2, 2);
    CHECK(r2.projective_counts == std::vector<std::int64_t>{9, 9});
}

TEST_CASE("zeta consistency") {
    const std::vector<std::int64_t> line{5, 17, 65};
    const ZetaReport z0 = zeta_consistency(line, 0, 4);
    CHECK(z0.residuals_zero());
    CHECK(z0.l_poly == std::vector<Rational>{1});

    const std::vector<std::int64_t> herm{9, 9};
    const ZetaReport z1 = zeta_consistency(herm, 1, 4);
    CHECK(z1.residuals_zero());
    CHECK(z1.l_poly == std::vector<Rational>{1, 4, 4});
    REQUIRE(z1.real_roots.size() == 1);
    CHECK(z1.real_roots[0] == doctest::Approx(-4.0));
    for (double m : z1.root_moduli) CHECK(m == doctest::Approx(2.0));
    CHECK(z1.weil_deviation < 1e-9);

    const std::vector<std::int64_t> perturbed{10, 9};
    CHECK_FALSE(zeta_consistency(perturbed, 1, 4).residuals_zero());
    const std::vector<std::int64_t> extra{9, 9, 10};
    CHECK(zeta_consistency(extra, 1, 4).count_residual != 0);

    // A genus-2 curve over GF(9) with real Weil roots 1 and -3.
    const auto counts = counts_from_real_roots({1, -3}, 9, 4);
    const ZetaReport z2 = zeta_consistency(counts, 2, 9);
    CHECK(z2.residuals_zero());
    // (1 - t + 9 t^2)(1 + 3 t + 9 t^2)
    CHECK(z2.l_poly == std::vector<Rational>{1, 2, 15, 18, 81});
    REQUIRE(z2.real_roots.size() == 2);
    CHECK(z2.real_roots[0] == doctest::Approx(-3.0));
    CHECK(z2.real_roots[1] == doctest::Approx(1.0));
    CHECK(z2.weil_deviation < 1e-9);

    // Only g counts: the rest comes from the functional equation.
    const std::vector<std::int64_t> two(counts.begin(), counts.begin() + 2);
    CHECK(zeta_consistency(two, 2, 9).l_poly == z2.l_poly);

    CHECK_THROWS_AS(zeta_consistency(std::vector<std::int64_t>{9}, 2, 9), InvalidArgument);
}

TEST_CASE("level-2 projective counts") {
    CHECK(level2_projective_counts(2, Variant::x0, 3) == std::vector<std::int64_t>{5, 17, 65});
    CHECK(level2_projective_counts(3, Variant::xprime, 2) == std::vector<std::int64_t>{28, 28});
    CHECK(parse_variant("x0") == Variant::x0);
    CHECK_THROWS_AS(parse_variant("y"), InvalidArgument);
}
