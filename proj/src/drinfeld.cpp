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

#include "dtower/drinfeld.hpp"

#include <algorithm>
#include <numeric>

namespace dtower {

namespace {

void require_q(std::uint64_t q, const FieldSpec& F) {
    const auto r = log_base(q, F.characteristic());
    if (!r || *r == 0 || F.degree() % *r != 0) {
        throw InvalidArgument("GF(" + std::to_string(q) + ") is not a subfield of " + F.to_string());
    }
}

FieldSpec larger(const FieldSpec& a, const FieldSpec& b) {
    if (a.characteristic() == b.characteristic()) {
        if (b.degree() % a.degree() == 0) return b;
        if (a.degree() % b.degree() == 0) return a;
    }
    throw FieldMismatch("fields are not nested");
}

}  // namespace

// ---------------------------------------------------------------------------
// APoly

APoly::APoly(std::uint64_t q, std::vector<FieldElement> coeffs) : q_(q), coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    for (const auto& c : coeffs_) {
        require_q(q_, c.field());
        if (!c.same_field(coeffs_.front())) throw FieldMismatch("APoly coefficients must share one field");
        if (!in_subfield(c, q_)) throw InvalidArgument("APoly coefficient " + c.to_string() + " is not in GF(q)");
    }
}

APoly APoly::T(std::uint64_t q, const FieldSpec& field) { return APoly(q, {field.zero(), field.one()}); }

APoly APoly::constant(std::uint64_t q, const FieldElement& c) { return APoly(q, {c}); }

FieldElement APoly::operator()(const FieldElement& x) const {
    FieldElement acc = x.field().zero();
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + embed(coeffs_[i], x.field());
    return acc;
}

APoly operator+(const APoly& a, const APoly& b) {
    if (a.q_ != b.q_) throw InvalidArgument("mismatched q");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const FieldSpec F = larger(a.coeffs_.front().field(), b.coeffs_.front().field());
    std::vector<FieldElement> c(std::max(a.coeffs_.size(), b.coeffs_.size()), F.zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += embed(a.coeffs_[i], F);
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += embed(b.coeffs_[i], F);
    return APoly(a.q_, std::move(c));
}

APoly operator*(const APoly& a, const APoly& b) {
    if (a.q_ != b.q_) throw InvalidArgument("mismatched q");
    if (a.is_zero() || b.is_zero()) return APoly(a.q_, {});
    const FieldSpec F = larger(a.coeffs_.front().field(), b.coeffs_.front().field());
    std::vector<FieldElement> c(a.coeffs_.size() + b.coeffs_.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] += embed(a.coeffs_[i], F) * embed(b.coeffs_[j], F);
        }
    }
    return APoly(a.q_, std::move(c));
}

// ---------------------------------------------------------------------------
// DrinfeldModule

DrinfeldModule::DrinfeldModule(std::uint64_t q, FieldElement l0, FieldElement g, FieldElement delta)
    : q_(q), l0_(std::move(l0)), g_(std::move(g)), delta_(std::move(delta)) {
    if (!l0_.same_field(g_) || !l0_.same_field(delta_)) throw FieldMismatch("module coefficients must share one field");
    require_q(q_, l0_.field());
    if (delta_.is_zero()) throw InvalidArgument("discriminant must be nonzero");
}

LinearizedPoly phi_T(const DrinfeldModule& M) {
    return LinearizedPoly(M.q(), M.field(), {M.l0(), M.g(), M.delta()});
}

LinearizedPoly phi_a(const DrinfeldModule& M, const APoly& a) {
    if (a.q() != M.q()) throw InvalidArgument("mismatched q");
    const LinearizedPoly t = phi_T(M);
    const FieldSpec F = a.is_zero() ? M.field() : larger(M.field(), a.coeffs().front().field());
    LinearizedPoly acc(M.q(), F);
    for (std::size_t i = a.coeffs().size(); i-- > 0;) {
        acc = compose(acc, t) + LinearizedPoly::scalar(M.q(), embed(a.coeffs()[i], F));
    }
    return acc;
}

FieldElement j_invariant(const DrinfeldModule& M) { return M.g().pow(M.q() + 1) / M.delta(); }

bool is_supersingular(const DrinfeldModule& M) {
    if (!in_subfield(M.l0(), M.q())) {
        throw InvalidArgument("supersingularity criterion needs gamma(T) = l0 in GF(q)");
    }
    return M.g().is_zero();
}

bool is_normalized(const DrinfeldModule& M) {
    const FieldSpec F = M.field();
    return wedge_square(M) == Rank1Module{F.one(), -F.one()};
}

bool is_normalizable(const DrinfeldModule& M) {
    if (!M.l0().is_one()) throw InvalidArgument("normalizability is defined for l0 = 1");
    const std::uint64_t order = M.field().size() - 1;
    const std::uint64_t e = order / std::gcd(order, M.q() * M.q() - 1);
    return (-M.delta()).pow(e).is_one();
}

Rank1Module wedge_square(const DrinfeldModule& M) { return Rank1Module{M.l0(), M.delta()}; }

std::vector<FieldElement> torsion_points(const DrinfeldModule& M, const APoly& a, const FieldSpec& L) {
    if (a.is_zero()) throw InvalidArgument("torsion of a = 0 is not finite");
    return kernel_in(phi_a(M, a), L).elements;
}

Isogeny isogeny_from_kernel(const DrinfeldModule& M, std::span<const FieldElement> G) {
    if (G.empty()) throw InvalidArgument("kernel must contain 0");
    const std::uint64_t q = M.q();
    const FieldSpec F = larger(M.field(), G.front().field());
    std::vector<FieldElement> pts;
    for (const auto& x : G) pts.push_back(embed(x, F));
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) throw InvalidArgument("kernel has repeated points");
    if (!is_k_subspace(pts, q)) throw InvalidArgument("kernel is not a GF(q)-subspace");
    const LinearizedPoly t = phi_T(M).embedded_in(F);
    for (const auto& x : pts) {
        if (!std::binary_search(pts.begin(), pts.end(), t(x))) throw InvalidArgument("kernel is not phi-stable");
    }

    // prod (X - x) as an ordinary polynomial; only X^(q^i) terms may survive.
    std::vector<FieldElement> ord{F.one()};
    for (const auto& x : pts) {
        std::vector<FieldElement> next(ord.size() + 1, F.zero());
        for (std::size_t i = 0; i < ord.size(); ++i) {
            next[i + 1] += ord[i];
            next[i] -= x * ord[i];
        }
        ord = std::move(next);
    }
    std::vector<FieldElement> lin;
    std::uint64_t power = 1;
    for (std::size_t e = 0; e < ord.size(); ++e) {
        if (e == power) {
            lin.push_back(ord[e]);
            power *= q;
        } else if (!ord[e].is_zero()) {
            throw InvalidArgument("kernel polynomial is not linearized");
        }
    }
    const LinearizedPoly u(q, F, lin);

    const int d = u.degree();
    const LinearizedPoly lhs = compose(u, t);
    auto uc = [&](int i) { return i < 0 ? F.zero() : u.coeff(static_cast<std::size_t>(i)); };
    const FieldElement& ud = u.coeffs().back();
    const FieldElement n2 = lhs.coeff(static_cast<std::size_t>(d + 2)) / ud.pow(q * q);
    const FieldElement n1 = (lhs.coeff(static_cast<std::size_t>(d + 1)) - n2 * uc(d - 1).pow(q * q)) / ud.pow(q);
    const FieldElement n0 =
        (lhs.coeff(static_cast<std::size_t>(d)) - n1 * uc(d - 1).pow(q) - n2 * uc(d - 2).pow(q * q)) / ud;
    DrinfeldModule N(q, n0, n1, n2);
    if (!verify_isogeny(u, M, N) || !(n0 == embed(M.l0(), F))) {
        throw InternalError("intertwining relation failed for a phi-stable kernel");
    }
    return Isogeny{u, std::move(N)};
}

bool verify_isogeny(const LinearizedPoly& u, const DrinfeldModule& M, const DrinfeldModule& N) {
    const LinearizedPoly a = compose(u, phi_T(M));
    const LinearizedPoly b = compose(phi_T(N), u);
    const FieldSpec F = larger(a.field(), b.field());
    return a.embedded_in(F) == b.embedded_in(F);
}

DrinfeldModule transport(const DrinfeldModule& M, const FieldElement& u) {
    if (u.is_zero()) throw InvalidArgument("isomorphism must be a unit");
    const FieldSpec F = larger(M.field(), u.field());
    const FieldElement v = embed(u, F);
    const std::uint64_t q = M.q();
    const FieldElement s1 = v / v.pow(q);
    const FieldElement s2 = v / v.pow(q).pow(q);
    return DrinfeldModule(q, embed(M.l0(), F), s1 * embed(M.g(), F), s2 * embed(M.delta(), F));
}

}  // namespace dtower
