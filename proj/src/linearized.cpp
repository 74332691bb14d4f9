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

#include "dtower/linearized.hpp"

#include <algorithm>

#include "dtower/detail/gfp.hpp"

namespace dtower {

namespace {

constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 16;

// The larger of two fields, when one embeds in the other.
FieldSpec common_field(const FieldSpec& a, const FieldSpec& b) {
    if (a == b) return a;
    if (a.characteristic() == b.characteristic()) {
        if (b.degree() % a.degree() == 0) return b;
        if (a.degree() % b.degree() == 0) return a;
    }
    throw FieldMismatch("fields " + a.to_string() + " and " + b.to_string() + " are not nested");
}

// Every element of the GF(p)-span of `basis`.
std::vector<FieldElement> span_of(const std::vector<FieldElement>& basis, const FieldSpec& L) {
    std::vector<FieldElement> out{L.zero()};
    const std::uint64_t p = L.characteristic();
    for (const auto& b : basis) {
        const std::size_t n = out.size();
        for (std::uint64_t c = 1; c < p; ++c) {
            const FieldElement cb = L.from_int(static_cast<std::int64_t>(c)) * b;
            for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] + cb);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Matrix of x -> u(x) in the power basis of L (column j = coords of u(w^j)).
detail::GfpMatrix linear_map_matrix(const LinearizedPoly& u, const FieldSpec& L) {
    const unsigned m = L.degree();
    detail::GfpMatrix A(m, m, L.characteristic());
    FieldElement w_j = L.one();
    const FieldElement w = m == 1 ? L.one() : L.generator();
    for (unsigned j = 0; j < m; ++j) {
        const auto col = u(w_j).coeffs();
        for (unsigned i = 0; i < m; ++i) A.at(i, j) = col[i];
        w_j *= w;
    }
    return A;
}

FieldElement from_vector(const std::vector<std::uint64_t>& v, const FieldSpec& L) {
    std::vector<std::uint32_t> c(v.begin(), v.end());
    return L.element(c);
}

// q-power of the root count: roots of u are distinct and number q^(deg - valuation).
unsigned target_kernel_dimension(const LinearizedPoly& u) {
    if (u.is_zero()) throw InvalidArgument("the zero polynomial has no finite kernel");
    unsigned v = 0;
    while (u.coeff(v).is_zero()) ++v;
    const unsigned r = *log_base(u.q(), u.field().characteristic());
    return r * (static_cast<unsigned>(u.degree()) - v);
}

template <class Accept>
FieldSpec search_extension(const FieldSpec& base, std::uint64_t cap, Accept accept) {
    const std::uint64_t p = base.characteristic();
    for (unsigned s = 1;; ++s) {
        const unsigned deg = base.degree() * s;
        std::uint64_t size = 1;
        bool fits = true;
        for (unsigned i = 0; i < deg && fits; ++i) {
            if (size > cap / p) fits = false;
            size *= p;
        }
        if (!fits || size > cap) {
            throw CapExceeded("no suitable extension of " + base.to_string() + " within cap " + std::to_string(cap));
        }
        const FieldSpec L = s == 1 ? base : FieldSpec::make(p, deg, std::nullopt, cap);
        if (accept(L)) return L;
    }
}

}  // namespace

// ---------------------------------------------------------------------------

LinearizedPoly::LinearizedPoly(std::uint64_t q, FieldSpec field, std::vector<FieldElement> coeffs)
    : q_(q), field_(std::move(field)), coeffs_(std::move(coeffs)) {
    const auto r = log_base(q_, field_.characteristic());
    if (!r || *r == 0) throw InvalidArgument("q = " + std::to_string(q_) + " is not a power of the characteristic");
    if (field_.degree() % *r != 0) {
        throw InvalidArgument("GF(" + std::to_string(q_) + ") is not a subfield of " + field_.to_string());
    }
    for (auto& c : coeffs_) {
        if (!c.in_field(field_)) c = embed(c, field_);
    }
    trim();
}

LinearizedPoly LinearizedPoly::identity(std::uint64_t q, const FieldSpec& field) {
    return LinearizedPoly(q, field, {field.one()});
}

LinearizedPoly LinearizedPoly::tau(std::uint64_t q, const FieldSpec& field, unsigned power) {
    std::vector<FieldElement> c(power + 1, field.zero());
    c.back() = field.one();
    return LinearizedPoly(q, field, std::move(c));
}

LinearizedPoly LinearizedPoly::scalar(std::uint64_t q, const FieldElement& c) {
    return LinearizedPoly(q, c.field(), {c});
}

void LinearizedPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement LinearizedPoly::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : field_.zero();
}

FieldElement LinearizedPoly::operator()(const FieldElement& x_in) const {
    const FieldSpec F = common_field(field_, x_in.field());
    FieldElement x = embed(x_in, F);
    FieldElement acc = F.zero();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) x = x.pow(q_);
        if (!coeffs_[i].is_zero()) acc += embed(coeffs_[i], F) * x;
    }
    return acc;
}

LinearizedPoly LinearizedPoly::embedded_in(const FieldSpec& target) const {
    if (target == field_) return *this;
    std::vector<FieldElement> c;
    c.reserve(coeffs_.size());
    for (const auto& a : coeffs_) c.push_back(embed(a, target));
    return LinearizedPoly(q_, target, std::move(c));
}

LinearizedPoly& LinearizedPoly::operator+=(const LinearizedPoly& b_in) {
    if (q_ != b_in.q_) throw InvalidArgument("mismatched q");
    const FieldSpec F = common_field(field_, b_in.field_);
    *this = embedded_in(F);
    const LinearizedPoly b = b_in.embedded_in(F);
    if (coeffs_.size() < b.coeffs_.size()) coeffs_.resize(b.coeffs_.size(), F.zero());
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
    trim();
    return *this;
}

LinearizedPoly LinearizedPoly::operator-() const {
    LinearizedPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

LinearizedPoly& LinearizedPoly::operator-=(const LinearizedPoly& b) { return *this += -b; }

LinearizedPoly operator*(const FieldElement& c_in, const LinearizedPoly& u) {
    const FieldSpec F = common_field(c_in.field(), u.field());
    const FieldElement c = embed(c_in, F);
    LinearizedPoly r = u.embedded_in(F);
    for (auto& a : r.coeffs_) a = c * a;
    r.trim();
    return r;
}

bool operator==(const LinearizedPoly& a, const LinearizedPoly& b) {
    if (a.q_ != b.q_ || !(a.field_ == b.field_) || a.coeffs_.size() != b.coeffs_.size()) return false;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].index() != b.coeffs_[i].index()) return false;
    }
    return true;
}

LinearizedPoly compose(const LinearizedPoly& u_in, const LinearizedPoly& v_in) {
    if (u_in.q() != v_in.q()) throw InvalidArgument("compose: mismatched q");
    const FieldSpec F = common_field(u_in.field(), v_in.field());
    const LinearizedPoly u = u_in.embedded_in(F);
    const LinearizedPoly v = v_in.embedded_in(F);
    if (u.is_zero() || v.is_zero()) return LinearizedPoly(u.q(), F);
    const std::uint64_t q = u.q();
    std::vector<FieldElement> out(static_cast<std::size_t>(u.degree() + v.degree() + 1), F.zero());
    std::vector<FieldElement> v_twisted(v.coeffs().begin(), v.coeffs().end());  // v_j^(q^i)
    for (int i = 0; i <= u.degree(); ++i) {
        if (i) {
            for (auto& c : v_twisted) c = c.pow(q);
        }
        const FieldElement& ui = u.coeffs()[static_cast<std::size_t>(i)];
        if (ui.is_zero()) continue;
        for (int j = 0; j <= v.degree(); ++j) {
            out[static_cast<std::size_t>(i + j)] += ui * v_twisted[static_cast<std::size_t>(j)];
        }
    }
    return LinearizedPoly(q, F, std::move(out));
}

// ---------------------------------------------------------------------------

Kernel kernel_in(const LinearizedPoly& u_in, const FieldSpec& L) {
    if (u_in.is_zero()) throw InvalidArgument("kernel of the zero polynomial");
    const LinearizedPoly u = u_in.embedded_in(L);
    std::vector<FieldElement> basis;
    for (const auto& v : linear_map_matrix(u, L).nullspace()) basis.push_back(from_vector(v, L));
    Kernel k{span_of(basis, L), !u.is_separable()};
    if (!is_k_subspace(k.elements, u.q())) throw InternalError("kernel is not a GF(q)-subspace");
    return k;
}

std::vector<FieldElement> kernel_by_enumeration(const LinearizedPoly& u_in, const FieldSpec& L) {
    if (u_in.is_zero()) throw InvalidArgument("kernel of the zero polynomial");
    if (L.size() > kEnumerationLimit) throw CapExceeded("kernel enumeration limited to fields of size <= 2^16");
    const LinearizedPoly u = u_in.embedded_in(L);
    std::vector<FieldElement> out;
    for (const auto& x : L.elements()) {
        if (u(x).is_zero()) out.push_back(x);
    }
    return out;
}

unsigned kernel_dimension(const LinearizedPoly& u_in, const FieldSpec& L) {
    if (u_in.is_zero()) throw InvalidArgument("kernel of the zero polynomial");
    const LinearizedPoly u = u_in.embedded_in(L);
    return L.degree() - static_cast<unsigned>(linear_map_matrix(u, L).rank());
}

std::vector<FieldElement> preimages(const LinearizedPoly& u_in, const FieldElement& c_in, const FieldSpec& L) {
    if (u_in.is_zero()) throw InvalidArgument("preimages under the zero polynomial");
    const LinearizedPoly u = u_in.embedded_in(L);
    const FieldElement c = embed(c_in, L);
    const auto A = linear_map_matrix(u, L);
    const auto cc = c.coeffs();
    const auto sol = A.solve(std::vector<std::uint64_t>(cc.begin(), cc.end()));
    if (!sol) return {};
    const FieldElement x0 = from_vector(*sol, L);
    std::vector<FieldElement> basis;
    for (const auto& v : A.nullspace()) basis.push_back(from_vector(v, L));
    auto out = span_of(basis, L);
    for (auto& x : out) x += x0;
    std::sort(out.begin(), out.end());
    return out;
}

FieldSpec splitting_field(const LinearizedPoly& u, std::uint64_t cap) {
    const unsigned want = target_kernel_dimension(u);
    return search_extension(u.field(), cap, [&](const FieldSpec& L) { return kernel_dimension(u, L) == want; });
}

FieldSpec solving_field(const LinearizedPoly& u, const FieldElement& c, std::uint64_t cap) {
    const unsigned want = target_kernel_dimension(u);
    const FieldSpec base = common_field(u.field(), c.field());
    return search_extension(base, cap, [&](const FieldSpec& L) {
        if (kernel_dimension(u, L) != want) return false;
        const LinearizedPoly uL = u.embedded_in(L);
        const auto cc = embed(c, L).coeffs();
        return linear_map_matrix(uL, L).solve(std::vector<std::uint64_t>(cc.begin(), cc.end())).has_value();
    });
}

bool is_k_subspace(std::span<const FieldElement> elements, std::uint64_t q) {
    if (elements.empty()) return false;
    const FieldSpec F = elements.front().field();
    const auto r = log_base(q, F.characteristic());
    if (!r || *r == 0 || F.degree() % *r != 0) throw InvalidArgument("GF(q) is not a subfield of the elements' field");
    std::vector<std::uint64_t> idx;
    idx.reserve(elements.size());
    for (const auto& e : elements) idx.push_back(e.index());
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    auto contains = [&](const FieldElement& e) { return std::binary_search(idx.begin(), idx.end(), e.index()); };
    if (!contains(F.zero())) return false;
    for (const auto& a : elements) {
        for (const auto& b : elements) {
            if (!contains(a + b)) return false;
        }
    }
    for (const auto& c : subfield_elements(F, *r)) {
        for (const auto& a : elements) {
            if (!contains(c * a)) return false;
        }
    }
    return true;
}

}  // namespace dtower
