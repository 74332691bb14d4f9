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

#include "dtower/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "dtower/detail/gfp.hpp"

namespace dtower {

namespace {

constexpr unsigned kMaxDegree = 64;

// Largest target size for which embeddings locate roots by plain enumeration.
constexpr std::uint64_t kEnumerateRootsBelow = std::uint64_t{1} << 16;

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
    std::uint64_t r = 1 % n;
    a %= n;
    while (e) {
        if (e & 1) r = detail::mulmod_u64(r, a, n);
        a = detail::mulmod_u64(a, a, n);
        e >>= 1;
    }
    return r;
}

// p^m, or nullopt past kMaxFieldSize.
std::optional<std::uint64_t> checked_power(std::uint64_t p, unsigned m) {
    std::uint64_t s = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (s > kMaxFieldSize / p) return std::nullopt;
        s *= p;
    }
    return s;
}

detail::GfpPoly to_gfp(const std::vector<std::uint32_t>& c) {
    detail::GfpPoly f(c.begin(), c.end());
    detail::trim(f);
    return f;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::uint64_t parse_u64(const std::string& s) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        throw InvalidArgument("not a number: '" + s + "'");
    }
    if (pos != s.size() || s.empty() || s[0] == '-' || s[0] == '+') {
        throw InvalidArgument("not a number: '" + s + "'");
    }
    return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % sp == 0) return n == sp;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic for 64-bit inputs.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::optional<unsigned> log_base(std::uint64_t q, std::uint64_t p) {
    if (p < 2 || q < 1) return std::nullopt;
    unsigned r = 0;
    while (q % p == 0) {
        q /= p;
        ++r;
    }
    if (q != 1) return std::nullopt;
    return r;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;
    auto r = log_base(q, p);
    if (!r || !is_prime(p)) return std::nullopt;
    return std::make_pair(p, *r);
}

// ---------------------------------------------------------------------------
// FieldData

namespace detail {

FieldData::FieldData(std::uint64_t p, unsigned m, std::vector<std::uint32_t> modulus, std::uint64_t cap)
    : p_(p), m_(m), size_(1), cap_(cap), modulus_(std::move(modulus)) {
    pow_p_.push_back(1);
    for (unsigned i = 0; i < m_; ++i) {
        size_ *= p_;
        pow_p_.push_back(size_);
    }
    if (p_ == 2) {
        for (unsigned i = 0; i <= m_; ++i) {
            if (modulus_[i]) mod_bits_ |= std::uint64_t{1} << i;
        }
    }
}

bool FieldData::same_as(const FieldData& o) const noexcept {
    return this == &o || (p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_);
}

void FieldData::decode(std::uint64_t a, std::span<std::uint32_t> out) const {
    if (p_ == 2) {
        for (unsigned i = 0; i < m_; ++i) out[i] = static_cast<std::uint32_t>((a >> i) & 1);
        return;
    }
    for (unsigned i = 0; i < m_; ++i) {
        out[i] = static_cast<std::uint32_t>(a % p_);
        a /= p_;
    }
}

std::uint64_t FieldData::encode(std::span<const std::uint32_t> d) const {
    if (p_ == 2) {
        std::uint64_t a = 0;
        for (unsigned i = 0; i < m_; ++i) a |= static_cast<std::uint64_t>(d[i] & 1) << i;
        return a;
    }
    std::uint64_t a = 0;
    for (unsigned i = m_; i-- > 0;) a = a * p_ + d[i];
    return a;
}

std::uint64_t FieldData::add(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return a ^ b;
    if (m_ == 1) {
        const std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t r = 0;
    for (unsigned i = 0; i < m_; ++i) {
        std::uint64_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * pow_p_[i];
        a /= p_;
        b /= p_;
    }
    return r;
}

std::uint64_t FieldData::neg(std::uint64_t a) const {
    if (p_ == 2) return a;
    std::uint64_t r = 0;
    for (unsigned i = 0; i < m_; ++i) {
        const std::uint64_t c = a % p_;
        r += (c == 0 ? 0 : p_ - c) * pow_p_[i];
        a /= p_;
    }
    return r;
}

std::uint64_t FieldData::sub(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return a ^ b;
    return add(a, neg(b));
}

std::uint64_t FieldData::mul(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2 && m_ <= 32) {
        std::uint64_t prod = 0;
        for (std::uint64_t aa = a; b; b >>= 1, aa <<= 1) prod ^= aa & (0 - (b & 1));
        for (unsigned i = 2 * m_; i-- > m_;) {
            if ((prod >> i) & 1) prod ^= mod_bits_ << (i - m_);
        }
        return prod;
    }
    if (p_ == 2) {
        unsigned __int128 prod = 0;
        unsigned __int128 aa = a;
        while (b) {
            if (b & 1) prod ^= aa;
            aa <<= 1;
            b >>= 1;
        }
        for (unsigned i = 2 * m_; i-- > m_;) {
            if ((prod >> i) & 1) prod ^= static_cast<unsigned __int128>(mod_bits_) << (i - m_);
        }
        return static_cast<std::uint64_t>(prod);
    }
    if (m_ == 1) return mulmod_u64(a, b, p_);
    std::uint32_t da[kMaxDegree], db[kMaxDegree];
    decode(a, da);
    decode(b, db);
    std::uint64_t prod[2 * kMaxDegree] = {};
    for (unsigned i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < m_; ++j) {
            prod[i + j] = (prod[i + j] + mulmod_u64(da[i], db[j], p_)) % p_;
        }
    }
    for (unsigned i = 2 * m_ - 1; i-- > m_;) {
        const std::uint64_t c = prod[i];
        if (c == 0) continue;
        for (unsigned j = 0; j < m_; ++j) {
            const std::uint64_t t = mulmod_u64(c, modulus_[j], p_);
            prod[i - m_ + j] = (prod[i - m_ + j] + p_ - t) % p_;
        }
        prod[i] = 0;
    }
    std::uint32_t out[kMaxDegree];
    for (unsigned i = 0; i < m_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return encode(std::span<const std::uint32_t>(out, m_));
}

std::uint64_t FieldData::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

std::uint64_t FieldData::inv(std::uint64_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    return pow(a, size_ - 2);
}

std::uint64_t FieldData::frobenius(std::uint64_t a, std::uint64_t k) const {
    return pow(a, pow_p_[k % m_]);
}

std::uint64_t FieldData::from_int(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::make(std::uint64_t p, unsigned m, std::optional<std::vector<std::uint32_t>> modulus,
                          std::uint64_t cap) {
    if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
    if (m < 1 || m > kMaxDegree) throw InvalidArgument("extension degree out of range");
    if (p > 0xffffffffULL) throw InvalidArgument("characteristic too large");
    const auto size = checked_power(p, m);
    if (!size) throw CapExceeded("field size " + std::to_string(p) + "^" + std::to_string(m) + " is not representable");
    if (*size > cap) {
        throw CapExceeded("field size " + std::to_string(p) + "^" + std::to_string(m) + " exceeds cap " +
                          std::to_string(cap));
    }

    std::vector<std::uint32_t> mod;
    if (modulus) {
        mod = *modulus;
        if (mod.size() != m + 1 || mod.back() != 1) {
            throw InvalidArgument("modulus must be monic of degree " + std::to_string(m));
        }
        for (auto c : mod) {
            if (c >= p) throw InvalidArgument("modulus coefficient not reduced mod p");
        }
        if (!detail::is_irreducible(to_gfp(mod), p)) throw InvalidArgument("modulus is reducible");
    } else {
        mod.assign(m + 1, 0);
        mod[m] = 1;
        const std::uint64_t lower = *size;  // number of choices for c_0..c_{m-1}
        bool found = false;
        for (std::uint64_t idx = 0; idx < lower && !found; ++idx) {
            std::uint64_t t = idx;
            for (unsigned i = 0; i < m; ++i) {
                mod[i] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            found = detail::is_irreducible(to_gfp(mod), p);
        }
        if (!found) throw InternalError("no irreducible polynomial found");
    }
    return FieldSpec(std::make_shared<const detail::FieldData>(p, m, std::move(mod), cap));
}

FieldElement FieldSpec::zero() const { return FieldElement(*this, 0); }
FieldElement FieldSpec::one() const { return FieldElement(*this, 1); }

FieldElement FieldSpec::generator() const {
    if (degree() == 1) return FieldElement(*this, data_->neg(modulus()[0]));
    return FieldElement(*this, characteristic());
}

FieldElement FieldSpec::from_index(std::uint64_t index) const {
    if (index >= size()) throw InvalidArgument("element index out of range");
    return FieldElement(*this, index);
}

FieldElement FieldSpec::from_int(std::int64_t v) const { return FieldElement(*this, data_->from_int(v)); }

FieldElement FieldSpec::element(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() != degree()) throw InvalidArgument("coefficient vector length must equal the degree");
    for (auto c : coeffs) {
        if (c >= characteristic()) throw InvalidArgument("coefficient not reduced mod p");
    }
    return FieldElement(*this, data_->encode(coeffs));
}

FieldElement FieldSpec::parse_element(const std::string& text) const {
    const auto parts = split(text, ',');
    if (parts.size() != degree()) {
        throw InvalidArgument("element '" + text + "' needs " + std::to_string(degree()) + " coefficients");
    }
    std::vector<std::uint32_t> c;
    for (const auto& s : parts) {
        const auto v = parse_u64(s);
        if (v >= characteristic()) throw InvalidArgument("coefficient not reduced mod p in '" + text + "'");
        c.push_back(static_cast<std::uint32_t>(v));
    }
    return element(c);
}

std::vector<FieldElement> FieldSpec::elements() const {
    std::vector<FieldElement> out;
    out.reserve(size());
    for (std::uint64_t i = 0; i < size(); ++i) out.emplace_back(*this, i);
    return out;
}

std::string FieldSpec::to_string() const {
    std::ostringstream os;
    os << characteristic() << '^' << degree() << '/';
    for (std::size_t i = 0; i < modulus().size(); ++i) {
        if (i) os << ',';
        os << modulus()[i];
    }
    return os.str();
}

FieldSpec parse_field(const std::string& text, std::uint64_t cap) {
    const auto caret = text.find('^');
    const auto slash = text.find('/');
    if (caret == std::string::npos || slash == std::string::npos || slash < caret) {
        throw InvalidArgument("field must look like p^m/c0,...,cm: '" + text + "'");
    }
    const auto p = parse_u64(text.substr(0, caret));
    const auto m = parse_u64(text.substr(caret + 1, slash - caret - 1));
    std::vector<std::uint32_t> mod;
    for (const auto& s : split(text.substr(slash + 1), ',')) {
        mod.push_back(static_cast<std::uint32_t>(parse_u64(s)));
    }
    return FieldSpec::make(p, static_cast<unsigned>(m), mod, cap);
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(const FieldSpec& field, std::uint64_t index) : field_(field.shared()), value_(index) {}

std::vector<std::uint32_t> FieldElement::coeffs() const {
    std::vector<std::uint32_t> c(field_->m());
    field_->decode(value_, c);
    return c;
}

void FieldElement::require_same(const FieldElement& b) const {
    if (!same_field(b)) throw FieldMismatch("operands belong to different fields");
}

FieldElement FieldElement::pow(std::uint64_t e) const {
    FieldElement r = *this;
    r.value_ = field_->pow(value_, e);
    return r;
}

FieldElement FieldElement::inverse() const {
    FieldElement r = *this;
    r.value_ = field_->inv(value_);
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& b) {
    require_same(b);
    value_ = field_->add(value_, b.value_);
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& b) {
    require_same(b);
    value_ = field_->sub(value_, b.value_);
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& b) {
    require_same(b);
    value_ = field_->mul(value_, b.value_);
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& b) {
    require_same(b);
    if (b.is_zero()) throw DivisionByZero("division by zero");
    value_ = field_->mul(value_, field_->inv(b.value_));
    return *this;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    r.value_ = field_->neg(value_);
    return r;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    a.require_same(b);
    return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    a.require_same(b);
    return a.value_ <=> b.value_;
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    const auto c = coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i];
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.to_string(); }

FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
        case ArithOp::div: return a / b;
    }
    throw InvalidArgument("unknown operation");
}

FieldElement q_frobenius(const FieldElement& a, std::uint64_t q, std::uint64_t e) {
    const auto& d = a.data();
    const auto r = log_base(q, d.p());
    if (!r || *r == 0) throw InvalidArgument("q = " + std::to_string(q) + " is not a power of the characteristic");
    // a^(p^(r e)) with r e reduced mod m, since a^(p^m) = a.
    const std::uint64_t k = (static_cast<std::uint64_t>(*r) % d.m()) * (e % d.m()) % d.m();
    return FieldElement(a.field(), d.frobenius(a.index(), k));
}

bool in_subfield(const FieldElement& a, std::uint64_t subfield_size) { return a.pow(subfield_size) == a; }

FieldElement trace_to_subfield(const FieldElement& a, const FieldSpec& k) {
    const FieldSpec L = a.field();
    if (k.characteristic() != L.characteristic() || L.degree() % (2 * k.degree()) != 0) {
        throw InvalidArgument("the element's field does not contain a quadratic extension of k");
    }
    const std::uint64_t q = k.size();
    if (!in_subfield(a, q * q)) throw InvalidArgument("element is not in the quadratic extension of k");
    const FieldElement r = a + q_frobenius(a, q, 1);
    if (!in_subfield(r, q)) throw InternalError("trace does not lie in k");
    auto pre = embedding(k, L).preimage(r);
    if (!pre) throw InternalError("trace has no preimage in k");
    return *pre;
}

// ---------------------------------------------------------------------------
// Embeddings

namespace {

using RawPoly = std::vector<std::uint64_t>;  // over a FieldData, little-endian

void trim_raw(RawPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

RawPoly raw_mod(RawPoly a, const RawPoly& f, const detail::FieldData& D) {
    trim_raw(a);
    const std::size_t df = f.size() - 1;
    const std::uint64_t li = D.inv(f.back());
    while (a.size() > df) {
        const std::size_t shift = a.size() - 1 - df;
        const std::uint64_t c = D.mul(a.back(), li);
        for (std::size_t j = 0; j <= df; ++j) a[shift + j] = D.sub(a[shift + j], D.mul(c, f[j]));
        trim_raw(a);
    }
    return a;
}

RawPoly raw_mulmod(const RawPoly& a, const RawPoly& b, const RawPoly& f, const detail::FieldData& D) {
    if (a.empty() || b.empty()) return {};
    RawPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = D.add(r[i + j], D.mul(a[i], b[j]));
    }
    return raw_mod(std::move(r), f, D);
}

RawPoly raw_powmod(RawPoly base, std::uint64_t e, const RawPoly& f, const detail::FieldData& D) {
    RawPoly acc{1};
    base = raw_mod(std::move(base), f, D);
    while (e) {
        if (e & 1) acc = raw_mulmod(acc, base, f, D);
        e >>= 1;
        if (e) base = raw_mulmod(base, base, f, D);
    }
    return acc;
}

RawPoly raw_gcd(RawPoly a, RawPoly b, const detail::FieldData& D) {
    trim_raw(a);
    trim_raw(b);
    while (!b.empty()) {
        RawPoly r = raw_mod(a, b, D);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const std::uint64_t li = D.inv(a.back());
        for (auto& c : a) c = D.mul(c, li);
    }
    return a;
}

std::uint64_t raw_eval(const RawPoly& f, std::uint64_t x, const detail::FieldData& D) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = D.add(D.mul(acc, x), f[i]);
    return acc;
}

// One root of f, which splits into distinct linear factors over D.
std::uint64_t split_one_root(RawPoly f, const detail::FieldData& D) {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::uint64_t> pick(0, D.size() - 1);
    while (f.size() > 2) {
        const std::uint64_t delta = pick(rng);
        RawPoly h;
        if (D.p() == 2) {
            // absolute trace of delta*X, reduced mod f
            RawPoly term = raw_mod({0, delta}, f, D);
            h = term;
            for (unsigned i = 1; i < D.m(); ++i) {
                term = raw_mulmod(term, term, f, D);
                h.resize(std::max(h.size(), term.size()), 0);
                for (std::size_t j = 0; j < term.size(); ++j) h[j] = D.add(h[j], term[j]);
            }
        } else {
            h = raw_powmod({delta, 1}, (D.size() - 1) / 2, f, D);
            if (h.empty()) h.push_back(0);
            h[0] = D.sub(h[0], 1);
        }
        trim_raw(h);
        RawPoly g = raw_gcd(f, h, D);
        if (g.size() > 1 && g.size() < f.size()) f = std::move(g);
    }
    return D.mul(D.neg(f[0]), D.inv(f[1]));
}

}  // namespace

Embedding::Embedding(const FieldSpec& source, const FieldSpec& target)
    : source_(source), target_(target), root_(target.zero()) {
    if (source.characteristic() != target.characteristic() || target.degree() % source.degree() != 0) {
        throw InvalidArgument("no embedding GF(" + std::to_string(source.characteristic()) + "^" +
                              std::to_string(source.degree()) + ") -> GF(" +
                              std::to_string(target.characteristic()) + "^" + std::to_string(target.degree()) +
                              ")");
    }
    const auto& D = target.data();
    RawPoly f;
    for (auto c : source.modulus()) f.push_back(D.from_int(c));

    std::optional<std::uint64_t> best;
    if (target.size() <= kEnumerateRootsBelow) {
        for (std::uint64_t x = 0; x < target.size(); ++x) {
            if (raw_eval(f, x, D) == 0) {
                best = x;
                break;
            }
        }
    } else {
        // The roots are the Frobenius conjugates of any one root; keep the smallest index.
        std::uint64_t r = split_one_root(f, D);
        best = r;
        for (unsigned i = 1; i < source.degree(); ++i) {
            r = D.pow(r, D.p());
            best = std::min(*best, r);
        }
    }
    if (!best || raw_eval(f, *best, D) != 0) throw InternalError("source modulus has no root in the target field");
    root_ = FieldElement(target, *best);

    FieldElement acc = target.one();
    for (unsigned i = 0; i < source.degree(); ++i) {
        images_.push_back(acc);
        acc *= root_;
    }
}

FieldElement Embedding::operator()(const FieldElement& a) const {
    if (!a.in_field(source_)) throw FieldMismatch("element is not in the embedding's source field");
    const auto c = a.coeffs();
    FieldElement out = target_.zero();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i]) out += target_.from_int(c[i]) * images_[i];
    }
    return out;
}

std::optional<FieldElement> Embedding::preimage(const FieldElement& b) const {
    if (!b.in_field(target_)) throw FieldMismatch("element is not in the embedding's target field");
    const unsigned ms = source_.degree(), mt = target_.degree();
    detail::GfpMatrix A(mt, ms, target_.characteristic());
    for (unsigned j = 0; j < ms; ++j) {
        const auto col = images_[j].coeffs();
        for (unsigned i = 0; i < mt; ++i) A.at(i, j) = col[i];
    }
    const auto bc = b.coeffs();
    auto sol = A.solve(std::vector<std::uint64_t>(bc.begin(), bc.end()));
    if (!sol) return std::nullopt;
    std::vector<std::uint32_t> c(sol->begin(), sol->end());
    return source_.element(c);
}

const Embedding& embedding(const FieldSpec& source, const FieldSpec& target) {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::string>, std::unique_ptr<Embedding>> cache;
    const auto key = std::make_pair(source.to_string(), target.to_string());
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto e = std::make_unique<Embedding>(source, target);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, std::move(e));
    return *it->second;
}

FieldElement embed(const FieldElement& a, const FieldSpec& target) {
    if (a.in_field(target)) return a;
    return embedding(a.field(), target)(a);
}

std::vector<FieldElement> subfield_elements(const FieldSpec& L, unsigned d) {
    if (d == 0 || L.degree() % d != 0) throw InvalidArgument("subfield degree must divide the field degree");
    if (d == L.degree()) return L.elements();
    const FieldSpec sub = FieldSpec::make(L.characteristic(), d, std::nullopt, L.size());
    const Embedding& e = embedding(sub, L);
    std::vector<FieldElement> out;
    out.reserve(sub.size());
    for (const auto& a : sub.elements()) out.push_back(e(a));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dtower
