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

#ifndef DTOWER_FINITE_FIELD_HPP
#define DTOWER_FINITE_FIELD_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dtower/errors.hpp"

namespace dtower {

/// Largest field size accepted by default; full enumeration stays feasible below it.
inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 24;
/// Hard representability limit for packed elements.
inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 62;

class FieldElement;

namespace detail {

// Immutable arithmetic core of GF(p^m). Elements are packed as the integer
// sum c_i p^i of their power-basis coefficients (bits when p = 2).
class FieldData {
   public:
    FieldData(std::uint64_t p, unsigned m, std::vector<std::uint32_t> modulus, std::uint64_t cap);

    std::uint64_t p() const noexcept { return p_; }
    unsigned m() const noexcept { return m_; }
    std::uint64_t size() const noexcept { return size_; }
    std::uint64_t cap() const noexcept { return cap_; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;
    /// a -> a^(p^k), k taken mod m.
    std::uint64_t frobenius(std::uint64_t a, std::uint64_t k) const;
    /// Image of the integer v under Z -> GF(p).
    std::uint64_t from_int(std::int64_t v) const;

    void decode(std::uint64_t a, std::span<std::uint32_t> out) const;
    std::uint64_t encode(std::span<const std::uint32_t> digits) const;

    bool same_as(const FieldData& other) const noexcept;

   private:
    std::uint64_t p_;
    unsigned m_;
    std::uint64_t size_;
    std::uint64_t cap_;
    std::vector<std::uint32_t> modulus_;  // monic, length m + 1
    std::vector<std::uint64_t> pow_p_;    // p^i, i <= m
    std::uint64_t mod_bits_ = 0;          // p == 2: modulus as a bit mask
};

}  // namespace detail

/// GF(p^m) with a fixed monic irreducible modulus. Cheap to copy; immutable.
class FieldSpec {
   public:
    /// Validates primality of p, irreducibility of the modulus and the size cap.
    /// When no modulus is given the smallest irreducible in enumeration order is chosen.
    static FieldSpec make(std::uint64_t p, unsigned m,
                          std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                          std::uint64_t cap = kDefaultFieldCap);

    std::uint64_t characteristic() const noexcept { return data_->p(); }
    unsigned degree() const noexcept { return data_->m(); }
    std::uint64_t size() const noexcept { return data_->size(); }
    std::uint64_t cap() const noexcept { return data_->cap(); }
    const std::vector<std::uint32_t>& modulus() const noexcept { return data_->modulus(); }

    FieldElement zero() const;
    FieldElement one() const;
    /// The class of x modulo the modulus (the power-basis root).
    FieldElement generator() const;
    FieldElement from_index(std::uint64_t index) const;
    FieldElement from_int(std::int64_t v) const;
    FieldElement element(std::span<const std::uint32_t> coeffs) const;
    FieldElement parse_element(const std::string& text) const;

    /// All elements, ordered by packed index (0 first, then 1, w, w+1, ...).
    std::vector<FieldElement> elements() const;

    /// "p^m/c0,c1,...,cm" (modulus coefficients little-endian).
    std::string to_string() const;

    const detail::FieldData& data() const noexcept { return *data_; }
    const std::shared_ptr<const detail::FieldData>& shared() const noexcept { return data_; }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
        return a.data_->same_as(*b.data_);
    }

   private:
    explicit FieldSpec(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}
    friend class FieldElement;

    std::shared_ptr<const detail::FieldData> data_;
};

inline FieldSpec make_field(std::uint64_t p, unsigned m,
                            std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                            std::uint64_t cap = kDefaultFieldCap) {
    return FieldSpec::make(p, m, std::move(modulus), cap);
}

/// Parses "p^m/c0,...,cm" as produced by FieldSpec::to_string.
FieldSpec parse_field(const std::string& text, std::uint64_t cap = kDefaultFieldCap);

class FieldElement {
   public:
    FieldElement(const FieldSpec& field, std::uint64_t index);

    FieldSpec field() const { return FieldSpec(field_); }
    const detail::FieldData& data() const noexcept { return *field_; }
    std::uint64_t index() const noexcept { return value_; }
    std::vector<std::uint32_t> coeffs() const;

    bool is_zero() const noexcept { return value_ == 0; }
    bool is_one() const noexcept { return value_ == 1; }

    FieldElement pow(std::uint64_t e) const;
    FieldElement inverse() const;

    FieldElement& operator+=(const FieldElement& b);
    FieldElement& operator-=(const FieldElement& b);
    FieldElement& operator*=(const FieldElement& b);
    FieldElement& operator/=(const FieldElement& b);
    FieldElement operator-() const;

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

    /// Throws FieldMismatch across fields.
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b);

    bool same_field(const FieldElement& other) const noexcept {
        return field_ == other.field_ || field_->same_as(*other.field_);
    }
    bool in_field(const FieldSpec& f) const noexcept {
        return field_ == f.shared() || field_->same_as(f.data());
    }

    /// "c0,c1,...,c_{m-1}".
    std::string to_string() const;

   private:
    void require_same(const FieldElement& b) const;

    std::shared_ptr<const detail::FieldData> field_;
    std::uint64_t value_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& a);

enum class ArithOp { add, sub, mul, div };

FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op);

/// a^(q^e). q must be a power of the characteristic.
FieldElement q_frobenius(const FieldElement& a, std::uint64_t q, std::uint64_t e);

/// True iff a lies in the subfield with `subfield_size` elements (a^s = a).
bool in_subfield(const FieldElement& a, std::uint64_t subfield_size);

/// a + a^q for a in the quadratic extension of k, returned as an element of k.
FieldElement trace_to_subfield(const FieldElement& a, const FieldSpec& k);

/// Ring embedding GF(p^m) -> GF(p^(m s)) sending the source generator to the
/// first root (in enumeration order) of the source modulus in the target.
class Embedding {
   public:
    Embedding(const FieldSpec& source, const FieldSpec& target);

    const FieldSpec& source() const noexcept { return source_; }
    const FieldSpec& target() const noexcept { return target_; }
    const FieldElement& root() const noexcept { return root_; }

    FieldElement operator()(const FieldElement& a) const;
    /// Inverse image, if b lies in the image.
    std::optional<FieldElement> preimage(const FieldElement& b) const;

   private:
    FieldSpec source_;
    FieldSpec target_;
    FieldElement root_;
    std::vector<FieldElement> images_;  // images of 1, w, w^2, ...
};

/// Cached embedding lookup; throws if the degree of a's field does not divide target's.
const Embedding& embedding(const FieldSpec& source, const FieldSpec& target);
FieldElement embed(const FieldElement& a, const FieldSpec& target);

/// Elements of the subfield of size p^d inside L, in L's index order.
std::vector<FieldElement> subfield_elements(const FieldSpec& L, unsigned d);

/// Returns r if q == p^r for the prime p, else nullopt.
std::optional<unsigned> log_base(std::uint64_t q, std::uint64_t p);
bool is_prime(std::uint64_t n);
/// p and r with q == p^r, or nullopt if q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q);

}  // namespace dtower

#endif  // DTOWER_FINITE_FIELD_HPP
