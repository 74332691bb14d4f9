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

#include "dtower/tower.hpp"

#include <algorithm>
#include <thread>
#include <utility>

namespace dtower {

namespace {

void require_nonzero(const FieldElement& x, const char* what) {
    if (x.is_zero()) throw InvalidArgument(std::string(what) + " requires x != 0");
}

void require_q(std::uint64_t q, const FieldSpec& F, unsigned times = 1) {
    const auto r = log_base(q, F.characteristic());
    if (!r || *r == 0 || F.degree() % (*r * times) != 0) {
        throw InvalidArgument("GF(" + std::to_string(q) + (times == 2 ? "^2" : "") + ") is not a subfield of " +
                              F.to_string());
    }
}

// x^(-k) for x != 0 via x^(|F|-1-k mod (|F|-1)).
FieldElement pow_signed(const FieldElement& x, std::int64_t e) {
    const auto order = static_cast<std::int64_t>(x.field().size() - 1);
    std::int64_t r = e % order;
    if (r < 0) r += order;
    return x.pow(static_cast<std::uint64_t>(r));
}

// Runs body(begin, end, out) on contiguous blocks of [1, count) and concatenates in order.
template <class T, class Body>
std::vector<T> partitioned(std::uint64_t count, unsigned workers, Body body) {
    workers = std::max(1u, workers);
    const std::uint64_t items = count > 0 ? count - 1 : 0;
    const std::uint64_t block = (items + workers - 1) / workers;
    std::vector<std::vector<T>> parts(workers);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = 1 + w * block;
        const std::uint64_t hi = std::min<std::uint64_t>(count, lo + block);
        if (lo >= hi) continue;
        if (workers == 1) {
            body(lo, hi, parts[w]);
        } else {
            threads.emplace_back([&, lo, hi, w] { body(lo, hi, parts[w]); });
        }
    }
    for (auto& th : threads) th.join();
    std::vector<T> out;
    for (auto& p : parts) {
        out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    }
    return out;
}

bool lex_less(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const FieldElement& x, const FieldElement& y) { return x.index() < y.index(); });
}

bool same_coords(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].same_field(b[i]) || a[i].index() != b[i].index()) return false;
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Building blocks

LinearizedPoly P(std::uint64_t q, const FieldElement& x) {
    require_nonzero(x, "P_x");
    const FieldSpec F = x.field();
    return LinearizedPoly(q, F, {x.pow(q - 1), -F.one()});
}

LinearizedPoly Q(std::uint64_t q, const FieldElement& x) {
    require_nonzero(x, "Q_x");
    const FieldSpec F = x.field();
    return LinearizedPoly(q, F, {pow_signed(x, 1 - static_cast<std::int64_t>(q)), F.one()});
}

LinearizedPoly t(std::uint64_t q, const FieldElement& x) {
    require_nonzero(x, "t_x");
    const FieldSpec F = x.field();
    const FieldElement mid = (x.pow(q).pow(q) - x) / x.pow(q);
    return LinearizedPoly(q, F, {F.one(), mid, -F.one()});
}

LinearizedPoly t_prime(std::uint64_t q, const FieldElement& x) {
    require_nonzero(x, "t'_x");
    const FieldSpec F = x.field();
    const auto qi = static_cast<std::int64_t>(q);
    const FieldElement mid = x.pow(q - 1) - pow_signed(x, qi - qi * qi);
    return LinearizedPoly(q, F, {F.one(), mid, -F.one()});
}

DrinfeldModule module_from_x1(std::uint64_t q, const FieldElement& x1) {
    require_nonzero(x1, "module_from_x1");
    const FieldSpec F = x1.field();
    require_q(q, F);
    const FieldElement g = (x1.pow(q).pow(q) - x1) / x1.pow(q);
    DrinfeldModule M(q, F.one(), g, -F.one());
    if (!phi_T(M)(x1).is_zero()) throw InternalError("x1 is not a T-torsion point of its module");
    return M;
}

// ---------------------------------------------------------------------------
// Points

TowerPoint::TowerPoint(std::uint64_t q, std::vector<FieldElement> coords) : q_(q), coords_(std::move(coords)) {
    if (coords_.empty()) throw InvalidArgument("a tower point needs at least x1");
    const FieldSpec F = coords_.front().field();
    require_q(q_, F);
    for (std::size_t j = 0; j < coords_.size(); ++j) {
        if (!coords_[j].same_field(coords_.front())) throw FieldMismatch("tower coordinates must share one field");
        if (coords_[j].is_zero()) throw InvalidArgument("tower coordinates must be nonzero");
        if (j > 0) {
            const FieldElement& prev = coords_[j - 1];
            if (!(Q(q_, prev)(coords_[j]) == prev)) {
                throw InvalidArgument("x" + std::to_string(j + 1) + " does not satisfy Q_{x" + std::to_string(j) +
                                      "}(x" + std::to_string(j + 1) + ") = x" + std::to_string(j));
            }
        }
    }
}

FieldElement TowerPoint::z(std::size_t j) const {
    if (j < 2 || j > coords_.size()) throw InvalidArgument("z_j needs 2 <= j <= level");
    return x(j - 1) * x(j);
}

bool operator==(const TowerPoint& a, const TowerPoint& b) { return a.q_ == b.q_ && same_coords(a.coords_, b.coords_); }
bool operator<(const TowerPoint& a, const TowerPoint& b) { return lex_less(a.coords_, b.coords_); }

FieldElement z_step_lhs(std::uint64_t q, const FieldElement& Z) {
    return Z * (Z.field().one() + Z).pow(q - 1);
}

FieldElement z_step_rhs(std::uint64_t q, const FieldElement& Z) {
    const FieldElement d = Z.field().one() + Z;
    if (d.is_zero()) throw InvalidArgument("Z = -1 has no successor");
    return Z.pow(q) / d.pow(q - 1);
}

X0Point::X0Point(std::uint64_t q, std::vector<FieldElement> zcoords) : q_(q), zcoords_(std::move(zcoords)) {
    if (zcoords_.empty()) throw InvalidArgument("an X0 point needs Z_2");
    require_q(q_, zcoords_.front().field());
    for (std::size_t i = 0; i < zcoords_.size(); ++i) {
        if (!zcoords_[i].same_field(zcoords_.front())) throw FieldMismatch("Z coordinates must share one field");
        if ((zcoords_[i] + zcoords_[i].field().one()).is_zero()) throw InvalidArgument("Z_j = -1 is excluded");
        if (i > 0 && !(z_step_lhs(q_, zcoords_[i]) == z_step_rhs(q_, zcoords_[i - 1]))) {
            throw InvalidArgument("Z_" + std::to_string(i + 2) + " does not satisfy the recursion");
        }
    }
}

bool operator==(const X0Point& a, const X0Point& b) { return a.q_ == b.q_ && same_coords(a.zcoords_, b.zcoords_); }
bool operator<(const X0Point& a, const X0Point& b) { return lex_less(a.zcoords_, b.zcoords_); }

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Solutions z != 0 of z^q + z = c in L, sorted.
class ArtinSchreier {
   public:
    ArtinSchreier(std::uint64_t q, const FieldSpec& L) : L_(L), u_(q, L, {L.one(), L.one()}) {}

    std::vector<FieldElement> nonzero_solutions(const FieldElement& c) const {
        auto z = preimages(u_, c, L_);
        z.erase(std::remove_if(z.begin(), z.end(), [](const FieldElement& e) { return e.is_zero(); }), z.end());
        return z;
    }

   private:
    FieldSpec L_;
    LinearizedPoly u_;
};

void extend_into(const TowerPoint& pt, const ArtinSchreier& as, std::vector<TowerPoint>& out) {
    const FieldElement& xn = pt.coords().back();
    for (const auto& z : as.nonzero_solutions(xn.pow(pt.q() + 1))) {
        auto c = pt.coords();
        c.push_back(z / xn);
        out.emplace_back(pt.q(), std::move(c));
    }
}

}  // namespace

std::vector<TowerPoint> extend(const TowerPoint& pt, const FieldSpec& L) {
    std::vector<FieldElement> c;
    for (const auto& x : pt.coords()) c.push_back(embed(x, L));
    const TowerPoint base(pt.q(), std::move(c));
    std::vector<TowerPoint> out;
    extend_into(base, ArtinSchreier(pt.q(), L), out);
    return out;
}

std::vector<TowerPoint> enumerate_xprime(unsigned n, std::uint64_t q, const FieldSpec& L, unsigned workers) {
    if (n < 1) throw InvalidArgument("level must be >= 1");
    require_q(q, L);
    const ArtinSchreier as(q, L);
    auto out = partitioned<TowerPoint>(L.size(), workers, [&](std::uint64_t lo, std::uint64_t hi, auto& part) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            std::vector<TowerPoint> layer{TowerPoint(q, {L.from_index(i)})};
            for (unsigned level = 1; level < n && !layer.empty(); ++level) {
                std::vector<TowerPoint> next;
                for (const auto& pt : layer) extend_into(pt, as, next);
                layer = std::move(next);
            }
            part.insert(part.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
        }
    });
    std::sort(out.begin(), out.end());
    return out;
}

bool is_supersingular_point(const TowerPoint& pt) {
    const std::uint64_t q2 = pt.q() * pt.q();
    if (!in_subfield(pt.x(1), q2)) return false;
    for (const auto& x : pt.coords()) {
        if (!in_subfield(x, q2)) throw InternalError("supersingular point with a coordinate outside GF(q^2)");
    }
    return true;
}

// ---------------------------------------------------------------------------
// Kernel chains

LinearizedPoly kernel_polynomial(const TowerPoint& pt, std::size_t j) {
    if (j < 1 || j > pt.level()) throw InvalidArgument("kernel depth must satisfy 1 <= j <= level");
    LinearizedPoly acc = P(pt.q(), pt.x(1));
    for (std::size_t i = 2; i <= j; ++i) acc = compose(P(pt.q(), pt.x(i)), acc);
    return acc;
}

KernelChainReport check_kernel_chain(const TowerPoint& pt, std::size_t j, std::uint64_t cap) {
    const std::uint64_t q = pt.q();
    const LinearizedPoly uj = kernel_polynomial(pt, j);
    const FieldSpec F = splitting_field(uj, cap);

    KernelChainReport rep;
    rep.depth = j;
    rep.field = F.to_string();
    const auto Gj = kernel_in(uj, F).elements;
    const auto Gprev = j == 1 ? std::vector<FieldElement>{F.zero()} : kernel_in(kernel_polynomial(pt, j - 1), F).elements;
    rep.size = Gj.size();
    std::uint64_t expect = 1;
    for (std::size_t i = 0; i < j; ++i) expect *= q;
    rep.size_ok = rep.size == expect;
    rep.contains_previous = std::includes(Gj.begin(), Gj.end(), Gprev.begin(), Gprev.end());

    const LinearizedPoly tx = t(q, pt.x(1)).embedded_in(F);
    std::vector<FieldElement> image;
    for (const auto& y : Gj) image.push_back(tx(y));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    rep.stable = image == Gprev;

    for (const auto& y : Gj) {
        FieldElement v = y;
        for (std::size_t i = 1; i < j; ++i) v = tx(v);
        if (!v.is_zero()) {
            rep.cyclic = true;
            break;
        }
    }
    return rep;
}

bool verify_swap_identities(const TowerPoint& pt) {
    const std::uint64_t q = pt.q();
    if (!(compose(Q(q, pt.x(1)), P(q, pt.x(1))) == t(q, pt.x(1)))) return false;
    for (std::size_t j = 2; j <= pt.level(); ++j) {
        const LinearizedPoly qp = compose(Q(q, pt.x(j)), P(q, pt.x(j)));
        const LinearizedPoly pq = compose(P(q, pt.x(j - 1)), Q(q, pt.x(j - 1)));
        if (!(qp == pq) || !(qp == t(q, pt.x(j))) || !(pq == t_prime(q, pt.x(j - 1)))) return false;
    }
    return true;
}

std::vector<FieldElement> gauntlet_solutions(const TowerPoint& pt, std::uint64_t cap) {
    const std::size_t n = pt.level();
    if (n < 2) throw InvalidArgument("gauntlet needs level >= 2");
    const LinearizedPoly chain = kernel_polynomial(pt, n - 1);
    const FieldSpec F = solving_field(chain, pt.x(n), cap);
    return preimages(chain, pt.x(n), F);
}

bool verify_gauntlet(const TowerPoint& pt, const FieldElement& y) {
    const std::size_t n = pt.level();
    if (n < 2) throw InvalidArgument("gauntlet needs level >= 2");
    const FieldSpec F = y.field();
    const LinearizedPoly chain = kernel_polynomial(pt, n - 1);
    if (!(chain(y) == embed(pt.x(n), F))) throw InvalidArgument("y does not solve the level equation");
    FieldElement v = t(pt.q(), pt.x(1))(y);
    if (n >= 3) v = kernel_polynomial(pt, n - 2)(v);
    return v == embed(pt.x(n - 1), F) && verify_swap_identities(pt);
}

// ---------------------------------------------------------------------------
// Z-tower

X0Point project_to_X0(const TowerPoint& pt) {
    if (pt.level() < 2) throw InvalidArgument("projection needs level >= 2");
    std::vector<FieldElement> Z;
    for (std::size_t j = 2; j <= pt.level(); ++j) {
        FieldElement v = pt.z(j).pow(pt.q() - 1);
        if ((v + v.field().one()).is_zero()) throw InvalidArgument("degenerate point: Z_" + std::to_string(j) + " = -1");
        Z.push_back(std::move(v));
    }
    return X0Point(pt.q(), std::move(Z));
}

TowerPoint act(const FieldElement& c_in, const TowerPoint& pt) {
    const std::uint64_t q = pt.q();
    if (c_in.is_zero()) throw InvalidArgument("acting element must be nonzero");
    if (!in_subfield(c_in, q * q)) throw InvalidArgument("acting element must lie in GF(q^2)");
    const FieldElement c = embed(c_in, pt.field());
    const FieldElement cbar = c.pow(q);
    std::vector<FieldElement> out;
    for (std::size_t i = 0; i < pt.level(); ++i) out.push_back((i % 2 == 0 ? c : cbar) * pt.coords()[i]);
    return TowerPoint(q, std::move(out));
}

X0Enumeration enumerate_x0(unsigned n, std::uint64_t q, const FieldSpec& L, unsigned workers) {
    if (n < 2) throw InvalidArgument("the Z-tower starts at level 2");
    require_q(q, L);
    const FieldElement minus_one = -L.one();

    // (lhs value, Z) for every admissible Z, sorted for range lookups.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> by_value;
    if (n > 2) {
        by_value.reserve(L.size());
        for (std::uint64_t i = 0; i < L.size(); ++i) {
            if (i == minus_one.index()) continue;
            by_value.emplace_back(z_step_lhs(q, L.from_index(i)).index(), i);
        }
        std::sort(by_value.begin(), by_value.end());
    }

    struct Branch {
        std::vector<X0Point> points;
        std::uint64_t skipped = 0;
    };
    // Seeds are 0..size-1; partitioned() hands out [1, count), so shift by one.
    auto parts = partitioned<Branch>(L.size() + 1, workers, [&](std::uint64_t lo, std::uint64_t hi, auto& part) {
        Branch b;
        for (std::uint64_t s = lo; s < hi; ++s) {
            const std::uint64_t seed = s - 1;
            if (seed == minus_one.index()) {
                ++b.skipped;
                continue;
            }
            std::vector<std::vector<FieldElement>> layer{{L.from_index(seed)}};
            for (unsigned level = 2; level < n && !layer.empty(); ++level) {
                std::vector<std::vector<FieldElement>> next;
                for (const auto& zs : layer) {
                    const FieldElement rhs = z_step_rhs(q, zs.back());
                    if (rhs.is_zero()) ++b.skipped;  // Z = -1 also solves lhs = 0
                    auto lo_it = std::lower_bound(by_value.begin(), by_value.end(), std::make_pair(rhs.index(), std::uint64_t{0}));
                    for (auto it = lo_it; it != by_value.end() && it->first == rhs.index(); ++it) {
                        auto ext = zs;
                        ext.push_back(L.from_index(it->second));
                        next.push_back(std::move(ext));
                    }
                }
                layer = std::move(next);
            }
            for (auto& zs : layer) b.points.emplace_back(q, std::move(zs));
        }
        part.push_back(std::move(b));
    });

    X0Enumeration out;
    for (auto& b : parts) {
        out.skipped_minus_one += b.skipped;
        out.points.insert(out.points.end(), std::make_move_iterator(b.points.begin()),
                          std::make_move_iterator(b.points.end()));
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

std::vector<FieldElement> supersingular_Z_set(std::uint64_t q, const FieldSpec& L) {
    require_q(q, L, 2);
    const unsigned r = *log_base(q, L.characteristic());
    const FieldElement one = L.one();
    std::vector<FieldElement> a, b, c;
    for (const auto& Z : subfield_elements(L, 2 * r)) {
        if (Z.pow(q + 1) == one && !(Z == -one)) a.push_back(Z);
        if (z_step_lhs(q, Z) == one) b.push_back(Z);
        if (Z.pow(q) == (one + Z).pow(q - 1)) c.push_back(Z);
    }
    if (!(a == b) || !(a == c)) throw InternalError("the three descriptions of the supersingular Z set disagree");
    if (a.size() != q) throw InternalError("supersingular Z set does not have q elements");
    return a;
}

bool is_supersingular_x0(const X0Point& pt) {
    const std::uint64_t q = pt.q();
    for (const auto& Z : pt.zcoords()) {
        if (!Z.pow(q + 1).is_one() || (Z + Z.field().one()).is_zero()) return false;
    }
    return true;
}

}  // namespace dtower
