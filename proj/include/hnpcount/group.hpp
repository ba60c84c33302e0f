#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hnpcount/intmat.hpp"
#include "hnpcount/numth.hpp"

namespace hnpcount {

struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& w) : std::runtime_error(w) {}
};

// Group element in exponent coordinates, one entry per cyclic factor,
// reduced modulo that factor's order.
struct Element {
    std::vector<i64> e;
    friend bool operator==(const Element& a, const Element& b) { return a.e == b.e; }
    friend bool operator<(const Element& a, const Element& b) { return a.e < b.e; }
};

// Finite abelian group in a canonical presentation: a product of cyclic
// groups of prime-power order. Factors coprime to the smallest prime divisor
// of the order come first (sorted by prime, then exponent); the factors for
// the smallest prime ("Q-part") come last with exponents ascending, so the
// final generator always has maximal Q-power order.
class FinAbGroup {
public:
    FinAbGroup() = default;

    static FinAbGroup from_factors(const std::vector<i64>& orders) {
        auto [g, perm] = from_factors_tracked(orders);
        (void)perm;
        return g;
    }

    // Also reports where each input primary factor ended up.
    static std::pair<FinAbGroup, std::vector<size_t>> from_factors_tracked(const std::vector<i64>& orders) {
        std::vector<std::pair<std::pair<i64, int>, size_t>> primary;  // ((p, e), input slot)
        size_t slot = 0;
        for (i64 n : orders) {
            if (n < 1) throw std::invalid_argument("group factor must be >= 1");
            for (auto& [p, e] : factorize(n)) primary.push_back({{p, e}, slot});
            ++slot;
        }
        i64 q = 0;
        for (auto& f : primary)
            if (q == 0 || f.first.first < q) q = f.first.first;
        std::stable_sort(primary.begin(), primary.end(), [&](auto& a, auto& b) {
            bool aq = a.first.first == q, bq = b.first.first == q;
            if (aq != bq) return !aq;  // non-Q primes first
            if (a.first.first != b.first.first) return a.first.first < b.first.first;
            return a.first.second < b.first.second;
        });
        FinAbGroup g;
        std::vector<size_t> perm;
        g.q_small_ = q;
        for (auto& f : primary) {
            i64 v = 1;
            for (int i = 0; i < f.first.second; ++i) v *= f.first.first;
            if (f.first.first != q) ++g.q_begin_;
            g.factors_.push_back(v);
            g.primes_.push_back(f.first.first);
            g.exps_.push_back(f.first.second);
            perm.push_back(f.second);
        }
        return {g, perm};
    }

    size_t num_factors() const { return factors_.size(); }
    i64 factor(size_t i) const { return factors_[i]; }
    const std::vector<i64>& factors() const { return factors_; }
    i64 factor_prime(size_t i) const { return primes_[i]; }
    int factor_exp(size_t i) const { return exps_[i]; }
    bool is_trivial() const { return factors_.empty(); }

    i64 order() const {
        i64 o = 1;
        for (i64 f : factors_) o *= f;
        return o;
    }
    i64 exponent() const {
        i64 e = 1;
        for (i64 f : factors_) e = std::lcm(e, f);
        return e;
    }
    i64 q_small() const { return q_small_; }

    // Q-part layout
    size_t q_begin() const { return q_begin_; }
    size_t t() const { return factors_.size() - q_begin_; }
    int a(size_t i) const { return exps_[q_begin_ + i - 1]; }  // 1-based
    bool noncyclic_q_sylow() const { return t() >= 2; }

    Element identity() const { return Element{std::vector<i64>(factors_.size(), 0)}; }

    Element make(std::vector<i64> exps) const {
        if (exps.size() != factors_.size()) throw std::invalid_argument("element size mismatch");
        for (size_t i = 0; i < exps.size(); ++i) {
            exps[i] %= factors_[i];
            if (exps[i] < 0) exps[i] += factors_[i];
        }
        return Element{std::move(exps)};
    }

    Element gen(size_t i) const {
        std::vector<i64> v(factors_.size(), 0);
        v[i] = 1;
        return Element{v};
    }
    // 1-based Q-part generator e_i
    Element e_gen(size_t i) const { return gen(q_begin_ + i - 1); }

    Element mul(const Element& a, const Element& b) const {
        std::vector<i64> v(factors_.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = (a.e[i] + b.e[i]) % factors_[i];
        return Element{v};
    }
    Element inv(const Element& a) const {
        std::vector<i64> v(factors_.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = (factors_[i] - a.e[i]) % factors_[i];
        return Element{v};
    }
    Element pow(const Element& a, i64 n) const {
        std::vector<i64> v(factors_.size());
        for (size_t i = 0; i < v.size(); ++i) {
            i64 r = (a.e[i] * (n % factors_[i])) % factors_[i];
            if (r < 0) r += factors_[i];
            v[i] = r;
        }
        return Element{v};
    }
    i64 order_of(const Element& a) const {
        i64 o = 1;
        for (size_t i = 0; i < factors_.size(); ++i)
            o = std::lcm(o, factors_[i] / std::gcd(factors_[i], a.e[i]));
        return o;
    }
    bool is_identity(const Element& a) const {
        for (i64 x : a.e)
            if (x) return false;
        return true;
    }

    i64 element_index(const Element& a) const {
        i64 idx = 0;
        for (size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + a.e[i];
        return idx;
    }
    Element element_at(i64 idx) const {
        std::vector<i64> v(factors_.size());
        for (size_t i = factors_.size(); i-- > 0;) {
            v[i] = idx % factors_[i];
            idx /= factors_[i];
        }
        return Element{v};
    }
    std::vector<Element> elements(i64 cap = 1 << 20) const {
        if (order() > cap) throw cap_error("group too large to enumerate");
        std::vector<Element> out;
        out.reserve(static_cast<size_t>(order()));
        for (i64 i = 0; i < order(); ++i) out.push_back(element_at(i));
        return out;
    }

    // Invariant factors d1 | d2 | ... of the group.
    std::vector<i64> invariant_factors() const {
        std::map<i64, std::vector<int>> byp;
        for (size_t i = 0; i < factors_.size(); ++i) byp[primes_[i]].push_back(exps_[i]);
        size_t rank = 0;
        for (auto& [p, es] : byp) {
            std::sort(es.rbegin(), es.rend());
            rank = std::max(rank, es.size());
        }
        std::vector<i64> inv(rank, 1);
        for (auto& [p, es] : byp)
            for (size_t i = 0; i < es.size(); ++i) {
                i64 pe = 1;
                for (int j = 0; j < es[i]; ++j) pe *= p;
                inv[i] *= pe;  // slot 0 collects the largest powers
            }
        std::reverse(inv.begin(), inv.end());
        return inv;
    }

    friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.factors_ == b.factors_; }
    friend bool operator!=(const FinAbGroup& a, const FinAbGroup& b) { return !(a == b); }

private:
    std::vector<i64> factors_;
    std::vector<i64> primes_;
    std::vector<int> exps_;
    i64 q_small_ = 0;
    size_t q_begin_ = 0;
};

// F_Q-rank: number of cyclic factors divisible by Q.
inline int q_rank(const FinAbGroup& g, i64 Q) {
    int r = 0;
    for (i64 f : g.factors())
        if (f % Q == 0) ++r;
    return r;
}

// Moebius function on finite abelian groups: multiplicative over coprime
// parts, (-1)^n p^{n(n-1)/2} on (Z/p)^n, zero once any factor order is
// divisible by p^2.
inline i64 moebius(const FinAbGroup& g) {
    std::map<i64, int> count;
    for (size_t i = 0; i < g.num_factors(); ++i) {
        if (g.factor_exp(i) >= 2) return 0;
        count[g.factor_prime(i)]++;
    }
    i64 mu = 1;
    for (auto& [p, n] : count) {
        i64 pw = 1;
        for (i64 i = 0; i < static_cast<i64>(n) * (n - 1) / 2; ++i) pw *= p;
        mu *= (n % 2 ? -1 : 1) * pw;
    }
    return mu;
}

// Subgroup of a FinAbGroup, stored as the Hermite normal form of the lattice
// of exponent vectors (which always contains the relation lattice). The HNF
// is a unique representative, so equal subgroups compare equal.
class Subgroup {
public:
    Subgroup() = default;

    static Subgroup trivial(const FinAbGroup& g) { return from_generators(g, {}); }
    static Subgroup full(const FinAbGroup& g) {
        std::vector<Element> gens;
        for (size_t i = 0; i < g.num_factors(); ++i) gens.push_back(g.gen(i));
        return from_generators(g, gens);
    }

    static Subgroup from_generators(const FinAbGroup& g, const std::vector<Element>& gens) {
        Subgroup s;
        s.ambient_ = g;
        size_t k = g.num_factors();
        if (k == 0) return s;
        Mat rows;
        for (auto& x : gens) rows.push_back(x.e);
        for (size_t i = 0; i < k; ++i) {
            std::vector<i64> r(k, 0);
            r[i] = g.factor(i);
            rows.push_back(r);
        }
        s.basis_ = row_hnf(rows, k);
        return s;
    }

    const FinAbGroup& ambient() const { return ambient_; }
    const Mat& basis() const { return basis_; }

    i64 lattice_index() const {
        i64 d = 1;
        for (size_t i = 0; i < basis_.size(); ++i) d *= basis_[i][i];
        return d;
    }
    i64 order() const { return ambient_.order() / lattice_index(); }

    bool contains(const Element& x) const { return coords_in_lattice(x).has_value(); }

    bool contains_subgroup(const Subgroup& h) const {
        for (size_t i = 0; i < h.basis_.size(); ++i)
            if (!contains(Element{h.basis_[i]})) return false;
        return true;
    }

    std::vector<Element> elements(i64 cap = 1 << 20) const {
        std::vector<Element> out;
        for (auto& x : ambient_.elements(cap))
            if (contains(x)) out.push_back(x);
        return out;
    }

    Subgroup join(const Element& x) const {
        std::vector<Element> gens;
        for (auto& r : basis_) gens.push_back(ambient_.make(r));
        gens.push_back(x);
        return from_generators(ambient_, gens);
    }

    friend Subgroup intersect(const Subgroup& a, const Subgroup& b) {
        if (a.ambient_ != b.ambient_) throw std::invalid_argument("intersect: ambient mismatch");
        std::vector<Element> common;
        for (auto& x : a.elements())
            if (b.contains(x)) common.push_back(x);
        return from_generators(a.ambient_, common);
    }

    // Independent generators h_i with orders o_1 | o_2 | ..., so that the
    // subgroup is the direct sum of the <h_i>.
    std::vector<std::pair<Element, i64>> cyclic_decomposition() const {
        size_t k = ambient_.num_factors();
        std::vector<std::pair<Element, i64>> out;
        if (k == 0) return out;
        Mat C;  // relation rows in basis coordinates
        for (size_t i = 0; i < k; ++i) {
            std::vector<i64> rel(k, 0);
            rel[i] = ambient_.factor(i);
            auto c = solve_row(rel);
            C.push_back(*c);
        }
        auto s = smith(C);
        Mat gens = mat_mul(s.Vinv, basis_);
        for (size_t i = 0; i < k; ++i) {
            i64 ord = s.D[i][i];
            if (ord > 1) out.push_back({ambient_.make(gens[i]), ord});
        }
        return out;
    }

    // The subgroup as a standalone group in canonical primary form, together
    // with generators (as ambient elements) matching its factors.
    std::pair<FinAbGroup, std::vector<Element>> as_group() const {
        std::vector<i64> orders;
        std::vector<Element> gens;
        for (auto& [g, o] : cyclic_decomposition()) {
            // split into primary components
            for (auto& [p, e] : factorize(o)) {
                i64 q = 1;
                for (int i = 0; i < e; ++i) q *= p;
                i64 m = o / q;
                i64 t = 1;
                if (m > 1) {
                    // m * t == 1 mod q
                    for (t = 1; (static_cast<i128>(m) * t) % q != 1; ++t) {}
                }
                gens.push_back(ambient_.pow(g, m * t));
                orders.push_back(q);
            }
        }
        auto [grp, perm] = FinAbGroup::from_factors_tracked(orders);
        std::vector<Element> sorted_gens(gens.size());
        // from_factors_tracked reports the input slot for each output factor
        for (size_t i = 0; i < perm.size(); ++i) sorted_gens[i] = gens[perm[i]];
        return {grp, sorted_gens};
    }

    std::vector<i64> key() const {
        std::vector<i64> k;
        for (auto& r : basis_)
            for (i64 v : r) k.push_back(v);
        return k;
    }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator<(const Subgroup& a, const Subgroup& b) { return a.basis_ < b.basis_; }

private:
    // coordinates of x in the HNF basis, if x lies in the lattice
    std::optional<std::vector<i64>> coords_in_lattice(const Element& x) const { return solve_row(x.e); }

    std::optional<std::vector<i64>> solve_row(std::vector<i64> v) const {
        size_t k = basis_.size();
        std::vector<i64> c(k, 0);
        for (size_t i = 0; i < k; ++i) {
            if (v[i] % basis_[i][i] != 0) return std::nullopt;
            c[i] = v[i] / basis_[i][i];
            for (size_t j = i; j < k; ++j) v[j] -= c[i] * basis_[i][j];
        }
        return c;
    }

    FinAbGroup ambient_;
    Mat basis_;
};

inline int q_rank(const Subgroup& h, i64 Q) {
    int r = 0;
    for (auto& [g, o] : h.cyclic_decomposition())
        if (o % Q == 0) ++r;
    return r;
}

inline bool is_cyclic(const Subgroup& h) { return h.cyclic_decomposition().size() <= 1; }

// Invariant factors of G/H.
inline FinAbGroup quotient_type(const FinAbGroup& g, const Subgroup& h) {
    if (h.ambient() != g) throw std::invalid_argument("quotient_type: subgroup of a different group");
    std::vector<i64> inv;
    for (i64 d : smith_diagonal(h.basis()))
        if (d > 1) inv.push_back(d);
    return FinAbGroup::from_factors(inv);
}

inline i64 moebius_quotient(const FinAbGroup& g, const Subgroup& h) { return moebius(quotient_type(g, h)); }

// Complete duplicate-free subgroup list, deterministic order.
inline std::vector<Subgroup> subgroups(const FinAbGroup& g, i64 candidate_cap = 1000000) {
    auto elems = g.elements(candidate_cap);
    std::map<std::vector<i64>, Subgroup> seen;
    std::vector<Subgroup> queue{Subgroup::trivial(g)};
    seen[queue[0].key()] = queue[0];
    i64 candidates = 0;
    while (!queue.empty()) {
        Subgroup h = queue.back();
        queue.pop_back();
        for (auto& x : elems) {
            if (h.contains(x)) continue;
            if (++candidates > candidate_cap) throw cap_error("subgroup enumeration cap exceeded");
            Subgroup j = h.join(x);
            auto k = j.key();
            if (!seen.count(k)) {
                seen[k] = j;
                queue.push_back(j);
            }
        }
    }
    std::vector<Subgroup> out;
    for (auto& [k, v] : seen) out.push_back(v);
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.key() < b.key();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Exterior square

struct WedgeSquare {
    FinAbGroup group;
    // wedge factor index -> source factor pair (i, j), i < j, 0-based
    std::vector<std::pair<size_t, size_t>> pair_labels;
};

inline WedgeSquare exterior_square(const FinAbGroup& g) {
    std::vector<i64> orders;
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < g.num_factors(); ++i)
        for (size_t j = i + 1; j < g.num_factors(); ++j) {
            i64 d = std::gcd(g.factor(i), g.factor(j));
            if (d > 1) {
                orders.push_back(d);
                pairs.push_back({i, j});
            }
        }
    auto [grp, perm] = FinAbGroup::from_factors_tracked(orders);
    WedgeSquare w;
    w.group = grp;
    w.pair_labels.resize(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) w.pair_labels[i] = pairs[perm[i]];
    return w;
}

inline Element wedge(const FinAbGroup&, const WedgeSquare& w, const Element& x, const Element& y) {
    std::vector<i64> v(w.group.num_factors());
    for (size_t l = 0; l < v.size(); ++l) {
        auto [i, j] = w.pair_labels[l];
        i64 d = w.group.factor(l);
        i64 t = (x.e[i] % d) * (y.e[j] % d) - (x.e[j] % d) * (y.e[i] % d);
        t %= d;
        if (t < 0) t += d;
        v[l] = t;
    }
    return Element{v};
}

// Image of wedge^2 H -> wedge^2 G, generated by pairwise wedges of any
// generating set of H.
inline Subgroup induced_wedge_image(const FinAbGroup& g, const WedgeSquare& w, const Subgroup& h) {
    auto dec = h.cyclic_decomposition();
    std::vector<Element> gens;
    for (size_t a = 0; a < dec.size(); ++a)
        for (size_t b = a + 1; b < dec.size(); ++b)
            gens.push_back(wedge(g, w, dec[a].first, dec[b].first));
    return Subgroup::from_generators(w.group, gens);
}

// ---------------------------------------------------------------------------
// Distinguished subgroups of the canonical presentation

// V = <e_1^{Q^{a_1 - 1}}>, the order-Q subgroup of the first Q-part factor.
inline Element v0_element(const FinAbGroup& g) {
    if (!g.noncyclic_q_sylow()) throw std::invalid_argument("needs non-cyclic Q-Sylow");
    i64 q = g.q_small();
    i64 pw = 1;
    for (int i = 0; i < g.a(1) - 1; ++i) pw *= q;
    return g.pow(g.e_gen(1), pw);
}

// L_j = <M-part, e_1, ..., e_{j-1}, e_j^Q, e_{j+1}, ..., e_t>
inline Subgroup index_q_subgroup(const FinAbGroup& g, size_t j) {
    if (!g.noncyclic_q_sylow()) throw std::invalid_argument("needs non-cyclic Q-Sylow");
    if (j < 1 || j > g.t()) throw std::invalid_argument("index out of range");
    std::vector<Element> gens;
    for (size_t i = 0; i < g.q_begin(); ++i) gens.push_back(g.gen(i));
    for (size_t i = 1; i <= g.t(); ++i)
        gens.push_back(i == j ? g.pow(g.e_gen(i), g.q_small()) : g.e_gen(i));
    return Subgroup::from_generators(g, gens);
}

// L = <M, e_1, ..., e_{t-1}, e_t^Q>
inline Subgroup standard_L(const FinAbGroup& g) { return index_q_subgroup(g, g.t()); }

// ---------------------------------------------------------------------------
// W-partition and the pairing between W_1 and W_2

struct WPartition {
    std::vector<Subgroup> W, W1, W2;
};

inline WPartition w_partition(const FinAbGroup& g, const Subgroup& l) {
    WPartition out;
    int bg = q_rank(g, g.q_small());
    for (auto& h : subgroups(g)) {
        if (q_rank(h, g.q_small()) != bg) continue;
        if (moebius_quotient(g, h) == 0) continue;
        out.W.push_back(h);
        if (l.contains_subgroup(h))
            out.W2.push_back(h);
        else
            out.W1.push_back(h);
    }
    return out;
}

inline bool in_W(const FinAbGroup& g, const Subgroup& h) {
    return q_rank(h, g.q_small()) == q_rank(g, g.q_small()) && moebius_quotient(g, h) != 0;
}

inline Subgroup pairing_phi(const FinAbGroup& g, const Subgroup& l, const Subgroup& h) {
    if (!in_W(g, h) || l.contains_subgroup(h)) throw std::invalid_argument("pairing_phi: H not in W1");
    return intersect(h, l);
}

// number of elements of order dividing Q in L/J
inline i64 q_torsion_of_quotient(const FinAbGroup& g, const Subgroup& l, const Subgroup& j, i64 Q) {
    i64 n = 0;
    for (auto& x : l.elements())
        if (j.contains(g.pow(x, Q))) ++n;
    return n / j.order();
}

inline std::vector<Subgroup> fiber(const FinAbGroup& g, const Subgroup& l, const Subgroup& j) {
    if (!in_W(g, j) || !l.contains_subgroup(j)) throw std::invalid_argument("fiber: J not in W2");
    Element et = g.e_gen(g.t());
    std::set<std::vector<i64>> seen;
    std::vector<Subgroup> out;
    for (auto& x : l.elements()) {
        if (!j.contains(g.pow(x, g.q_small()))) continue;
        Subgroup h = j.join(g.mul(et, x));
        auto k = h.key();
        if (seen.insert(k).second) out.push_back(h);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// View `inner` (contained in `outer`) as a subgroup of the standalone group
// outer.as_group(). Brute-force coordinate lookup; fine for small subgroups.
inline std::pair<FinAbGroup, Subgroup> relative_subgroup(const Subgroup& outer, const Subgroup& inner) {
    if (!outer.contains_subgroup(inner)) throw std::invalid_argument("relative_subgroup: not contained");
    auto [grp, gens] = outer.as_group();
    const FinAbGroup& amb = outer.ambient();
    std::map<std::vector<i64>, Element> lookup;
    for (auto& x : grp.elements()) {
        Element image = amb.identity();
        for (size_t i = 0; i < gens.size(); ++i) image = amb.mul(image, amb.pow(gens[i], x.e[i]));
        lookup[image.e] = x;
    }
    std::vector<Element> inner_gens;
    for (auto& y : inner.elements()) inner_gens.push_back(lookup.at(y.e));
    return {grp, Subgroup::from_generators(grp, inner_gens)};
}

// ---------------------------------------------------------------------------
// Maximal-subgroup reduction for the exterior square

struct UpsilonReduction {
    std::vector<Element> gens;  // e_1 ... e_t, orders Q, ..., Q, Q^a
    size_t i = 0, j = 0;        // 1-based Q-part indices
};

// Requires G of shape M x (Z/Q)^{t-1} x Z/Q^a and Upsilon maximal proper in
// wedge^2 G. Returns generators of G/M and indices (i, j) such that
// {g : e_i wedge g in Upsilon} is contained in <M, e_1, ..., e_j^Q, ..., e_t>.
inline UpsilonReduction upsilon_reduction(const FinAbGroup& g, const WedgeSquare& w, const Subgroup& up) {
    if (!g.noncyclic_q_sylow()) throw std::invalid_argument("upsilon_reduction: needs t >= 2");
    size_t t = g.t();
    for (size_t i = 1; i <= t - 1; ++i)
        if (g.a(i) != 1) throw std::invalid_argument("upsilon_reduction: needs a_1 = ... = a_{t-1} = 1");
    if (up.ambient() != w.group) throw std::invalid_argument("upsilon_reduction: Upsilon not in wedge^2 G");
    i64 Q = g.q_small();
    if (up.order() * Q != w.group.order())
        throw std::invalid_argument("upsilon_reduction: Upsilon not maximal proper");

    // Case 1: some wedge of two order-Q basis vectors escapes Upsilon.
    for (size_t k = 1; k <= t - 1; ++k)
        for (size_t l = k + 1; l <= t - 1; ++l) {
            Element wk = wedge(g, w, g.e_gen(k), g.e_gen(l));
            if (up.contains(wk)) continue;
            Element eps = g.e_gen(k);
            // L_i = {x : eps wedge x in Upsilon}
            std::vector<Element> li_elems;
            for (auto& x : g.elements())
                if (up.contains(wedge(g, w, eps, x))) li_elems.push_back(x);
            Subgroup li = Subgroup::from_generators(g, li_elems);
            // complement generator of order Q outside L_i
            Element b;
            bool found = false;
            for (auto& x : g.elements())
                if (g.order_of(x) == Q && !li.contains(x)) { b = x; found = true; break; }
            if (!found) throw std::runtime_error("upsilon_reduction: no complement generator");
            // Q-part generators of L_i with eps substituted for a suitable
            // order-Q generator it hits with unit coefficient
            std::vector<std::pair<Element, i64>> qgens;
            {
                auto [hgrp, hgens] = li.as_group();
                for (size_t idx = 0; idx < hgrp.num_factors(); ++idx)
                    if (hgrp.factor_prime(idx) == Q) qgens.push_back({hgens[idx], hgrp.factor(idx)});
            }
            // coordinates of eps over qgens by brute force
            std::vector<i64> radix;
            for (auto& [ge, o] : qgens) radix.push_back(o);
            std::vector<i64> coord(radix.size(), 0);
            bool matched = false;
            while (true) {
                Element acc = g.identity();
                for (size_t idx = 0; idx < qgens.size(); ++idx)
                    acc = g.mul(acc, g.pow(qgens[idx].first, coord[idx]));
                if (acc == eps) { matched = true; break; }
                size_t pos = 0;
                while (pos < radix.size() && ++coord[pos] == radix[pos]) coord[pos++] = 0;
                if (pos == radix.size()) break;
            }
            if (!matched) throw std::runtime_error("upsilon_reduction: eps not in Q-part of L_i");
            size_t swap_idx = qgens.size();
            for (size_t idx = 0; idx < qgens.size(); ++idx)
                if (qgens[idx].second == Q && coord[idx] % Q != 0) { swap_idx = idx; break; }
            if (swap_idx == qgens.size()) throw std::runtime_error("upsilon_reduction: eps is a Q-th power");
            UpsilonReduction res;
            res.gens.push_back(b);
            res.gens.push_back(eps);
            std::vector<std::pair<Element, i64>> rest;
            for (size_t idx = 0; idx < qgens.size(); ++idx)
                if (idx != swap_idx) rest.push_back(qgens[idx]);
            std::stable_sort(rest.begin(), rest.end(),
                             [](auto& a, auto& b2) { return a.second < b2.second; });
            for (auto& [ge, o] : rest) res.gens.push_back(ge);
            res.i = 2;
            res.j = 1;
            return res;
        }

    // Case 2: wedge^2 of the order-Q block lies inside Upsilon.
    for (size_t i = 1; i <= t - 1; ++i) {
        Element wi = wedge(g, w, g.e_gen(i), g.e_gen(t));
        if (up.contains(wi)) continue;
        UpsilonReduction res;
        for (size_t k = 1; k <= t; ++k) res.gens.push_back(g.e_gen(k));
        res.i = i;
        res.j = t;
        return res;
    }
    throw std::runtime_error("upsilon_reduction: Upsilon contains all basis wedges");
}

// ---------------------------------------------------------------------------
// Group spec grammar: "C<n>" factors joined by "x", e.g. "C2xC4".

inline FinAbGroup parse_group_spec(const std::string& spec) {
    std::vector<i64> orders;
    size_t pos = 0;
    while (pos < spec.size()) {
        if (spec[pos] != 'C' && spec[pos] != 'c')
            throw std::invalid_argument("bad group spec '" + spec + "': expected C<n>");
        ++pos;
        size_t start = pos;
        while (pos < spec.size() && isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("bad group spec '" + spec + "'");
        i64 n = std::stoll(spec.substr(start, pos - start));
        if (n < 2) throw std::invalid_argument("bad group spec '" + spec + "': factors must be >= 2");
        orders.push_back(n);
        if (pos < spec.size()) {
            if (spec[pos] != 'x' && spec[pos] != 'X')
                throw std::invalid_argument("bad group spec '" + spec + "': expected 'x'");
            ++pos;
        }
    }
    if (orders.empty()) throw std::invalid_argument("empty group spec");
    return FinAbGroup::from_factors(orders);
}

inline std::string group_spec_string(const FinAbGroup& g) {
    if (g.is_trivial()) return "C1";
    std::string s;
    for (size_t i = 0; i < g.num_factors(); ++i) {
        if (i) s += "x";
        s += "C" + std::to_string(g.factor(i));
    }
    return s;
}

// Subgroup spec over the canonical factor basis: comma-separated generators,
// each a '*'-product of terms "e<idx>" or "e<idx>^<exp>" (1-based).
inline Subgroup parse_subgroup_spec(const FinAbGroup& g, const std::string& spec) {
    std::vector<Element> gens;
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < spec.size() && spec[pos] == ' ') ++pos; };
    while (pos < spec.size()) {
        Element cur = g.identity();
        while (true) {
            skip_ws();
            if (pos >= spec.size() || spec[pos] != 'e')
                throw std::invalid_argument("bad subgroup spec '" + spec + "'");
            ++pos;
            size_t start = pos;
            while (pos < spec.size() && isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
            if (start == pos) throw std::invalid_argument("bad subgroup spec '" + spec + "'");
            size_t idx = static_cast<size_t>(std::stoll(spec.substr(start, pos - start)));
            if (idx < 1 || idx > g.num_factors())
                throw std::invalid_argument("subgroup spec index out of range in '" + spec + "'");
            i64 exp = 1;
            if (pos < spec.size() && spec[pos] == '^') {
                ++pos;
                size_t es = pos;
                if (pos < spec.size() && spec[pos] == '-') ++pos;
                while (pos < spec.size() && isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
                if (es == pos) throw std::invalid_argument("bad exponent in '" + spec + "'");
                exp = std::stoll(spec.substr(es, pos - es));
            }
            cur = g.mul(cur, g.pow(g.gen(idx - 1), exp));
            skip_ws();
            if (pos < spec.size() && spec[pos] == '*') { ++pos; continue; }
            break;
        }
        gens.push_back(cur);
        if (pos < spec.size()) {
            if (spec[pos] != ',') throw std::invalid_argument("bad subgroup spec '" + spec + "'");
            ++pos;
        }
    }
    return Subgroup::from_generators(g, gens);
}

// All abelian groups of order 2..max_order (canonical form, deterministic order).
inline std::vector<FinAbGroup> all_abelian_groups(i64 max_order) {
    std::vector<FinAbGroup> out;
    for (i64 n = 2; n <= max_order; ++n) {
        std::vector<std::vector<std::vector<int>>> parts;  // per prime: list of partitions
        auto fac = factorize(n);
        std::vector<std::vector<std::vector<int>>> prime_parts;
        for (auto& [p, e] : fac) {
            (void)p;
            std::vector<std::vector<int>> ps;
            std::vector<int> cur;
            // partitions of e, non-increasing
            std::function<void(int, int)> rec = [&](int rem, int maxpart) {
                if (rem == 0) { ps.push_back(cur); return; }
                for (int x = std::min(rem, maxpart); x >= 1; --x) {
                    cur.push_back(x);
                    rec(rem - x, x);
                    cur.pop_back();
                }
            };
            rec(e, e);
            prime_parts.push_back(ps);
        }
        std::vector<size_t> pick(prime_parts.size(), 0);
        while (true) {
            std::vector<i64> factors;
            for (size_t i = 0; i < fac.size(); ++i)
                for (int e : prime_parts[i][pick[i]]) {
                    i64 pe = 1;
                    for (int j = 0; j < e; ++j) pe *= fac[i].first;
                    factors.push_back(pe);
                }
            out.push_back(FinAbGroup::from_factors(factors));
            size_t pos = 0;
            while (pos < pick.size() && ++pick[pos] == prime_parts[pos].size()) pick[pos++] = 0;
            if (pos == pick.size()) break;
        }
    }
    return out;
}

} // namespace hnpcount
