#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hnpcount/group.hpp"
#include "hnpcount/unit_group.hpp"

namespace hnpcount {

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& w) : std::runtime_error(w) {}
};

// Work budget threaded through enumerations; throws instead of running away.
struct Budget {
    i64 remaining = 2'000'000'000;
    void tick(i64 n = 1) {
        remaining -= n;
        if (remaining < 0) throw budget_error("work budget exhausted");
    }
};

// ---------------------------------------------------------------------------
// Characters of a finite abelian group, as exponent tuples over its factors.

inline std::vector<std::vector<i64>> dual_characters(const FinAbGroup& t) {
    std::vector<std::vector<i64>> out;
    i64 n = t.order();
    out.reserve(static_cast<size_t>(n));
    for (i64 idx = 0; idx < n; ++idx) out.push_back(t.element_at(idx).e);
    return out;
}

// Order of the root of unity psi(x) = prod_i zeta_{o_i}^{psi_i x_i}.
inline i64 char_value_order(const FinAbGroup& t, const std::vector<i64>& psi, const Element& x) {
    i64 N = t.exponent();
    i64 num = 0;
    for (size_t i = 0; i < psi.size(); ++i) {
        i64 o = t.factor(i);
        num = (num + (psi[i] * x.e[i] % o) * (N / o)) % N;
    }
    return N / std::gcd(N, num);
}

// ---------------------------------------------------------------------------
// Multiplication table and subgroup bitmasks for small targets (order <= 64).

struct GroupTable {
    FinAbGroup t;
    int n = 0;
    std::vector<uint16_t> mul;
    uint64_t full = 0;

    explicit GroupTable(const FinAbGroup& grp) : t(grp) {
        if (grp.order() > 64) throw cap_error("enumeration target exceeds 64 elements");
        n = static_cast<int>(grp.order());
        mul.resize(static_cast<size_t>(n) * n);
        for (i64 a = 0; a < n; ++a)
            for (i64 b = 0; b < n; ++b)
                mul[static_cast<size_t>(a) * n + b] =
                    static_cast<uint16_t>(t.element_index(t.mul(t.element_at(a), t.element_at(b))));
        full = n == 64 ? ~0ULL : (1ULL << n) - 1;
    }

    uint64_t closure(uint64_t seed) const {
        uint64_t cur = seed | 1;  // identity has index 0
        while (true) {
            uint64_t next = cur;
            for (int a = 0; a < n; ++a) {
                if (!(cur >> a & 1)) continue;
                for (int b = a; b < n; ++b) {
                    if (!(cur >> b & 1)) continue;
                    next |= 1ULL << mul[static_cast<size_t>(a) * n + b];
                }
            }
            if (next == cur) return cur;
            cur = next;
        }
    }

    uint64_t product(uint64_t A, uint64_t B) const {
        // product of two subgroups of an abelian group is a subgroup
        uint64_t out = 0;
        for (int a = 0; a < n; ++a) {
            if (!(A >> a & 1)) continue;
            for (int b = 0; b < n; ++b)
                if (B >> b & 1) out |= 1ULL << mul[static_cast<size_t>(a) * n + b];
        }
        return out;
    }

    uint64_t mask_of(const std::vector<Element>& gens) const {
        uint64_t seed = 1;
        for (auto& g : gens) seed |= 1ULL << t.element_index(g);
        return closure(seed);
    }
};

// ---------------------------------------------------------------------------
// Extensions: homomorphisms (Z/mZ)^* -> T of exact conductor m, stored by
// CRT block. The discriminant is the conductor-discriminant product over the
// dual of the image.

struct LocalHomBlock {
    UnitBlock block;
    std::vector<Element> images;  // one per block generator
};

struct LocalSymbolRec {
    i64 p = 0;
    Subgroup inertia;
    Element frobenius;
};

struct GExtension {
    FinAbGroup target;
    i64 modulus = 1;
    std::vector<LocalHomBlock> locals;  // ramified blocks, primes ascending
    i64 discriminant = 1;
    i64 phi_target = 1;  // conductor-discriminant product over the full dual of `target`
    bool surjective = false;
    Element conjugation;
    std::vector<LocalSymbolRec> local_symbols;

    std::vector<i64> image_encoding() const {
        std::vector<i64> v;
        for (auto& lb : locals)
            for (auto& im : lb.images)
                for (i64 x : im.e) v.push_back(x);
        return v;
    }
};

// Image of an integer a (coprime to the block prime) under one local block.
// Uses a small dlog in the image subgroup rather than a full dlog mod p^k.
inline Element block_eval(const FinAbGroup& t, const LocalHomBlock& lb, i64 a) {
    const UnitBlock& b = lb.block;
    a %= b.pk;
    if (a < 0) a += b.pk;
    if (std::gcd(a, b.pk) != 1) throw std::invalid_argument("block_eval: not coprime");
    if (b.p == 2 && b.k == 2) return a == 3 ? lb.images[0] : t.identity();
    if (b.p == 2 && b.k >= 3) {
        Element out = t.identity();
        i64 r = a;
        if (r % 4 == 3) {
            out = lb.images[0];
            r = b.pk - r;
        }
        i64 half_order = b.pk / 4;  // order of 5 mod 2^k
        i64 dw = t.order_of(lb.images[1]);
        if (dw > 1) {
            i64 step = half_order / dw;
            i64 tt = powmod(5, step, b.pk);
            i64 rp = powmod(r, step, b.pk);
            i64 j = 0, cur = 1;
            while (cur != rp) {
                cur = mulmod(cur, tt, b.pk);
                if (++j > dw) throw std::logic_error("block_eval: dlog failed");
            }
            out = t.mul(out, t.pow(lb.images[1], j));
        }
        return out;
    }
    // odd prime
    i64 d = t.order_of(lb.images[0]);
    if (d == 1) return t.identity();
    i64 phi = euler_phi_prime_power(b.p, b.k);
    i64 step = phi / d;
    i64 h = powmod(b.gen_residues[0], step, b.pk);
    i64 ap = powmod(a, step, b.pk);
    i64 j = 0, cur = 1;
    while (cur != ap) {
        cur = mulmod(cur, h, b.pk);
        if (++j > d) throw std::logic_error("block_eval: dlog failed");
    }
    return t.pow(lb.images[0], j);
}

// Image of a (coprime to the modulus) under the full extension.
inline Element extension_eval(const GExtension& e, i64 a) {
    Element out = e.target.identity();
    for (auto& lb : e.locals) out = e.target.mul(out, block_eval(e.target, lb, a));
    return out;
}

inline std::vector<Element> all_images(const GExtension& e) {
    std::vector<Element> v;
    for (auto& lb : e.locals)
        for (auto& im : lb.images) v.push_back(im);
    return v;
}

inline Subgroup image_subgroup(const GExtension& e) {
    return Subgroup::from_generators(e.target, all_images(e));
}

// Conductor from the stored blocks (exact levels by construction, but this
// recomputes it from the images, for oracles and the primitivity filter).
inline i64 conductor_of(const FinAbGroup& t, const std::vector<LocalHomBlock>& locals) {
    i64 c = 1;
    for (auto& lb : locals) {
        std::vector<i64> ords;
        for (auto& im : lb.images) ords.push_back(t.order_of(im));
        int ce = block_conductor_exponent(lb.block, ords);
        i64 pc = 1;
        for (int i = 0; i < ce; ++i) pc *= lb.block.p;
        c *= pc;
    }
    return c;
}

// Conductor of the character psi composed with the extension; psi is given by
// exponents over the factors of `t`.
inline i64 char_conductor(const FinAbGroup& t, const GExtension& e, const std::vector<i64>& psi) {
    i64 c = 1;
    for (auto& lb : e.locals) {
        std::vector<i64> ords;
        for (auto& im : lb.images) ords.push_back(char_value_order(t, psi, im));
        int ce = block_conductor_exponent(lb.block, ords);
        for (int i = 0; i < ce; ++i) c *= lb.block.p;
    }
    return c;
}

// Product of char_conductor over all characters of `dual_of` (a group whose
// elements index characters), evaluated through a coordinate map.
// Used for both the discriminant (dual of the image) and Phi_T (full dual).
inline constexpr i64 kHugeConductorProduct = INT64_MAX;  // saturation sentinel

inline i64 phi_of_target(const FinAbGroup& t, const GExtension& e) {
    i128 prod = 1;
    for (auto& psi : dual_characters(t)) {
        prod *= char_conductor(t, e, psi);
        if (prod > static_cast<i128>(4e18)) return kHugeConductorProduct;
    }
    return static_cast<i64>(prod);
}

// Discriminant: conductor-discriminant product over the dual of the image.
inline i64 discriminant_of(const FinAbGroup& t, const GExtension& e) {
    auto im = image_subgroup(e);
    auto [igrp, igens] = im.as_group();
    // coordinates of each image element in the image group, by table lookup
    std::map<std::vector<i64>, Element> coords;
    for (auto& x : igrp.elements()) {
        Element y = t.identity();
        for (size_t i = 0; i < igens.size(); ++i) y = t.mul(y, t.pow(igens[i], x.e[i]));
        coords[y.e] = x;
    }
    i128 prod = 1;
    for (auto& psi : dual_characters(igrp)) {
        i64 c = 1;
        for (auto& lb : e.locals) {
            std::vector<i64> ords;
            for (auto& im2 : lb.images) ords.push_back(char_value_order(igrp, psi, coords.at(im2.e)));
            int ce = block_conductor_exponent(lb.block, ords);
            for (int i = 0; i < ce; ++i) c *= lb.block.p;
        }
        prod *= c;
        if (prod > static_cast<i128>(4e18)) return kHugeConductorProduct;
    }
    return static_cast<i64>(prod);
}

inline void finalize_extension(GExtension& e) {
    e.modulus = 1;
    for (auto& lb : e.locals) e.modulus *= lb.block.pk;
    e.discriminant = discriminant_of(e.target, e);
    e.phi_target = phi_of_target(e.target, e);
    e.surjective = image_subgroup(e).order() == e.target.order();
    e.conjugation = e.target.identity();
    for (auto& lb : e.locals)
        e.conjugation = e.target.mul(e.conjugation, block_eval(e.target, lb, lb.block.pk - 1));
    e.local_symbols.clear();
    for (size_t i = 0; i < e.locals.size(); ++i) {
        LocalSymbolRec s;
        s.p = e.locals[i].block.p;
        s.inertia = Subgroup::from_generators(e.target, e.locals[i].images);
        s.frobenius = e.target.identity();
        for (size_t j = 0; j < e.locals.size(); ++j)
            if (j != i)
                s.frobenius = e.target.mul(s.frobenius, block_eval(e.target, e.locals[j], s.p));
        e.local_symbols.push_back(std::move(s));
    }
}

// Decomposition data at any prime: inertia trivial off the conductor.
inline LocalSymbolRec local_symbol(const GExtension& e, i64 p) {
    for (auto& s : e.local_symbols)
        if (s.p == p) return s;
    LocalSymbolRec s;
    s.p = p;
    s.inertia = Subgroup::trivial(e.target);
    s.frobenius = extension_eval(e, p);
    return s;
}

inline Subgroup decomposition_subgroup(const GExtension& e, const LocalSymbolRec& s) {
    auto dec = s.inertia.cyclic_decomposition();
    std::vector<Element> gens;
    for (auto& [g, o] : dec) gens.push_back(g);
    gens.push_back(s.frobenius);
    return Subgroup::from_generators(e.target, gens);
}

// ---------------------------------------------------------------------------
// Brute-force hom enumeration for a fixed modulus (oracle-grade path).

inline std::vector<GExtension> homs(i64 m, const FinAbGroup& t, bool only_surjective,
                                    bool only_primitive, Budget* budget = nullptr) {
    UnitGroupStructure u = unit_group(m);
    size_t k = u.gen_orders.size();
    std::vector<std::vector<Element>> choices(k);
    for (size_t i = 0; i < k; ++i)
        for (auto& x : t.elements())
            if (t.is_identity(t.pow(x, u.gen_orders[i]))) choices[i].push_back(x);
    std::vector<size_t> pick(k, 0);
    std::vector<GExtension> out;
    while (true) {
        if (budget) budget->tick();
        std::vector<LocalHomBlock> raw;
        size_t gi = 0;
        for (auto& b : u.blocks) {
            LocalHomBlock lb;
            lb.block = b;
            for (size_t g = 0; g < b.gen_residues.size(); ++g) lb.images.push_back(choices[gi][pick[gi]]), ++gi;
            if (!lb.images.empty()) raw.push_back(lb);
        }
        i64 cond = conductor_of(t, raw);
        if (!only_primitive || cond == m) {
            // canonical storage: re-express each block at its exact level, with
            // images of the exact-level generators evaluated through the hom
            GExtension e;
            e.target = t;
            for (auto& lb : raw) {
                std::vector<i64> ords;
                for (auto& im : lb.images) ords.push_back(t.order_of(im));
                int ce = block_conductor_exponent(lb.block, ords);
                if (ce == 0) continue;
                LocalHomBlock nb;
                nb.block = unit_block(lb.block.p, ce);
                for (i64 gr : nb.block.gen_residues) nb.images.push_back(block_eval(t, lb, gr));
                e.locals.push_back(std::move(nb));
            }
            finalize_extension(e);
            if (!(only_surjective && !e.surjective)) out.push_back(std::move(e));
        }
        size_t pos = 0;
        while (pos < k && ++pick[pos] == choices[pos].size()) pick[pos++] = 0;
        if (pos == k || k == 0) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conductor-factored enumeration: all homs into T with Phi_T(phi)^root_exp <= bound,
// visiting each exact-conductor hom once, built from per-prime local blocks.

namespace detail {

struct LocalOption {
    LocalHomBlock lb;
    i64 weight = 1;  // p^{sum over psi in dual(T) of the local conductor exponent}
    uint64_t mask = 1;
};

struct PrimeOptions {
    i64 p = 0;
    i64 minw = 0;
    std::vector<LocalOption> opts;
};

inline i64 option_weight(const FinAbGroup& t, const std::vector<std::vector<i64>>& duals,
                         const LocalHomBlock& lb, i64 cap) {
    i64 total_exp = 0;
    for (auto& psi : duals) {
        std::vector<i64> ords;
        for (auto& im : lb.images) ords.push_back(char_value_order(t, psi, im));
        total_exp += block_conductor_exponent(lb.block, ords);
    }
    return pow_capped(lb.block.p, static_cast<int>(total_exp), cap);
}

// all local blocks at (p, k) with exact conductor exponent k and weight <= cap
inline std::vector<LocalOption> options_at(const FinAbGroup& t, const GroupTable& table,
                                           const std::vector<std::vector<i64>>& duals, i64 p, int k,
                                           i64 cap) {
    std::vector<LocalOption> out;
    UnitBlock b = unit_block(p, k);
    if (b.gen_residues.empty()) return out;
    auto elems = t.elements();
    auto try_push = [&](std::vector<Element> images) {
        std::vector<i64> ords;
        for (auto& im : images) ords.push_back(t.order_of(im));
        if (block_conductor_exponent(b, ords) != k) return;
        LocalOption o;
        o.lb.block = b;
        o.lb.images = std::move(images);
        o.weight = option_weight(t, duals, o.lb, cap);
        if (o.weight > cap) return;
        o.mask = table.mask_of(o.lb.images);
        out.push_back(std::move(o));
    };
    if (p == 2 && k >= 3) {
        for (auto& u : elems) {
            if (!t.is_identity(t.pow(u, 2))) continue;
            for (auto& w : elems)
                if (t.is_identity(t.pow(w, b.gen_orders[1]))) try_push({u, w});
        }
    } else {
        for (auto& y : elems)
            if (t.is_identity(t.pow(y, b.gen_orders[0]))) try_push({y});
    }
    std::sort(out.begin(), out.end(), [&](const LocalOption& a, const LocalOption& c) {
        if (a.weight != c.weight) return a.weight < c.weight;
        std::vector<i64> ea, ec;
        for (auto& im : a.lb.images)
            for (i64 v : im.e) ea.push_back(v);
        for (auto& im : c.lb.images)
            for (i64 v : im.e) ec.push_back(v);
        return ea < ec;
    });
    return out;
}

} // namespace detail

// Largest W with W^e <= bound.
inline i64 integer_root(i64 bound, int e) {
    if (e == 1) return bound;
    i64 r = static_cast<i64>(std::pow(static_cast<double>(bound), 1.0 / e));
    while (!pow_le(r, e, bound)) --r;
    while (pow_le(r + 1, e, bound)) ++r;
    return r;
}

// Enumerate every hom (Z/mZ)^* -> T (each once, by exact conductor) with
// Phi_T(phi)^root_exp <= bound. The callback receives a finalized GExtension.
inline void enumerate_homs_by_phi(const FinAbGroup& t, i64 bound, int root_exp, bool surjective_only,
                                  const std::function<void(const GExtension&)>& cb,
                                  Budget* budget = nullptr) {
    if (bound < 1) return;
    i64 limit = integer_root(bound, root_exp);
    GroupTable table(t);
    auto duals = dual_characters(t);
    i64 expT = t.exponent();

    std::vector<detail::PrimeOptions> primes;
    auto add_prime = [&](i64 p, int kmin, int kmax) {
        // one entry per prime, options pooled across all exact levels
        detail::PrimeOptions po;
        po.p = p;
        for (int k = kmin; k <= kmax; ++k)
            for (auto& o : detail::options_at(t, table, duals, p, k, limit)) po.opts.push_back(o);
        if (po.opts.empty()) return;
        std::sort(po.opts.begin(), po.opts.end(),
                  [](const detail::LocalOption& a, const detail::LocalOption& b) {
                      if (a.weight != b.weight) return a.weight < b.weight;
                      if (a.lb.block.k != b.lb.block.k) return a.lb.block.k < b.lb.block.k;
                      std::vector<i64> ea, eb;
                      for (auto& im : a.lb.images)
                          for (i64 v : im.e) ea.push_back(v);
                      for (auto& im : b.lb.images)
                          for (i64 v : im.e) eb.push_back(v);
                      return ea < eb;
                  });
        po.minw = po.opts.front().weight;
        primes.push_back(std::move(po));
    };
    if (expT % 2 == 0) add_prime(2, 2, 2 + static_cast<int>(valuation(expT, 2)));
    // odd primes: tame level 1 everywhere, higher levels only for p | exp(T).
    // The cheapest tame exponent is |T|(1 - 1/q0), q0 the smallest prime of exp(T).
    i64 q0 = t.is_trivial() ? 2 : factorize(expT)[0].first;
    int e0 = static_cast<int>(t.order() - t.order() / q0);
    if (!t.is_trivial() && e0 > 0) {
        for (i64 p = 3; pow_le(p, e0, limit); p += 2) {
            if (!is_prime(p)) continue;
            if (budget) budget->tick();
            int kmax = expT % p == 0 ? 1 + static_cast<int>(valuation(expT, p)) : 1;
            add_prime(p, 1, kmax);
        }
    }
    std::sort(primes.begin(), primes.end(), [](const detail::PrimeOptions& a, const detail::PrimeOptions& b) {
        if (a.minw != b.minw) return a.minw < b.minw;
        return a.p < b.p;
    });

    std::vector<const detail::LocalOption*> chosen;
    std::function<void(size_t, i64, uint64_t)> rec = [&](size_t idx, i64 w, uint64_t mask) {
        if (budget) budget->tick();
        if (!surjective_only || mask == table.full) {
            GExtension e;
            e.target = t;
            for (auto* o : chosen) e.locals.push_back(o->lb);
            std::sort(e.locals.begin(), e.locals.end(),
                      [](const LocalHomBlock& a, const LocalHomBlock& b) { return a.block.p < b.block.p; });
            finalize_extension(e);
            cb(e);
        }
        for (size_t i2 = idx; i2 < primes.size(); ++i2) {
            if (w > limit / primes[i2].minw) break;  // sorted by minw
            for (auto& o : primes[i2].opts) {
                if (o.weight > limit / w) break;  // options sorted by weight
                if (w * o.weight > limit) continue;
                chosen.push_back(&o);
                rec(i2 + 1, w * o.weight, table.product(mask, o.mask));
                chosen.pop_back();
            }
        }
    };
    rec(0, 1, 1);
}

// All surjective homs onto G with discriminant <= B, sorted by
// (discriminant, modulus, image encoding).
inline std::vector<GExtension> enumerate(const FinAbGroup& g, i64 bound, Budget* budget = nullptr) {
    std::vector<GExtension> out;
    enumerate_homs_by_phi(g, bound, 1, true, [&](const GExtension& e) { out.push_back(e); }, budget);
    std::sort(out.begin(), out.end(), [](const GExtension& a, const GExtension& b) {
        if (a.discriminant != b.discriminant) return a.discriminant < b.discriminant;
        if (a.modulus != b.modulus) return a.modulus < b.modulus;
        return a.image_encoding() < b.image_encoding();
    });
    return out;
}

// All primitive surjective homs with the exact discriminant, conductor
// supported on the given primes.
inline std::vector<GExtension> find_by_discriminant(const FinAbGroup& g, i64 delta,
                                                    const std::vector<i64>& primes_allowed,
                                                    Budget* budget = nullptr) {
    std::vector<GExtension> out;
    if (delta < 1) return out;
    auto fac = factorize(delta);
    for (auto& [p, e] : fac) {
        (void)e;
        if (std::find(primes_allowed.begin(), primes_allowed.end(), p) == primes_allowed.end())
            return out;  // a ramified prime outside the allowed set
    }
    if (delta == 1) return out;

    GroupTable table(g);
    auto duals = dual_characters(g);
    i64 expT = g.exponent();
    // per prime of delta: options at any level with local weight exactly p^{v_p(delta)}
    std::vector<std::vector<detail::LocalOption>> per_prime;
    for (auto& [p, e] : fac) {
        std::vector<detail::LocalOption> hits;
        int kmax = p == 2 ? 2 + static_cast<int>(valuation(expT, 2))
                          : 1 + static_cast<int>(valuation(expT, p));
        i64 target_w = 1;
        for (int i = 0; i < e; ++i) target_w *= p;
        for (int k = p == 2 ? 2 : 1; k <= kmax; ++k)
            for (auto& o : detail::options_at(g, table, duals, p, k, delta))
                if (o.weight == target_w) hits.push_back(o);
        if (hits.empty()) return out;
        per_prime.push_back(std::move(hits));
    }
    std::vector<size_t> pick(per_prime.size(), 0);
    while (true) {
        if (budget) budget->tick();
        GExtension e;
        e.target = g;
        uint64_t mask = 1;
        for (size_t i = 0; i < per_prime.size(); ++i) {
            e.locals.push_back(per_prime[i][pick[i]].lb);
            mask = table.product(mask, per_prime[i][pick[i]].mask);
        }
        if (mask == table.full) {
            std::sort(e.locals.begin(), e.locals.end(),
                      [](const LocalHomBlock& a, const LocalHomBlock& b) { return a.block.p < b.block.p; });
            finalize_extension(e);
            if (e.discriminant == delta) out.push_back(std::move(e));
        }
        size_t pos = 0;
        while (pos < pick.size() && ++pick[pos] == per_prime[pos].size()) pick[pos++] = 0;
        if (pos == pick.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const GExtension& a, const GExtension& b) {
        if (a.modulus != b.modulus) return a.modulus < b.modulus;
        return a.image_encoding() < b.image_encoding();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Default finite exclusion set: primes dividing |G| (the real place is always
// treated as excluded).

inline std::set<i64> default_S(const FinAbGroup& g) {
    std::set<i64> s;
    for (auto& [p, e] : factorize(g.order())) {
        (void)e;
        s.insert(p);
    }
    return s;
}

// Local implication test at p outside S: if e_i^{Q^{a_i-1}} ramifies then the
// whole decomposition coset lands in <M, e_1, ..., e_j^Q, ..., e_t>.
inline bool lambda_v_test(const GExtension& e, i64 p, size_t i, size_t j, const std::set<i64>& S) {
    if (S.count(p)) throw std::invalid_argument("lambda_v_test: p in S");
    if (i == j) throw std::invalid_argument("lambda_v_test: i == j");
    const FinAbGroup& g = e.target;
    i64 Q = g.q_small();
    i64 pw = 1;
    for (int k = 0; k < g.a(i) - 1; ++k) pw *= Q;
    Element vi = g.pow(g.e_gen(i), pw);
    LocalSymbolRec s = local_symbol(e, p);
    if (!s.inertia.contains(vi)) return true;
    Subgroup lj = index_q_subgroup(g, j);
    if (!lj.contains(s.frobenius)) return false;
    return lj.contains_subgroup(s.inertia);
}

} // namespace hnpcount
