#pragma once

#include <complex>
#include <set>
#include <string>
#include <vector>

#include "hnpcount/local_fourier.hpp"
#include "hnpcount/norm_principle.hpp"

namespace hnpcount {

inline Element embed_element(const FtTarget& t, const Element& x_R) {
    return t.elements_G[t.R.element_index(x_R)];
}

// f(chi) = prod over ramified p outside S of the local factor: 0 once some
// inertia image contains v0 while the Frobenius value escapes L.
inline bool f_global_one(const FtContext& ctx, const std::set<i64>& S, const GExtension& e,
                         const FtTarget& emb) {
    auto it = emb.index_by_G.find(ctx.v0.e);
    if (it == emb.index_by_G.end()) return true;  // v0 outside the target: vacuous
    const Element& v0_T = emb.elements_R[it->second];
    for (auto& s : e.local_symbols) {
        if (S.count(s.p)) continue;
        if (!s.inertia.contains(v0_T)) continue;
        if (!ctx.L.contains(embed_element(emb, s.frobenius))) return false;
    }
    return true;
}

enum class CountMode { n_star, n_h, n_plain };

// N-type counting: homs into H with Phi_H(chi)^root_exp <= bound, filtered by
// surjectivity (n_star) and the global f condition (n_star, n_h).
struct CountSpec {
    FinAbGroup G;
    Subgroup L;
    Subgroup H;
    i64 bound = 1;
    int root_exp = 1;
    CountMode mode = CountMode::n_h;
    std::set<i64> S;
};

inline i64 count(const CountSpec& spec, Budget* budget = nullptr) {
    if (spec.bound < 1) throw std::invalid_argument("count: bound must be >= 1");
    FtTarget emb = make_ft_target(spec.G, spec.H);
    // the local condition only exists for a non-cyclic Q-Sylow subgroup;
    // otherwise f = 1 identically and every mode counts plainly
    bool use_f = spec.mode != CountMode::n_plain && spec.G.noncyclic_q_sylow();
    FtContext ctx;
    if (use_f) {
        ctx.G = spec.G;
        ctx.v0 = v0_element(spec.G);
        ctx.L = spec.L;
    }
    i64 n = 0;
    enumerate_homs_by_phi(
        emb.R, spec.bound, spec.root_exp, spec.mode == CountMode::n_star,
        [&](const GExtension& e) {
            if (use_f && !f_global_one(ctx, spec.S, e, emb)) return;
            ++n;
        },
        budget);
    return n;
}

// ---------------------------------------------------------------------------
// Moebius inversion over the subgroup lattice:
//   N*(G, L; B) = sum over H <= G of mu(G/H) N(H, L; B^{|H|/|G|}).

struct MoebiusTerm {
    std::string subgroup;  // invariant-factor description
    i64 order = 1;
    i64 mu = 0;
    i64 count = 0;
};

struct MoebiusInversionReport {
    i64 lhs = 0;  // N*(G, L; B)
    i64 rhs = 0;
    std::vector<MoebiusTerm> terms;
    bool equal = false;
};

inline MoebiusInversionReport moebius_inversion_check(const FinAbGroup& g, const Subgroup& l,
                                                      i64 bound, const std::set<i64>& S,
                                                      Budget* budget = nullptr) {
    MoebiusInversionReport rep;
    CountSpec star{g, l, Subgroup::full(g), bound, 1, CountMode::n_star, S};
    rep.lhs = count(star, budget);
    for (auto& h : subgroups(g)) {
        MoebiusTerm term;
        term.order = h.order();
        term.mu = moebius_quotient(g, h);
        term.subgroup = group_spec_string(h.as_group().first);
        if (term.mu != 0) {
            CountSpec cs{g, l, h, bound, static_cast<int>(g.order() / h.order()), CountMode::n_h, S};
            term.count = count(cs, budget);
            rep.rhs += term.mu * term.count;
        }
        rep.terms.push_back(term);
    }
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

// ---------------------------------------------------------------------------
// The Euler product h_eta(x; s) = prod_v h_{eta_v, v}(x_v; s), truncated at P
// with a stated tail bound, S-place factors evaluated by exact finite sums.

struct EulerProductValue {
    cplx value = 1.0;
    double tail = 0.0;  // absolute bound for the neglected primes beyond P
};

inline EtaLocal eta_local_at(const FinAbGroup& g, const EtaGlobal& eta, const LocalPlace& v) {
    if (!eta.hom) return trivial_eta(g);
    EtaLocal out = trivial_eta(g);
    for (auto& lb : eta.hom->locals)
        if (lb.block.p == v.q) out.unit_image = block_eval(g, lb, v.primitive_root);
    out.pi_image = local_symbol(*eta.hom, v.q).frobenius;
    return out;
}

// exact local factor at a finite place p in S (f = 1 there), by direct
// summation over Hom(Q_p^*, J)
inline cplx s_place_factor(const FtContext& ctx, const FtTarget& jt, const FtTarget& ht,
                           const EtaGlobal& eta, const GlobalDualElement& x, i64 p, cplx s) {
    i64 expJ = jt.R.is_trivial() ? 1 : jt.R.exponent();
    int c = p == 2 ? 2 + static_cast<int>(valuation(expJ, 2) + valuation(ctx.h_order, 2))
                   : 1 + static_cast<int>(valuation(expJ, p) + valuation(ctx.h_order, p));
    UnitBlock blk = unit_block(p, c);
    UnitGroupStructure u;
    u.m = blk.pk;
    u.blocks = {blk};
    for (size_t i = 0; i < blk.gen_residues.size(); ++i) {
        u.gen_residues.push_back(blk.gen_residues[i]);
        u.gen_orders.push_back(blk.gen_orders[i]);
        u.gen_block.push_back(0);
    }
    size_t ng = blk.gen_residues.size();

    // eta's unit images on the block generators, and pi image
    std::vector<Element> eta_units(ng, ctx.G.identity());
    Element eta_pi = ctx.G.identity();
    if (eta.hom) {
        for (auto& lb : eta.hom->locals)
            if (lb.block.p == p)
                for (size_t i = 0; i < ng; ++i) eta_units[i] = block_eval(ctx.G, lb, blk.gen_residues[i]);
        eta_pi = local_symbol(*eta.hom, p).frobenius;
    }

    // localized x at p: per generator j, a unit a_j mod p^c and a valuation m_j
    size_t gens = jt.R.num_factors();
    std::vector<std::vector<i64>> unit_coords(gens);  // exponents over block generators
    std::vector<i64> val(gens, 0);
    for (size_t j = 0; j < gens; ++j) {
        i64 a = 1 % blk.pk;
        for (size_t r = 0; r < x.exps.size(); ++r) {
            i64 b;
            if (r == 0) b = blk.pk - 1;  // -1
            else if (x.basis_primes[r - 1] == p) {
                val[j] = x.exps[r][j];
                continue;
            } else
                b = x.basis_primes[r - 1] % blk.pk;
            a = mulmod(a, powmod(b, ((x.exps[r][j] % blk.pk) + blk.pk) % blk.pk, blk.pk), blk.pk);
        }
        unit_coords[j] = unit_decompose(u, a);
    }

    auto duals_h = dual_characters(ht.R);
    double logp = std::log(static_cast<double>(p));
    cplx total = 0;
    // iterate characters: images y_i per block generator, plus chi(pi) = u0
    std::vector<size_t> pick(ng, 0);
    std::vector<std::vector<size_t>> allowed(ng);
    for (size_t i = 0; i < ng; ++i)
        for (size_t ei = 0; ei < jt.elements_R.size(); ++ei)
            if (jt.R.is_identity(jt.R.pow(jt.elements_R[ei], blk.gen_orders[i]))) allowed[i].push_back(ei);
    while (true) {
        // conductor product over the characters of H for chi * eta
        std::vector<Element> imgs_H;
        bool in_h = true;
        for (size_t i = 0; i < ng; ++i) {
            Element g_img = ctx.G.mul(jt.elements_G[allowed[i][pick[i]]], eta_units[i]);
            auto it = ht.index_by_G.find(g_img.e);
            if (it == ht.index_by_G.end()) { in_h = false; break; }
            imgs_H.push_back(ht.elements_R[it->second]);
        }
        if (!in_h) throw std::logic_error("s_place_factor: image escapes the Phi group");
        i64 cond_sum = 0;
        for (auto& psi : duals_h) {
            std::vector<i64> ords;
            for (auto& im : imgs_H) ords.push_back(char_value_order(ht.R, psi, im));
            cond_sum += block_conductor_exponent(blk, ords);
        }
        // pairing: value of chi at the unit part of each coordinate
        for (size_t ui = 0; ui < jt.elements_R.size(); ++ui) {
            i64 N = jt.R.is_trivial() ? 1 : jt.R.exponent();
            i64 num = 0;
            for (size_t j = 0; j < gens; ++j) {
                Element cj = jt.R.identity();
                for (size_t i = 0; i < ng; ++i)
                    cj = jt.R.mul(cj, jt.R.pow(jt.elements_R[allowed[i][pick[i]]], unit_coords[j][i]));
                cj = jt.R.mul(cj, jt.R.pow(jt.elements_R[ui], val[j]));
                i64 o = jt.R.factor(j);
                num = (num + cj.e[j] % o * (N / o)) % N;
            }
            double ang = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(N);
            total += cplx{std::cos(ang), std::sin(ang)} *
                     std::exp(-s * (static_cast<double>(cond_sum) * logp));
        }
        size_t pos = 0;
        while (pos < ng && ++pick[pos] == allowed[pos].size()) pick[pos++] = 0;
        if (pos == ng || ng == 0) break;
    }
    return total / static_cast<double>(jt.order());
}

// archimedean factor: sum over Hom(R^*, J) of the sign pairing (f = 1, Phi = 1)
inline cplx arch_factor(const FtTarget& jt, const GlobalDualElement& x) {
    i64 N = jt.R.is_trivial() ? 1 : jt.R.exponent();
    cplx total = 0;
    for (auto& u : jt.elements_R) {
        if (!jt.R.is_identity(jt.R.pow(u, 2))) continue;
        i64 num = 0;
        for (size_t j = 0; j < jt.R.num_factors(); ++j) {
            i64 o = jt.R.factor(j);
            num = (num + jt.R.pow(u, x.exps[0][j]).e[j] % o * (N / o)) % N;
        }
        double ang = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(N);
        total += cplx{std::cos(ang), std::sin(ang)};
    }
    return total;
}

inline EulerProductValue euler_h(const FtContext& ctx, const FtTarget& jt, const FtTarget& ht,
                                 const EtaGlobal& eta, const GlobalDualElement& x, cplx s, i64 P,
                                 const std::set<i64>& S) {
    double alpha_h = static_cast<double>(ctx.h_order) * (1.0 - 1.0 / static_cast<double>(ctx.G.q_small()));
    if (s.real() * alpha_h <= 1.0)
        throw std::domain_error("euler_h: s at or below the abscissa 1/alpha(H)");
    EulerProductValue out;
    out.value = arch_factor(jt, x);
    for (i64 p : S) out.value *= s_place_factor(ctx, jt, ht, eta, x, p, s);
    for (i64 q = 2; q <= P; ++q) {
        if (!is_prime(q) || S.count(q)) continue;
        LocalPlace v{q, least_primitive_root(q)};
        EtaLocal el = eta_local_at(ctx.G, eta, v);
        DualLocalElement xl = localize(x, jt, v);
        out.value *= ft_bruteforce(ctx, v, jt, el, xl, s);
        if (std::abs(out.value) < 1e-300) break;  // exact zero factor
    }
    // tail: |factor - 1| <= (|J| - 1) q^{-alpha(H) Re s} for q > P
    double a = alpha_h * s.real();
    double c = static_cast<double>(jt.order() - 1);
    double tail_sum = c * std::pow(static_cast<double>(P), 1.0 - a) / (a - 1.0);
    out.tail = std::abs(out.value) * (std::exp(tail_sum) - 1.0);
    return out;
}

// ---------------------------------------------------------------------------
// Composite conductor products and f for chi * eta (chi into J, eta a global
// hom into H <= G stored in G coordinates).

inline i64 phi_of_composite(const FtContext& ctx, const FtTarget& ht, const FtTarget& jt,
                            const GExtension& chi, const EtaGlobal& eta) {
    std::set<i64> ram;
    for (auto& lb : chi.locals) ram.insert(lb.block.p);
    if (eta.hom)
        for (auto& lb : eta.hom->locals) ram.insert(lb.block.p);
    auto duals_h = dual_characters(ht.R);
    i128 prod = 1;
    for (i64 p : ram) {
        int k = 0;
        const LocalHomBlock* cb = nullptr;
        const LocalHomBlock* ebk = nullptr;
        for (auto& lb : chi.locals)
            if (lb.block.p == p) { cb = &lb; k = std::max(k, lb.block.k); }
        if (eta.hom)
            for (auto& lb : eta.hom->locals)
                if (lb.block.p == p) { ebk = &lb; k = std::max(k, lb.block.k); }
        UnitBlock blk = unit_block(p, k);
        std::vector<Element> imgs_H;
        for (i64 gr : blk.gen_residues) {
            Element g_img = ctx.G.identity();
            if (cb) g_img = ctx.G.mul(g_img, embed_element(jt, block_eval(jt.R, *cb, gr)));
            if (ebk) g_img = ctx.G.mul(g_img, block_eval(ctx.G, *ebk, gr));
            auto it = ht.index_by_G.find(g_img.e);
            if (it == ht.index_by_G.end()) throw std::logic_error("phi_of_composite: image outside H");
            imgs_H.push_back(ht.elements_R[it->second]);
        }
        i64 cond_sum = 0;
        for (auto& psi : duals_h) {
            std::vector<i64> ords;
            for (auto& im : imgs_H) ords.push_back(char_value_order(ht.R, psi, im));
            cond_sum += block_conductor_exponent(blk, ords);
        }
        prod *= pow_capped(p, static_cast<int>(cond_sum), INT64_MAX / 4);
        if (prod > static_cast<i128>(4e18)) return kHugeConductorProduct;
    }
    return static_cast<i64>(prod);
}

inline bool f_eta_one(const FtContext& ctx, const std::set<i64>& S, const FtTarget& jt,
                      const GExtension& chi, const EtaGlobal& eta) {
    std::set<i64> ram;
    for (auto& lb : chi.locals) ram.insert(lb.block.p);
    if (eta.hom)
        for (auto& lb : eta.hom->locals) ram.insert(lb.block.p);
    for (i64 p : ram) {
        if (S.count(p)) continue;
        const LocalHomBlock* cb = nullptr;
        const LocalHomBlock* ebk = nullptr;
        int k = 0;
        for (auto& lb : chi.locals)
            if (lb.block.p == p) { cb = &lb; k = std::max(k, lb.block.k); }
        if (eta.hom)
            for (auto& lb : eta.hom->locals)
                if (lb.block.p == p) { ebk = &lb; k = std::max(k, lb.block.k); }
        UnitBlock blk = unit_block(p, k);
        std::vector<Element> unit_gens;
        for (i64 gr : blk.gen_residues) {
            Element g_img = ctx.G.identity();
            if (cb) g_img = ctx.G.mul(g_img, embed_element(jt, block_eval(jt.R, *cb, gr)));
            if (ebk) g_img = ctx.G.mul(g_img, block_eval(ctx.G, *ebk, gr));
            unit_gens.push_back(g_img);
        }
        Subgroup inertia = Subgroup::from_generators(ctx.G, unit_gens);
        if (!inertia.contains(ctx.v0)) continue;
        Element frob = embed_element(jt, local_symbol(chi, p).frobenius);
        if (eta.hom) frob = ctx.G.mul(frob, local_symbol(*eta.hom, p).frobenius);
        if (!ctx.L.contains(frob)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Poisson summation check: truncated character-sum side against the finite
// dual-sum side, with stated tail estimates for both truncations.

struct PoissonReport {
    double lhs = 0, rhs = 0;
    double tail_lhs = 0, tail_rhs = 0;
    double discrepancy = 0, rel_discrepancy = 0;
    i64 lhs_terms = 0;
    i64 X = 0, P = 0;
    double s = 0;
};

inline PoissonReport poisson_check(const FinAbGroup& g, const Subgroup& jsub, const EtaGlobal& eta,
                                   double s, i64 X, i64 P, const std::set<i64>& S,
                                   Budget* budget = nullptr) {
    FtContext ctx = FtContext::standard(g, g.order(), q_rank(g, g.q_small()));
    FtTarget jt = make_ft_target(g, jsub);
    FtTarget ht = make_ft_target(g, Subgroup::full(g));
    i64 Q = g.q_small();
    double alpha_h = static_cast<double>(g.order()) * (1.0 - 1.0 / static_cast<double>(Q));
    if (s * alpha_h <= 1.0) throw std::domain_error("poisson_check: s at or below 1/alpha(H)");

    PoissonReport rep;
    rep.X = X;
    rep.P = P;
    rep.s = s;

    // LHS: sum over chi in Hom(A*/k*, J) with Phi_H(chi eta) <= X
    // enumerate chi by Phi_J(chi)^Q <= X * Phi_H(eta), then filter exactly
    i64 slack = 1;
    if (eta.hom) {
        GExtension empty;
        empty.target = jt.R;
        finalize_extension(empty);
        slack = phi_of_composite(ctx, ht, jt, empty, eta);
    }
    double lhs = 0;
    i64 full_terms = 0;
    double w0 = 0, w1 = 0;  // quartering block sums over (X/4, X] and (X/16, X/4]
    i64 bound = X > kHugeConductorProduct / std::max<i64>(slack, 1) ? kHugeConductorProduct : X * slack;
    // Phi_H(chi eta) >= Phi_J(chi)^{[H:J]} / Phi_H(eta), so this covers every term
    int index_hj = static_cast<int>(g.order() / jsub.order());
    enumerate_homs_by_phi(
        jt.R, bound, index_hj, false,
        [&](const GExtension& chi) {
            i64 phi = phi_of_composite(ctx, ht, jt, chi, eta);
            if (phi > X) return;
            if (!f_eta_one(ctx, S, jt, chi, eta)) return;
            double term = std::pow(static_cast<double>(phi), -s);
            lhs += term;
            ++full_terms;
            if (4 * phi > X) w0 += term;
            else if (16 * phi > X) w1 += term;
        },
        budget);
    rep.lhs = lhs;
    rep.lhs_terms = full_terms;
    // window extrapolation of the truncated series: quarter-scale block sums
    // shrink roughly geometrically with ratio r = w0/w1; the factor 2 is a
    // stated margin for block-to-block fluctuations and slowly varying
    // (logarithmic) corrections to that ratio
    double r = w1 > 0 ? std::min(w0 / w1, 0.85) : 0.85;
    rep.tail_lhs = 2.0 * w0 * r / (1.0 - r) + std::pow(static_cast<double>(X), -s);

    // RHS: (1 / |O_k^* tensor dual J|) * sum over x in O_S^* tensor dual J
    i64 torsion = 0;
    for (auto& u : jt.elements_R)
        if (jt.R.is_identity(jt.R.pow(u, 2))) ++torsion;
    std::vector<i64> sprimes(S.begin(), S.end());
    size_t gens = jt.R.num_factors();
    std::vector<i64> radix;
    for (size_t j = 0; j < gens; ++j) radix.push_back(jt.R.factor(j) % 2 == 0 ? 2 : 1);  // -1 row
    for (size_t r = 0; r < sprimes.size(); ++r)
        for (size_t j = 0; j < gens; ++j) radix.push_back(jt.R.factor(j));
    std::vector<i64> idx(radix.size(), 0);
    cplx rhs = 0;
    double tail_rhs = 0;
    while (true) {
        GlobalDualElement x = zero_global_dual(sprimes, gens);
        size_t pos = 0;
        for (size_t j = 0; j < gens; ++j) x.exps[0][j] = idx[pos++];
        for (size_t r = 0; r < sprimes.size(); ++r)
            for (size_t j = 0; j < gens; ++j) x.exps[r + 1][j] = idx[pos++];
        auto ev = euler_h(ctx, jt, ht, eta, x, cplx(s, 0), P, S);
        rhs += ev.value;
        tail_rhs += ev.tail;
        size_t p2 = 0;
        while (p2 < idx.size() && ++idx[p2] == radix[p2]) idx[p2++] = 0;
        if (p2 == idx.size() || idx.empty()) break;
    }
    rep.rhs = (rhs / static_cast<double>(torsion)).real();
    rep.tail_rhs = tail_rhs / static_cast<double>(torsion);
    rep.discrepancy = std::abs(rep.lhs - rep.rhs);
    rep.rel_discrepancy = rep.discrepancy / std::max(std::abs(rep.lhs), 1e-300);
    return rep;
}

// ---------------------------------------------------------------------------
// Cancellation experiment: N(H, L; B^{|H|/|G|}) against N(J; B^{|J|/|G|}),
// difference normalized by B^{1/alpha(G)} (log B)^{nu(k,G)-1}.

struct CancellationRow {
    i64 bound = 0;
    i64 count_h = 0, count_j = 0;
    i64 diff = 0;
    double normalized = 0;
};

struct CancellationReport {
    std::vector<CancellationRow> rows;
    double alpha_g = 0;
    double nu_g = 0;
};

inline CancellationReport cancellation_check(const FinAbGroup& g, const Subgroup& l,
                                             const Subgroup& jsub, const Subgroup& hsub,
                                             const std::vector<i64>& bounds, const std::set<i64>& S,
                                             Budget* budget = nullptr) {
    if (g.a(g.t()) < 2) throw std::invalid_argument("cancellation_check: needs a_t >= 2");
    CancellationReport rep;
    i64 Q = g.q_small();
    rep.alpha_g = static_cast<double>(g.order()) * (1.0 - 1.0 / static_cast<double>(Q));
    i64 gq = 1;
    for (i64 f : g.factors())
        if (f % Q == 0) gq *= Q;
    rep.nu_g = static_cast<double>(gq - 1) / static_cast<double>(Q - 1);
    for (i64 b : bounds) {
        CancellationRow row;
        row.bound = b;
        CountSpec ch{g, l, hsub, b, static_cast<int>(g.order() / hsub.order()), CountMode::n_h, S};
        CountSpec cj{g, l, jsub, b, static_cast<int>(g.order() / jsub.order()), CountMode::n_plain, S};
        row.count_h = count(ch, budget);
        row.count_j = count(cj, budget);
        row.diff = row.count_h - row.count_j;
        double lb = std::log(static_cast<double>(b));
        row.normalized = static_cast<double>(row.diff) /
                         (std::pow(static_cast<double>(b), 1.0 / rep.alpha_g) * std::pow(lb, rep.nu_g - 1.0));
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Tauberian fit: normalized partial sums count(B) / (B^a (log B)^{omega - 1})
// with a stability metric over the last three points.

struct TauberPoint {
    i64 bound = 0;
    i64 count = 0;
    double normalized = 0;
};

struct TauberFit {
    double a = 0, omega = 0;
    std::vector<TauberPoint> points;
    double stability = 0;  // max relative change across the last three points
};

inline TauberFit tauber_fit(const std::vector<std::pair<i64, i64>>& counts, double a, double omega) {
    if (counts.size() < 3) throw std::invalid_argument("tauber_fit: need at least 3 points");
    if (a <= 0 || omega < 1) throw std::invalid_argument("tauber_fit: need a > 0, omega >= 1");
    TauberFit fit;
    fit.a = a;
    fit.omega = omega;
    for (auto& [b, n] : counts) {
        TauberPoint p;
        p.bound = b;
        p.count = n;
        p.normalized = static_cast<double>(n) /
                       (std::pow(static_cast<double>(b), a) *
                        std::pow(std::log(static_cast<double>(b)), omega - 1.0));
        fit.points.push_back(p);
    }
    double worst = 0;
    size_t start = fit.points.size() - 3;
    for (size_t i = start; i + 1 < fit.points.size(); ++i) {
        double prev = fit.points[i].normalized;
        double cur = fit.points[i + 1].normalized;
        if (prev != 0) worst = std::max(worst, std::abs(cur - prev) / std::abs(prev));
    }
    fit.stability = worst;
    return fit;
}

} // namespace hnpcount
