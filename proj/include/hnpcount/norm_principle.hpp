#pragma once

#include <atomic>
#include <set>
#include <thread>
#include <vector>

#include "hnpcount/extensions.hpp"
#include "hnpcount/rational.hpp"

namespace hnpcount {

// Knot image: the subgroup of wedge^2 G generated by the wedge images of all
// decomposition groups. Unramified and archimedean decomposition groups are
// cyclic, so only ramified finite places can contribute; an audit floor can
// fold unramified places back in to exercise that assertion.
struct KnotImageReport {
    Subgroup image;                      // subgroup of wedge^2 G
    std::vector<i64> contributing_places;  // ramified p with nontrivial wedge image
};

inline KnotImageReport knot_image(const FinAbGroup& g, const WedgeSquare& w, const GExtension& e,
                                  i64 audit_unramified_floor = 0) {
    KnotImageReport rep;
    std::vector<Element> gens;
    for (auto& s : e.local_symbols) {
        Subgroup dec = decomposition_subgroup(e, s);
        Subgroup im = induced_wedge_image(g, w, dec);
        if (im.order() > 1) {
            rep.contributing_places.push_back(s.p);
            for (auto& [x, o] : im.cyclic_decomposition()) gens.push_back(x);
        }
    }
    if (audit_unramified_floor > 0) {
        for (i64 p = 2; p <= audit_unramified_floor; ++p) {
            if (!is_prime(p) || e.modulus % p == 0) continue;
            Subgroup dec = decomposition_subgroup(e, local_symbol(e, p));
            if (induced_wedge_image(g, w, dec).order() > 1)
                throw std::logic_error("unramified decomposition group with nontrivial wedge image");
        }
        // the real place: decomposition is generated by the conjugation element
        Subgroup arch = Subgroup::from_generators(g, {e.conjugation});
        if (induced_wedge_image(g, w, arch).order() > 1)
            throw std::logic_error("archimedean decomposition group with nontrivial wedge image");
    }
    rep.image = Subgroup::from_generators(w.group, gens);
    return rep;
}

// Hasse norm principle holds iff the knot image is all of wedge^2 G.
inline bool hnp_holds(const FinAbGroup& g, const WedgeSquare& w, const GExtension& e) {
    return knot_image(g, w, e).image.order() == w.group.order();
}

// Weak approximation for the norm-one torus holds iff the knot image is trivial.
inline bool wa_holds(const FinAbGroup& g, const WedgeSquare& w, const GExtension& e) {
    return knot_image(g, w, e).image.order() == 1;
}

struct DensityRow {
    i64 bound = 0;
    i64 total = 0;
    i64 hnp_fail = 0;
    i64 wa_hold = 0;
    i64 lambda_hold = 0;
    Rat hnp_fail_ratio{0, 1};
    Rat wa_hold_ratio{0, 1};
    Rat lambda_ratio{0, 1};
};

// Per-extension flags merged into rows; exposed so scans can parallelize.
struct DensityFlags {
    i64 discriminant;
    bool hnp_fail, wa, lambda;
};

inline DensityFlags density_flags(const FinAbGroup& g, const WedgeSquare& w, const GExtension& e,
                                  size_t i, size_t j, const std::set<i64>& S) {
    DensityFlags f{};
    f.discriminant = e.discriminant;
    i64 knot = knot_image(g, w, e).image.order();
    f.hnp_fail = knot != w.group.order();
    f.wa = knot == 1;
    f.lambda = true;
    for (auto& s : e.local_symbols)
        if (!S.count(s.p) && !lambda_v_test(e, s.p, i, j, S)) f.lambda = false;
    return f;
}

// One enumeration pass at the largest bound; rows bucketed per bound.
// Rows with total == 0 keep zero ratios and are skipped by trend checks.
inline std::vector<DensityRow> density_scan(const FinAbGroup& g, std::vector<i64> bounds, size_t i,
                                            size_t j, const std::set<i64>& S, int workers = 1,
                                            Budget* budget = nullptr) {
    if (!g.noncyclic_q_sylow())
        throw std::invalid_argument("density_scan: cyclic Q-Sylow subgroup (Hasse norm theorem case)");
    if (i == j || i > g.t() || j > g.t()) throw std::invalid_argument("density_scan: bad (i, j)");
    std::sort(bounds.begin(), bounds.end());
    WedgeSquare w = exterior_square(g);
    auto exts = enumerate(g, bounds.back(), budget);

    std::vector<DensityFlags> flags(exts.size());
    if (workers <= 1 || exts.size() < 64) {
        for (size_t idx = 0; idx < exts.size(); ++idx) flags[idx] = density_flags(g, w, exts[idx], i, j, S);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                while (true) {
                    size_t idx = next.fetch_add(64);
                    if (idx >= exts.size()) return;
                    size_t hi = std::min(exts.size(), idx + 64);
                    for (size_t k = idx; k < hi; ++k) flags[k] = density_flags(g, w, exts[k], i, j, S);
                }
            });
        for (auto& t : pool) t.join();
    }

    std::vector<DensityRow> rows;
    for (i64 b : bounds) {
        DensityRow r;
        r.bound = b;
        for (auto& f : flags) {
            if (f.discriminant > b) continue;
            ++r.total;
            if (f.hnp_fail) ++r.hnp_fail;
            if (f.wa) ++r.wa_hold;
            if (f.lambda) ++r.lambda_hold;
        }
        if (r.total > 0) {
            r.hnp_fail_ratio = Rat(r.hnp_fail, r.total);
            r.wa_hold_ratio = Rat(r.wa_hold, r.total);
            r.lambda_ratio = Rat(r.lambda_hold, r.total);
        }
        rows.push_back(r);
    }
    return rows;
}

// Trend assertion shared by density and cancellation experiments: the series
// must be non-increasing, allowing one inversion of at most `slack` relative
// size. Entries flagged as no-data are skipped.
inline bool trend_non_increasing(const std::vector<double>& vals, const std::vector<bool>& has_data,
                                 double slack = 0.10) {
    std::vector<double> v;
    for (size_t i = 0; i < vals.size(); ++i)
        if (has_data[i]) v.push_back(vals[i]);
    int inversions = 0;
    for (size_t i = 1; i < v.size(); ++i) {
        if (v[i] <= v[i - 1] + 1e-15) continue;
        double rel = (v[i] - v[i - 1]) / (v[i] == 0 ? 1 : v[i]);
        if (rel > slack) return false;
        if (++inversions > 1) return false;
    }
    return true;
}

} // namespace hnpcount
