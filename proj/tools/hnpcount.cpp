// Command-line driver: enumeration of abelian extensions of Q ordered by
// discriminant, Hasse-norm-principle / weak-approximation testers, local
// Fourier-transform verification, Poisson and Tauberian experiments.

#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "hnpcount/io.hpp"
#include "hnpcount/local_fourier.hpp"

using namespace hnpcount;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitBudget = 2;
constexpr int kExitCheckFailed = 3;

// Exact integer from decimal or scientific notation ("1e8" -> 100000000).
i64 parse_bound(const std::string& text) {
    size_t epos = text.find_first_of("eE");
    std::string mant = epos == std::string::npos ? text : text.substr(0, epos);
    i64 exp10 = epos == std::string::npos ? 0 : std::stoll(text.substr(epos + 1));
    size_t dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<i64>(mant.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad bound '" + text + "'");
    i64 v = std::stoll(digits);
    if (exp10 < 0) {
        for (i64 i = 0; i < -exp10; ++i) {
            if (v % 10 != 0) throw std::invalid_argument("bound '" + text + "' is not an integer");
            v /= 10;
        }
    } else {
        for (i64 i = 0; i < exp10; ++i) {
            if (v > INT64_MAX / 10) throw std::invalid_argument("bound '" + text + "' overflows");
            v *= 10;
        }
    }
    if (v < 1) throw std::invalid_argument("bound must be >= 1");
    return v;
}

std::vector<i64> parse_bounds(const std::string& text) {
    std::vector<i64> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_bound(tok));
    if (out.empty()) throw std::invalid_argument("empty bounds list");
    return out;
}

std::set<i64> parse_prime_set(const std::string& text) {
    std::set<i64> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        i64 p = std::stoll(tok);
        if (!is_prime(p)) throw std::invalid_argument("'" + tok + "' is not prime");
        out.insert(p);
    }
    return out;
}

std::vector<i64> parse_prime_range(const std::string& text) {
    // "3..97" or a comma list
    size_t dd = text.find("..");
    std::vector<i64> out;
    if (dd != std::string::npos) {
        i64 lo = std::stoll(text.substr(0, dd)), hi = std::stoll(text.substr(dd + 2));
        for (i64 p = lo; p <= hi; ++p)
            if (is_prime(p)) out.push_back(p);
    } else {
        for (i64 p : parse_prime_set(text)) out.push_back(p);
    }
    return out;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_atomic(out_path, content);
}

struct CommonOpts {
    std::string group, lspec, out, format = "jsonl", cache_dir, sset;
    std::string bound, bounds = "";
    size_t i = 1, j = 0;
    double s = 0.8;
    std::string X = "1e6", P = "1e4";
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    i64 budget = 2'000'000'000;
    i64 seed = 1;
};

std::set<i64> effective_S(const FinAbGroup& g, const std::string& override_spec) {
    if (!override_spec.empty()) return parse_prime_set(override_spec);
    return default_S(g);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"counting and local-global testers for abelian extensions of Q"};
    app.require_subcommand(1);
    CommonOpts o;
    if (const char* env = std::getenv("HNPCOUNT_CACHE_DIR")) o.cache_dir = env;

    auto add_common = [&](CLI::App* cmd, bool needs_group = true) {
        if (needs_group) cmd->add_option("--group", o.group, "group spec, e.g. C2xC4")->required();
        cmd->add_option("--out", o.out, "output file (atomic write); stdout if omitted");
        cmd->add_option("--workers", o.workers, "worker threads");
        cmd->add_option("--budget", o.budget, "work budget (operations)");
        cmd->add_option("--seed", o.seed, "seed for sampled checks");
        cmd->add_option("--cache-dir", o.cache_dir,
                        "extension cache directory (or HNPCOUNT_CACHE_DIR)");
    };

    auto* c_enum = app.add_subcommand("enumerate", "surjective homs with discriminant <= bound");
    add_common(c_enum);
    c_enum->add_option("--bound", o.bound, "discriminant bound")->required();
    c_enum->add_option("--format", o.format, "jsonl | csv");

    auto* c_dens = app.add_subcommand("density", "HNP / WA / local-condition density rows");
    add_common(c_dens);
    c_dens->add_option("--bounds", o.bounds, "comma-separated bounds")->required();
    c_dens->add_option("--i", o.i, "index i of the local condition");
    c_dens->add_option("--j", o.j, "index j of the local condition (default t)");
    c_dens->add_option("--S", o.sset, "override the excluded prime set");

    auto* c_find = app.add_subcommand("find", "extensions with an exact discriminant");
    add_common(c_find);
    std::string disc, ramified;
    c_find->add_option("--disc", disc, "target discriminant")->required();
    c_find->add_option("--ramified", ramified, "allowed ramified primes, comma separated")->required();

    auto* c_ft = app.add_subcommand("local-ft-check",
                                    "structured vs brute-force local transforms");
    add_common(c_ft);
    std::string primes = "3..97";
    c_ft->add_option("--primes", primes, "prime range 'a..b' or list");

    auto* c_poisson = app.add_subcommand("poisson", "dual-sum identity check");
    add_common(c_poisson);
    std::string eta_mod;
    c_poisson->add_option("--L", o.lspec, "subgroup spec, e.g. e1,e2^2")->required();
    c_poisson->add_option("--s", o.s, "evaluation point (real)");
    c_poisson->add_option("--X", o.X, "character-sum truncation");
    c_poisson->add_option("--P", o.P, "Euler-product prime cut");
    c_poisson->add_option("--eta-mod", eta_mod,
                          "modulus of a lift class escaping J (default: trivial eta)");
    c_poisson->add_option("--S", o.sset, "override the excluded prime set");

    auto* c_tauber = app.add_subcommand("tauber", "normalized partial-sum stability");
    add_common(c_tauber);
    double ta = 0.5, tomega = 3.0, max_stability = -1;
    c_tauber->add_option("--bounds", o.bounds, "comma-separated bounds")->required();
    c_tauber->add_option("--a", ta, "growth exponent");
    c_tauber->add_option("--omega", tomega, "log power");
    c_tauber->add_option("--max-stability", max_stability, "fail if the metric exceeds this");

    auto* c_moebius = app.add_subcommand("moebius-check", "subgroup-lattice inversion identity");
    add_common(c_moebius);
    c_moebius->add_option("--L", o.lspec, "subgroup spec")->required();
    c_moebius->add_option("--bound", o.bound, "bound B")->required();
    c_moebius->add_option("--S", o.sset, "override the excluded prime set");

    auto* c_info = app.add_subcommand("group-info", "canonical presentation and lattice data");
    add_common(c_info);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        Budget budget;
        budget.remaining = o.budget;

        if (*c_enum) {
            FinAbGroup g = parse_group_spec(o.group);
            i64 b = parse_bound(o.bound);
            bool hit = false;
            auto exts = cached_enumerate(g, b, o.cache_dir, &budget, &hit);
            if (o.format == "jsonl") {
                emit(o.out, extensions_to_jsonl(g, b, exts, false));
            } else if (o.format == "csv") {
                std::ostringstream csv;
                csv << "modulus,discriminant,surjective\n";
                for (auto& e : exts)
                    csv << e.modulus << ',' << e.discriminant << ',' << (e.surjective ? 1 : 0) << "\n";
                emit(o.out, csv.str());
            } else {
                throw std::invalid_argument("unknown format '" + o.format + "'");
            }
            std::cerr << "enumerated " << exts.size() << " extensions"
                      << (hit ? " (cache hit)" : "") << "\n";
            return kExitOk;
        }

        if (*c_dens) {
            FinAbGroup g = parse_group_spec(o.group);
            auto bounds = parse_bounds(o.bounds);
            size_t j = o.j == 0 ? g.t() : o.j;
            auto rows = density_scan(g, bounds, o.i, j, effective_S(g, o.sset),
                                     std::max(1, o.workers), &budget);
            emit(o.out, density_csv(rows));
            return kExitOk;
        }

        if (*c_find) {
            FinAbGroup g = parse_group_spec(o.group);
            i64 d = parse_bound(disc);
            std::vector<i64> primes_allowed;
            for (i64 p : parse_prime_set(ramified)) primes_allowed.push_back(p);
            auto hits = find_by_discriminant(g, d, primes_allowed, &budget);
            WedgeSquare w = exterior_square(g);
            std::ostringstream out;
            for (auto& e : hits) {
                json rec = extension_record(e);
                rec["wa_holds"] = wa_holds(g, w, e);
                rec["hnp_holds"] = hnp_holds(g, w, e);
                json noncyc = json::array();
                for (auto& sym : e.local_symbols)
                    if (!is_cyclic(decomposition_subgroup(e, sym))) noncyc.push_back(sym.p);
                rec["noncyclic_decomposition_at"] = noncyc;
                out << rec.dump() << "\n";
            }
            emit(o.out, out.str());
            std::cerr << "found " << hits.size() << " extensions\n";
            return kExitOk;
        }

        if (*c_ft) {
            FinAbGroup g = parse_group_spec(o.group);
            FtContext ctx = FtContext::standard(g, g.order(), q_rank(g, g.q_small()));
            FtTarget ht = make_ft_target(g, Subgroup::full(g));
            FtTarget jt = make_ft_target(g, standard_L(g));
            i64 checked = 0;
            for (i64 q : parse_prime_range(primes)) {
                if (g.order() % q == 0) continue;
                LocalPlace v = local_place(q, g);
                for (auto& t : {jt, ht}) {
                    size_t n = t.R.num_factors();
                    std::vector<i64> radix;
                    for (size_t k = 0; k < n; ++k) radix.push_back(std::gcd(q - 1, t.R.factor(k)));
                    for (size_t k = 0; k < n; ++k) radix.push_back(t.R.factor(k));
                    std::vector<i64> idx(radix.size(), 0);
                    while (true) {
                        DualLocalElement x;
                        x.unit_exps.assign(idx.begin(), idx.begin() + n);
                        x.val_exps.assign(idx.begin() + n, idx.end());
                        for (cplx s : {cplx(0.3, 0), cplx(0.7, 0), cplx(1.1, 0), cplx(0.5, 0.5)}) {
                            budget.tick();
                            cplx b = ft_bruteforce(ctx, v, t, trivial_eta(g), x, s);
                            auto st = ft_structured(ctx, v, t, trivial_eta(g), x);
                            if (std::abs(b - st.value(v, s)) >= 1e-9) {
                                json bad;
                                bad["q"] = q;
                                bad["unit_exps"] = x.unit_exps;
                                bad["val_exps"] = x.val_exps;
                                bad["s_re"] = s.real();
                                bad["s_im"] = s.imag();
                                bad["brute_re"] = b.real();
                                bad["structured_re"] = st.value(v, s).real();
                                std::cout << bad.dump() << "\n";
                                return kExitCheckFailed;
                            }
                            ++checked;
                        }
                        size_t pos = 0;
                        while (pos < idx.size() && ++idx[pos] == radix[pos]) idx[pos++] = 0;
                        if (pos == idx.size() || idx.empty()) break;
                    }
                }
            }
            json rep;
            rep["status"] = "pass";
            rep["comparisons"] = checked;
            emit(o.out, rep.dump() + "\n");
            return kExitOk;
        }

        if (*c_poisson) {
            FinAbGroup g = parse_group_spec(o.group);
            Subgroup jsub = parse_subgroup_spec(g, o.lspec);
            auto S = effective_S(g, o.sset);
            EtaGlobal eta;
            GExtension eta_hom;
            if (!eta_mod.empty()) {
                i64 m = parse_bound(eta_mod);
                bool found = false;
                for (auto& h : homs(m, g, false, true))
                    if (!jsub.contains_subgroup(image_subgroup(h))) {
                        eta_hom = h;
                        found = true;
                        break;
                    }
                if (!found) throw std::invalid_argument("no class escaping J at modulus " + eta_mod);
                eta.hom = &eta_hom;
                eta.J = jsub;
            }
            auto rep = poisson_check(g, jsub, eta, o.s, parse_bound(o.X), parse_bound(o.P), S, &budget);
            json j = poisson_json(rep);
            bool ok = rep.discrepancy <= rep.tail_lhs + rep.tail_rhs || rep.rel_discrepancy <= 0.02;
            j["status"] = ok ? "pass" : "fail";
            emit(o.out, j.dump() + "\n");
            return ok ? kExitOk : kExitCheckFailed;
        }

        if (*c_tauber) {
            FinAbGroup g = parse_group_spec(o.group);
            auto bounds = parse_bounds(o.bounds);
            std::sort(bounds.begin(), bounds.end());
            std::vector<std::pair<i64, i64>> pts;
            for (i64 b : bounds) {
                CountSpec cs{g, Subgroup::full(g), Subgroup::full(g), b, 1, CountMode::n_plain, {}};
                pts.push_back({b, count(cs, &budget)});
            }
            auto fit = tauber_fit(pts, ta, tomega);
            emit(o.out, tauber_csv(fit));
            if (max_stability >= 0 && fit.stability > max_stability) return kExitCheckFailed;
            return kExitOk;
        }

        if (*c_moebius) {
            FinAbGroup g = parse_group_spec(o.group);
            Subgroup l = parse_subgroup_spec(g, o.lspec);
            auto rep = moebius_inversion_check(g, l, parse_bound(o.bound), effective_S(g, o.sset),
                                               &budget);
            emit(o.out, moebius_json(rep).dump() + "\n");
            return rep.equal ? kExitOk : kExitCheckFailed;
        }

        if (*c_info) {
            FinAbGroup g = parse_group_spec(o.group);
            std::ostringstream out;
            out << "canonical presentation: " << group_spec_string(g) << "\n";
            out << "order " << g.order() << ", exponent " << g.exponent() << ", Q = " << g.q_small()
                << ", t = " << g.t() << "\n";
            WedgeSquare w = exterior_square(g);
            out << "wedge square: " << group_spec_string(w.group) << "\n";
            for (size_t l = 0; l < w.pair_labels.size(); ++l)
                out << "  generator " << l + 1 << " = e" << w.pair_labels[l].first + 1 << " ^ e"
                    << w.pair_labels[l].second + 1 << " (order " << w.group.factor(l) << ")\n";
            auto subs = subgroups(g);
            out << "subgroups: " << subs.size() << "\n";
            if (g.noncyclic_q_sylow() && g.a(g.t()) >= 2) {
                auto wp = w_partition(g, standard_L(g));
                out << "W partition: |W| = " << wp.W.size() << ", |W1| = " << wp.W1.size()
                    << ", |W2| = " << wp.W2.size() << "\n";
            }
            emit(o.out, out.str());
            return kExitOk;
        }
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
