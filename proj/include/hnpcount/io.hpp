#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hnpcount/counting.hpp"
#include "hnpcount/norm_principle.hpp"

namespace hnpcount {

using json = nlohmann::json;

inline constexpr int kCacheFormatVersion = 1;

inline json extension_record(const GExtension& e) {
    json rec;
    rec["group"] = group_spec_string(e.target);
    rec["modulus"] = e.modulus;
    json orders = json::array(), images = json::array();
    for (auto& lb : e.locals)
        for (size_t i = 0; i < lb.block.gen_orders.size(); ++i) {
            orders.push_back(lb.block.gen_orders[i]);
            images.push_back(lb.images[i].e);
        }
    rec["generator_orders"] = orders;
    rec["images"] = images;
    rec["conductor"] = e.modulus;
    rec["discriminant"] = std::to_string(e.discriminant);
    rec["conjugation"] = e.conjugation.e;
    json syms = json::array();
    for (auto& s : e.local_symbols) {
        json sym;
        sym["p"] = s.p;
        json basis = json::array();
        for (auto& [g, o] : s.inertia.cyclic_decomposition()) basis.push_back(g.e);
        sym["inertia_basis"] = basis;
        sym["frobenius"] = s.frobenius.e;
        syms.push_back(sym);
    }
    rec["local_symbols"] = syms;
    return rec;
}

inline GExtension extension_from_record(const json& rec, const FinAbGroup& g) {
    if (rec.at("group").get<std::string>() != group_spec_string(g))
        throw std::invalid_argument("extension record for a different group");
    i64 m = rec.at("modulus").get<i64>();
    UnitGroupStructure u = unit_group(m);
    auto images = rec.at("images");
    if (images.size() != u.gen_orders.size())
        throw std::invalid_argument("extension record image count mismatch");
    GExtension e;
    e.target = g;
    size_t gi = 0;
    for (auto& b : u.blocks) {
        LocalHomBlock lb;
        lb.block = b;
        for (size_t i = 0; i < b.gen_residues.size(); ++i, ++gi)
            lb.images.push_back(g.make(images[gi].get<std::vector<i64>>()));
        if (!lb.images.empty()) e.locals.push_back(lb);
    }
    finalize_extension(e);
    if (e.modulus != m) throw std::invalid_argument("extension record not primitive");
    return e;
}

inline void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    fs::rename(tmp, path);
}

inline std::string extensions_to_jsonl(const FinAbGroup& g, i64 bound,
                                       const std::vector<GExtension>& exts, bool with_header) {
    std::ostringstream out;
    if (with_header) {
        json header;
        header["format_version"] = kCacheFormatVersion;
        header["group"] = group_spec_string(g);
        header["bound"] = bound;
        out << header.dump() << "\n";
    }
    for (auto& e : exts) out << extension_record(e).dump() << "\n";
    return out.str();
}

inline std::string cache_file_name(const FinAbGroup& g, i64 bound) {
    return "extensions_" + group_spec_string(g) + "_B" + std::to_string(bound) + "_v" +
           std::to_string(kCacheFormatVersion) + ".jsonl";
}

inline std::optional<std::vector<GExtension>> load_extension_cache(const std::string& path,
                                                                   const FinAbGroup& g, i64 bound) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    json header = json::parse(line, nullptr, false);
    if (header.is_discarded()) return std::nullopt;
    if (!header.contains("format_version") ||
        header["format_version"].get<int>() != kCacheFormatVersion)
        return std::nullopt;
    if (header["group"].get<std::string>() != group_spec_string(g)) return std::nullopt;
    if (header["bound"].get<i64>() != bound) return std::nullopt;
    std::vector<GExtension> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(extension_from_record(json::parse(line), g));
    }
    return out;
}

// Enumeration with a disk cache keyed by (group, bound, format version).
inline std::vector<GExtension> cached_enumerate(const FinAbGroup& g, i64 bound,
                                                const std::string& cache_dir,
                                                Budget* budget = nullptr, bool* hit = nullptr) {
    if (hit) *hit = false;
    if (cache_dir.empty()) return enumerate(g, bound, budget);
    std::string path = cache_dir + "/" + cache_file_name(g, bound);
    if (auto cached = load_extension_cache(path, g, bound)) {
        if (hit) *hit = true;
        return *cached;
    }
    auto exts = enumerate(g, bound, budget);
    write_atomic(path, extensions_to_jsonl(g, bound, exts, true));
    return exts;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string density_csv(const std::vector<DensityRow>& rows) {
    std::ostringstream out;
    out << "B,total,hnp_fail,wa_hold,lambda_hold,hnp_fail_ratio,wa_hold_ratio,lambda_ratio\n";
    for (auto& r : rows) {
        out << r.bound << ',' << r.total << ',' << r.hnp_fail << ',' << r.wa_hold << ','
            << r.lambda_hold << ',' << format_double(r.hnp_fail_ratio.to_double()) << ','
            << format_double(r.wa_hold_ratio.to_double()) << ','
            << format_double(r.lambda_ratio.to_double()) << "\n";
    }
    return out.str();
}

inline std::string tauber_csv(const TauberFit& fit) {
    std::ostringstream out;
    out << "B,count,normalized\n";
    for (auto& p : fit.points)
        out << p.bound << ',' << p.count << ',' << format_double(p.normalized) << "\n";
    out << "# stability," << format_double(fit.stability) << "\n";
    return out.str();
}

inline std::string cancellation_csv(const CancellationReport& rep) {
    std::ostringstream out;
    out << "B,count_h,count_j,diff,normalized\n";
    for (auto& r : rep.rows)
        out << r.bound << ',' << r.count_h << ',' << r.count_j << ',' << r.diff << ','
            << format_double(r.normalized) << "\n";
    return out.str();
}

inline json poisson_json(const PoissonReport& rep) {
    json j;
    j["s"] = rep.s;
    j["X"] = rep.X;
    j["P"] = rep.P;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["lhs_terms"] = rep.lhs_terms;
    j["tail_lhs"] = rep.tail_lhs;
    j["tail_rhs"] = rep.tail_rhs;
    j["discrepancy"] = rep.discrepancy;
    j["rel_discrepancy"] = rep.rel_discrepancy;
    return j;
}

inline json moebius_json(const MoebiusInversionReport& rep) {
    json j;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["equal"] = rep.equal;
    json terms = json::array();
    for (auto& t : rep.terms) {
        json tj;
        tj["subgroup"] = t.subgroup;
        tj["order"] = t.order;
        tj["mu"] = t.mu;
        tj["count"] = t.count;
        terms.push_back(tj);
    }
    j["terms"] = terms;
    return j;
}

} // namespace hnpcount
