/**************************************************************************
 * cli.hpp
 *
 * Copyright 2026 The mrgrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

/**
 * @file cli.hpp
 * @brief Subcommands of the mrgrid tool.
 *
 * Each cmd_* writes its files into RunConfig::out, prints a short summary to
 * the given stream and returns the process exit code: 0 iff every
 * verification of the run passed. Outputs depend only on the configuration,
 * so equal configurations give byte-identical files.
 */

#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "classify.hpp"
#include "codes.hpp"
#include "construct.hpp"
#include "error.hpp"
#include "kernel.hpp"
#include "mr.hpp"
#include "pattern.hpp"
#include "serialize.hpp"
#include "topology.hpp"

namespace mrgrid::cli {

namespace fs = std::filesystem;

struct RunConfig {
    std::string topo;             // "MxN:a,b,h"
    std::string field;            // "p^d[:hex]"; empty selects the command default
    std::size_t trials = kDefaultTrials;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    fs::path out = ".";
    // classify
    std::optional<fs::path> census_in;
    // counterexample
    std::size_t pairs = 100;
    // construct
    std::string base = "pmds";    // "pmds" or a code JSON file
    // tp
    std::size_t random_instances = 5;
    // lift
    std::string pattern_in = "counterexample";
    std::string mode = "extend";  // "extend" or "puncture"
    std::size_t delta = 1;
    std::size_t gamma = 1;
    bool pad = false;
};

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::kParse, "cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void write_file(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(ErrorCode::kParse, "cannot write " + p.string());
    out << text;
}

inline FieldRef field_or(const RunConfig& cfg, const char* fallback) {
    return parse_field(cfg.field.empty() ? std::string(fallback) : cfg.field);
}

/// File-name friendly topology tag, e.g. 5x5_2-2-0.
inline std::string topo_tag(const GridTopology& t) {
    return std::to_string(t.m) + "x" + std::to_string(t.n) + "_" + std::to_string(t.a) + "-" + std::to_string(t.b) + "-" +
           std::to_string(t.h);
}

/// $MRGRID_CACHE, when set and non-empty.
inline std::optional<fs::path> cache_dir() {
    const char* env = std::getenv("MRGRID_CACHE");
    if (env == nullptr || *env == '\0') return std::nullopt;
    return fs::path(env);
}

inline bool is_counterexample_shape(const GridTopology& t) { return t.m == 5 && t.n == 5 && t.a == 2 && t.b == 2; }

/// Enumeration rows: orbit members of the 5x5 counterexample carry an
/// "orbit:" reference.
inline std::vector<CensusEntry> enumeration_rows(const GridTopology& topo, const std::vector<ErasurePattern>& patterns) {
    std::vector<CensusEntry> rows;
    rows.reserve(patterns.size());
    const bool orbit_shape = is_counterexample_shape(topo);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        CensusEntry e{i + 1, patterns[i], true, std::nullopt, 0, "", 0};
        if (orbit_shape) {
            if (auto perms = find_counterexample_perms(patterns[i])) {
                e.certificate_ref = "orbit:rows=" + permutation_string(perms->first) + ",cols=" + permutation_string(perms->second);
            }
        }
        rows.push_back(std::move(e));
    }
    return rows;
}

/// Maximal regular patterns, read from $MRGRID_CACHE when a census for the
/// topology is stored there and written to it otherwise.
inline std::vector<ErasurePattern> regular_max_patterns(const GridTopology& topo) {
    const auto cache = cache_dir();
    const fs::path file = cache ? *cache / ("census_" + topo_tag(topo.without_global()) + ".csv") : fs::path();
    if (cache && fs::exists(file)) {
        std::vector<ErasurePattern> out;
        for (auto& row : parse_census(read_file(file), topo.m, topo.n)) out.push_back(std::move(row.pattern));
        return out;
    }
    auto patterns = enumerate_regular_max(topo.without_global());
    if (cache) write_file(file, census_csv(enumeration_rows(topo, patterns)));
    return patterns;
}

// ------------------------------------------------------------- enumerate

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& log) {
    const GridTopology topo = GridTopology::parse(cfg.topo);
    const auto patterns = regular_max_patterns(topo);
    const auto rows = enumeration_rows(topo, patterns);
    write_file(cfg.out / "census.csv", census_csv(rows));

    Json summary{{"topology", cfg.topo},
                 {"pattern_size", max_pattern_size(topo)},
                 {"regular_max_count", patterns.size()}};
    const auto smaller = smaller_maximal_regular_exists(topo);
    summary["smaller_maximal_regular_exists"] = smaller ? Json(*smaller) : Json("unknown");
    bool ok = true;
    if (is_counterexample_shape(topo)) {
        std::size_t flagged = 0;
        for (const auto& r : rows) flagged += r.certificate_ref.empty() ? 0 : 1;
        summary["counterexample_orbit_flagged"] = flagged;
        ok = flagged == counterexample_orbit().size();
    }
    summary["verified"] = ok;
    write_file(cfg.out / "summary.json", dump(summary));
    log << "enumerate " << cfg.topo << ": " << patterns.size() << " regular patterns of size " << max_pattern_size(topo)
        << (ok ? "" : " [verification failed]") << '\n';
    return ok ? 0 : 1;
}

// -------------------------------------------------------------- classify

inline int cmd_classify(const RunConfig& cfg, std::ostream& log) {
    const GridTopology topo = GridTopology::parse(cfg.topo);
    const FieldRef field = field_or(cfg, "2^13");
    std::vector<ErasurePattern> patterns;
    if (cfg.census_in) {
        for (auto& row : parse_census(read_file(*cfg.census_in), topo.m, topo.n)) patterns.push_back(std::move(row.pattern));
    } else {
        patterns = regular_max_patterns(topo);
    }
    const auto census = classify_census(topo, patterns, field, cfg.trials, cfg.seed, cfg.jobs);
    write_file(cfg.out / "verdicts.csv", census_csv(census));

    std::map<std::string, std::size_t> counts{{"Correctable", 0}, {"NoCertificateFound", 0}, {"ProvenUncorrectable", 0}};
    std::set<ErasurePattern> non_correctable;
    for (const auto& r : census) {
        ++counts[std::string(to_string(*r.status))];
        if (*r.status != Status::kCorrectable) non_correctable.insert(r.pattern);
    }
    Json summary{{"topology", cfg.topo}, {"field", field_to_string(*field)}, {"trials", cfg.trials},
                 {"seed", cfg.seed},     {"patterns", census.size()},         {"counts", counts}};
    bool ok = true;
    if (is_counterexample_shape(topo) && !cfg.census_in) {
        std::set<ErasurePattern> orbit;
        for (const auto& m : counterexample_orbit()) orbit.insert(m.pattern);
        const bool equal = non_correctable == orbit;
        const bool proven = counts["ProvenUncorrectable"] == non_correctable.size();
        summary["non_correctable_equals_orbit"] = equal;
        summary["all_non_correctable_proven"] = proven;
        ok = equal && proven;
    } else if (std::min(topo.a, topo.b) <= 1) {
        // Regular patterns are known to be correctable here.
        summary["all_regular_correctable"] = non_correctable.empty();
        ok = non_correctable.empty();
    }
    summary["verified"] = ok;
    write_file(cfg.out / "summary.json", dump(summary));
    log << "classify " << cfg.topo << " over " << field->describe() << ": " << census.size() << " patterns, "
        << counts["Correctable"] << " correctable, " << counts["ProvenUncorrectable"] << " proven uncorrectable, "
        << counts["NoCertificateFound"] << " without certificate" << (ok ? "" : " [verification failed]") << '\n';
    return ok ? 0 : 1;
}

// -------------------------------------------------------- counterexample

inline int cmd_counterexample(const RunConfig& cfg, std::ostream& log) {
    const FieldRef field = field_or(cfg, "2^3");
    std::mt19937_64 rng(cfg.seed);
    const ErasurePattern e = counterexample_pattern();
    Json runs = Json::array();
    std::size_t valid = 0;
    for (std::size_t i = 0; i < cfg.pairs; ++i) {
        const LinearCode col = random_mds_code(field, 5, 3, rng);
        const LinearCode row = random_mds_code(field, 5, 3, rng);
        const FieldElement value(field, random_nonzero(*field, rng));
        const KernelCodeword kc = kernel_codeword(col, row, value);
        const KernelCheck check = check_kernel_array(col, row, e, kc.array);
        const bool corrected = corrects(product_code(col, row), e);
        const bool good = check.valid() && check.support_exact && !corrected;
        valid += good ? 1 : 0;
        Json run = to_json(kc);
        run["col_code"] = to_json(col);
        run["row_code"] = to_json(row);
        run["checks"] = {{"nonzero", check.nonzero},           {"support_exact", check.support_exact},
                         {"rows_in_row_code", check.rows_in_code}, {"cols_in_col_code", check.cols_in_code},
                         {"product_corrects_pattern", corrected}};
        run["valid"] = good;
        runs.push_back(std::move(run));
    }
    const bool ok = valid == cfg.pairs;
    write_file(cfg.out / "counterexample.json",
               dump({{"field", field_to_string(*field)},
                     {"seed", cfg.seed},
                     {"pattern", to_json(e)},
                     {"pairs", cfg.pairs},
                     {"valid", valid},
                     {"runs", std::move(runs)}}));
    log << "counterexample over " << field->describe() << ": " << valid << "/" << cfg.pairs << " valid kernel witnesses\n";
    return ok ? 0 : 1;
}

// ------------------------------------------------------------- construct

struct ConstructReport {
    std::size_t dimension = 0;
    std::size_t expected_dimension = 0;
    std::size_t decompositions = 0;
    std::size_t corrected = 0;
    std::size_t mds_restrictions = 0;
    std::size_t base_patterns = 0;
    bool passed() const {
        return dimension == expected_dimension && corrected == decompositions && mds_restrictions == base_patterns;
    }
};

/// Checks a global-redundancy code against every (E', I) decomposition and
/// the MDS property of its restriction to each complement of E'.
inline ConstructReport verify_global_code(const GlobalRedundancyCode& g, const std::vector<ErasurePattern>& emax0,
                                          std::vector<GlobalDecomposition>* decompositions = nullptr,
                                          std::vector<bool>* outcomes = nullptr) {
    ConstructReport r;
    r.dimension = g.code.k();
    r.expected_dimension = g.topo.local_dimension() - g.topo.h;
    auto decs = emax_global_decompositions(emax0, g.topo);
    r.decompositions = decs.size();
    for (const auto& d : decs) {
        const bool ok = corrects(g.code, d.pattern);
        r.corrected += ok ? 1 : 0;
        if (outcomes) outcomes->push_back(ok);
    }
    r.base_patterns = emax0.size();
    for (const auto& e : emax0) r.mds_restrictions += is_mds(puncture(g.code, e.flat())) ? 1 : 0;
    if (decompositions) *decompositions = std::move(decs);
    return r;
}

inline int cmd_construct(const RunConfig& cfg, std::ostream& log) {
    const GridTopology topo = GridTopology::parse(cfg.topo);
    LinearCode base = [&] {
        if (cfg.base == "pmds") {
            if (topo.a != 0) throw Error(ErrorCode::kInvalidTopology, "the pmds base needs a = 0");
            return pmds_block_code(topo.m, topo.n, topo.b, field_or(cfg, "2^3"));
        }
        return code_from_json(Json::parse(read_file(cfg.base)));
    }();

    // Maximal patterns the base code handles; for an MR base these are all
    // correctable maximal patterns.
    const auto regular = regular_max_patterns(topo);
    std::vector<ErasurePattern> emax0;
    for (const auto& e : regular) {
        if (corrects(base, e)) emax0.push_back(e);
    }
    const std::size_t base_misses = regular.size() - emax0.size();

    const GlobalRedundancyCode g = add_global_redundancy(base, topo);
    std::vector<GlobalDecomposition> decs;
    std::vector<bool> outcomes;
    const ConstructReport r = verify_global_code(g, emax0, &decs, &outcomes);

    std::string matrix = "pattern_id,base_index,extra,cells,corrected\r\n";
    for (std::size_t i = 0; i < decs.size(); ++i) {
        const ErasurePattern extra(topo.m, topo.n, decs[i].extra);
        matrix += std::to_string(i + 1) + ',' + std::to_string(decs[i].base_index + 1) + ',' +
                  csv_field(cells_json(extra).dump()) + ',' + csv_field(cells_json(decs[i].pattern).dump()) + ',' +
                  (outcomes[i] ? "pass" : "fail") + "\r\n";
    }
    write_file(cfg.out / "verification.csv", matrix);
    write_file(cfg.out / "code.json", dump({{"topology", cfg.topo},
                                            {"extension", to_json(*g.extension)},
                                            {"inner", to_json(g.inner)},
                                            {"code", to_json(g.code)}}));
    const bool ok = r.passed();
    write_file(cfg.out / "summary.json",
               dump({{"topology", cfg.topo},
                     {"base", cfg.base},
                     {"base_field", field_to_string(*base.field())},
                     {"extension_field", field_to_string(*g.extension)},
                     {"dimension", r.dimension},
                     {"expected_dimension", r.expected_dimension},
                     {"base_maximal_patterns", emax0.size()},
                     {"regular_patterns_missed_by_base", base_misses},
                     {"decompositions", r.decompositions},
                     {"distinct_patterns", emax_global(emax0, topo).size()},
                     {"corrected", r.corrected},
                     {"mds_restrictions", r.mds_restrictions},
                     {"verified", ok}}));
    log << "construct " << cfg.topo << ": dimension " << r.dimension << " (expected " << r.expected_dimension << "), "
        << r.corrected << "/" << r.decompositions << " patterns corrected, " << r.mds_restrictions << "/" << r.base_patterns
        << " MDS restrictions\n";
    return ok ? 0 : 1;
}

// -------------------------------------------------------------------- tp

inline Json to_json(const TpReport& r) {
    return {{"length", r.length},
            {"tp_dimension", r.tp_dimension},
            {"vacuous", r.vacuous},
            {"maximal_correctable", r.maximal_correctable.size()},
            {"complements", r.complements.size()},
            {"subset_holds", r.subset_holds},
            {"dual_is_mr", r.dual_is_mr},
            {"all_complements_correctable", r.all_complements_correctable},
            {"equality", r.equality}};
}

/// Random col [m, a] and row [n, b] codes over the prime field whose TP dual
/// is not MR for the topology; nullopt if none turns up.
template <class Rng>
std::optional<std::pair<LinearCode, LinearCode>> random_non_mr_pair(const GridTopology& topo,
                                                                    const std::vector<ErasurePattern>& emax0,
                                                                    const FieldRef& prime, Rng& rng,
                                                                    std::size_t attempts = 100) {
    for (std::size_t i = 0; i < attempts; ++i) {
        LinearCode col = random_code(prime, topo.m, topo.a, rng);
        LinearCode row = random_code(prime, topo.n, topo.b, rng);
        if (!is_mr(LinearCode(kron(col.generator(), row.generator())), emax0)) {
            return std::make_pair(std::move(col), std::move(row));
        }
    }
    return std::nullopt;
}

inline int cmd_tp(const RunConfig& cfg, std::ostream& log) {
    const GridTopology topo = GridTopology::parse(cfg.topo, false);
    const FieldRef field = field_or(cfg, "2^8");
    Json out{{"topology", cfg.topo}, {"field", field_to_string(*field)}, {"seed", cfg.seed}};
    bool ok = true;

    if (topo.a >= topo.m || topo.b >= topo.n) {
        // Whole-space factor: TP is the whole space and the topology leaves no
        // information, so both sides reduce to the empty pattern.
        const LinearCode col = topo.a >= topo.m ? LinearCode::whole_space(field, topo.m) : rs_code(field, topo.m, topo.a);
        const LinearCode row = topo.b >= topo.n ? LinearCode::whole_space(field, topo.n) : rs_code(field, topo.n, topo.b);
        const ErasurePattern full(topo.m, topo.n, complement({}, topo.cells()));
        const TpReport r = tp_correctable_check(col, row, {full});
        out["degenerate"] = to_json(r);
        out["note"] = "vacuous: TP is the whole space and only the empty pattern is correctable";
        ok = r.vacuous && r.consistent() && r.equality;
        out["verified"] = ok;
        write_file(cfg.out / "tp.json", dump(out));
        log << "tp " << cfg.topo << ": vacuous case" << (ok ? "" : " [verification failed]") << '\n';
        return ok ? 0 : 1;
    }

    const GridTopology local = topo.without_global();
    local.validate();
    const auto regular = regular_max_patterns(local);
    const auto census = classify_census(local, regular, field, cfg.trials, cfg.seed, cfg.jobs);
    std::vector<ErasurePattern> emax0;
    std::size_t unresolved = 0;
    for (const auto& r : census) {
        if (*r.status == Status::kCorrectable) emax0.push_back(r.pattern);
        if (*r.status == Status::kNoCertificateFound) ++unresolved;
    }
    out["maximal_correctable_patterns"] = emax0.size();
    out["unresolved_patterns"] = unresolved;

    const auto cert = find_mr_code(local, emax0, field, std::max<std::size_t>(cfg.trials, 50), cfg.seed);
    if (cert) {
        const TpReport r = tp_correctable_check(dual(cert->code.col_code), dual(cert->code.row_code), emax0);
        Json j = to_json(r);
        j["certificate_trial"] = cert->trial;
        out["mr_instance"] = std::move(j);
        ok = ok && r.consistent() && r.dual_is_mr && r.equality;
    } else {
        out["mr_instance"] = nullptr;
        ok = false;
    }

    std::mt19937_64 rng(cfg.seed);
    const FieldRef prime = make_field(field->characteristic(), 1);
    Json randoms = Json::array();
    for (std::size_t i = 0; i < cfg.random_instances; ++i) {
        auto pair = random_non_mr_pair(local, emax0, prime, rng);
        if (!pair) {
            randoms.push_back(nullptr);
            ok = false;
            continue;
        }
        const TpReport r = tp_correctable_check(pair->first, pair->second, emax0);
        randoms.push_back(to_json(r));
        ok = ok && r.consistent() && !r.dual_is_mr && !r.equality;
    }
    out["random_instances"] = std::move(randoms);
    out["verified"] = ok;
    write_file(cfg.out / "tp.json", dump(out));
    log << "tp " << cfg.topo << ": MR instance " << (cert ? "found" : "missing") << ", " << cfg.random_instances
        << " random instances" << (ok ? ", all checks passed" : " [verification failed]") << '\n';
    return ok ? 0 : 1;
}

// ------------------------------------------------------------------ lift

inline int cmd_lift(const RunConfig& cfg, std::ostream& log) {
    const GridTopology base = cfg.topo.empty() ? GridTopology{5, 5, 2, 2, 0} : GridTopology::parse(cfg.topo);
    const ErasurePattern e = cfg.pattern_in == "counterexample" ? counterexample_pattern()
                                                                : pattern_from_json(Json::parse(read_file(cfg.pattern_in)));
    LiftResult lifted = [&] {
        if (cfg.mode == "extend") return lift_extend(base, e, cfg.delta, cfg.gamma, cfg.pad);
        if (cfg.mode == "puncture") return lift_puncture(base, e, cfg.delta, cfg.gamma);
        throw Error(ErrorCode::kParse, "mode must be extend or puncture");
    }();
    const bool base_regular = is_regular(base, e);
    const bool regular = is_regular(lifted.target, lifted.pattern);
    Json out{{"base_topology", base.to_string()},
             {"target_topology", lifted.target.to_string()},
             {"mode", cfg.mode},
             {"delta", cfg.delta},
             {"gamma", cfg.gamma},
             {"pattern", to_json(lifted.pattern)},
             {"padded", lifted.padded},
             {"padding_failed", lifted.padding_failed},
             {"regular", regular}};
    bool ok = !base_regular || regular;
    if (cfg.trials > 0 && !cfg.field.empty()) {
        const FieldRef field = parse_field(cfg.field);
        const Verdict v = classify_pattern(lifted.target, lifted.pattern, field, cfg.trials, cfg.seed);
        out["verdict"] = {{"status", to_string(v.status())},
                          {"trials", v.trials_used()},
                          {"field", field_to_string(*field)},
                          {"seed", cfg.seed}};
    }
    out["verified"] = ok;
    write_file(cfg.out / "lifted.json", dump(out));
    log << "lift " << cfg.mode << " to " << lifted.target.to_string() << ": regular=" << (regular ? "true" : "false")
        << (lifted.padding_failed ? " (padding failed, unpadded pattern kept)" : "") << '\n';
    return ok ? 0 : 1;
}

}  // namespace mrgrid::cli
