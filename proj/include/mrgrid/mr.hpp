/**************************************************************************
 * mr.hpp
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "classify.hpp"
#include "codes.hpp"
#include "error.hpp"
#include "pattern.hpp"

namespace mrgrid {

inline bool is_mr(const LinearCode& c, const std::vector<ErasurePattern>& emax) {
    return std::all_of(emax.begin(), emax.end(), [&](const ErasurePattern& e) { return corrects(c, e); });
}

inline bool is_mr(const GridCode& c, const std::vector<ErasurePattern>& emax) { return is_mr(c.code, emax); }

struct MrCertificate {
    GridCode code;
    std::size_t trial;  // 1-based
    std::uint64_t seed;
};

/// First random Reed-Solomon pair (col [m, m-a], row [n, n-b]) whose product
/// corrects every pattern in `emax`, re-verified through is_mr.
inline std::optional<MrCertificate> find_mr_code(const GridTopology& topo, const std::vector<ErasurePattern>& emax,
                                                 const FieldRef& field, std::size_t trials, std::uint64_t seed) {
    detail::check_search_inputs(topo, ErasurePattern(topo.m, topo.n), *field);
    std::mt19937_64 rng(seed);
    for (std::size_t t = 1; t <= trials; ++t) {
        auto [col, row] = detail::random_rs_pair(field, topo, rng);
        const bool all = std::all_of(emax.begin(), emax.end(),
                                     [&](const ErasurePattern& e) { return product_corrects(col, row, e); });
        if (!all) continue;
        GridCode code = grid_code(col, row);
        if (!is_mr(code, emax)) throw std::logic_error("find_mr_code: certificate fails re-verification");
        return MrCertificate{std::move(code), t, seed};
    }
    return std::nullopt;
}

/// Whether E is correctable in the dual of C, i.e. whether E extends to an
/// information set of C. Tested as independence of the columns E of a
/// generator of C.
inline bool dual_correctable(const LinearCode& c, const IndexSet& e) {
    const IndexSet sorted = complement(complement(e, c.n()), c.n());
    const bool independent = rank(restrict_cols(c.generator(), sorted)) == sorted.size();
#if MRGRID_CROSSCHECK_ENABLED
    // Extension characterization: E grows greedily into a k-set whose
    // complement C corrects.
    bool extends = false;
    if (independent) {
        IndexSet info = sorted;
        for (std::size_t j = 0; j < c.n() && info.size() < c.k(); ++j) {
            if (std::find(info.begin(), info.end(), j) != info.end()) continue;
            IndexSet trial = info;
            trial.push_back(j);
            if (rank(restrict_cols(c.generator(), trial)) == trial.size()) info = std::move(trial);
        }
        std::sort(info.begin(), info.end());
        extends = info.size() == c.k() && corrects(c, complement(info, c.n()));
    }
    if (extends != independent) throw std::logic_error("dual_correctable: characterizations disagree");
#endif
    return independent;
}

inline constexpr double kTpEnumerationCap = 1e6;

struct TpReport {
    std::size_t length = 0;
    std::size_t tp_dimension = 0;
    bool vacuous = false;  // TP is the whole space, so only the empty pattern is correctable
    std::vector<ErasurePattern> maximal_correctable;
    std::vector<ErasurePattern> complements;
    bool subset_holds = false;  // each maximal correctable pattern lies in some complement
    bool dual_is_mr = false;    // dual(TP) corrects all of emax0
    bool all_complements_correctable = false;
    bool equality = false;

    /// Both directions of the characterization hold for this instance.
    bool consistent() const { return subset_holds && (!dual_is_mr || all_complements_correctable); }
};

/// Compares the maximal correctable patterns of TP(col, row) with the
/// complements of the maximal correctable patterns of the grid topology.
inline TpReport tp_correctable_check(const LinearCode& col, const LinearCode& row,
                                     const std::vector<ErasurePattern>& emax0) {
    const LinearCode tp = tensor_product_code(col, row);
    const LinearCode tp_dual = dual(tp);
    const std::size_t m = col.n(), n = row.n(), cells = m * n;
    TpReport r;
    r.length = cells;
    r.tp_dimension = tp.k();
    r.vacuous = tp.k() == cells;

    const std::size_t size = cells - tp.k();
    if (binomial(cells, size) > kTpEnumerationCap) throw Error(ErrorCode::kEnumerationTooLarge, "too many TP patterns");
    for_each_subset(cells, size, [&](const IndexSet& s) {
        if (corrects(tp, s)) r.maximal_correctable.emplace_back(m, n, s);
        return true;
    });

    std::set<ErasurePattern> comp;
    for (const auto& e : emax0) comp.insert(ErasurePattern(m, n, e.survivors()));
    r.complements.assign(comp.begin(), comp.end());

    r.subset_holds = std::all_of(r.maximal_correctable.begin(), r.maximal_correctable.end(), [&](const ErasurePattern& e) {
        return std::any_of(r.complements.begin(), r.complements.end(), [&](const ErasurePattern& c) { return c.includes(e); });
    });
    r.dual_is_mr = is_mr(tp_dual, emax0);
    r.all_complements_correctable = std::all_of(r.complements.begin(), r.complements.end(),
                                                [&](const ErasurePattern& c) { return corrects(tp, c); });
    r.equality = r.maximal_correctable == r.complements;
    return r;
}

}  // namespace mrgrid
