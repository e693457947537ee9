/**************************************************************************
 * topology.hpp
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
#include <bit>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "codes.hpp"
#include "error.hpp"
#include "pattern.hpp"

namespace mrgrid {

using Permutation = std::vector<std::size_t>;

inline constexpr double kEnumerationCap = 1e7;

/// All regular patterns with exactly max_pattern_size(topo) cells, in
/// lexicographic order of their flat cell lists.
inline std::vector<ErasurePattern> enumerate_regular_max(const GridTopology& topo, double cap = kEnumerationCap) {
    const std::size_t cells = topo.cells();
    const std::size_t size = max_pattern_size(topo);
    if (binomial(cells, size) > cap) {
        throw Error(ErrorCode::kEnumerationTooLarge, "C(" + std::to_string(cells) + ", " + std::to_string(size) +
                                                         ") exceeds the enumeration cap");
    }
    const RegularityChecker regular(topo);
    std::vector<ErasurePattern> out;
    if (cells <= 64) {
        for_each_subset(cells, size, [&](const IndexSet& s) {
            std::uint64_t mask = 0;
            for (auto f : s) mask |= std::uint64_t{1} << f;
            if (regular(mask)) out.emplace_back(topo.m, topo.n, s);
            return true;
        });
    } else {
        for_each_subset(cells, size, [&](const IndexSet& s) {
            ErasurePattern e(topo.m, topo.n, s);
            if (regular(e)) out.push_back(std::move(e));
            return true;
        });
    }
    return out;
}

/// Whether some inclusion-maximal regular pattern is smaller than
/// max_pattern_size. Decided by enumerating all 2^(mn) patterns, so returns
/// nullopt when that exceeds `cap`.
inline std::optional<bool> smaller_maximal_regular_exists(const GridTopology& topo, double cap = 1 << 22) {
    const std::size_t cells = topo.cells();
    if (cells > 40 || static_cast<double>(std::uint64_t{1} << cells) > cap) return std::nullopt;
    const RegularityChecker regular(topo);
    const std::size_t target = max_pattern_size(topo);
    const std::uint64_t total = std::uint64_t{1} << cells;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) >= target || !regular(mask)) continue;
        bool maximal = true;
        for (std::size_t f = 0; f < cells && maximal; ++f) {
            const std::uint64_t bit = std::uint64_t{1} << f;
            if (!(mask & bit) && regular(mask | bit)) maximal = false;
        }
        if (maximal) return true;
    }
    return false;
}

/// The 16-cell regular pattern of T_{5x5}(2,2,0) that no code corrects, with
/// rows and columns relabelled by the given permutations:
///
///     . * * * *
///     * * * . .
///     * * * . .
///     * . . * *
///     * . . * *
inline ErasurePattern counterexample_pattern(const Permutation& row_perm, const Permutation& col_perm) {
    static const std::vector<std::pair<std::size_t, std::size_t>> base = {
        {0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 0}, {1, 1}, {1, 2}, {2, 0},
        {2, 1}, {2, 2}, {3, 0}, {3, 3}, {3, 4}, {4, 0}, {4, 3}, {4, 4},
    };
    return ErasurePattern::from_cells(5, 5, base).permuted(row_perm, col_perm);
}

inline Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

inline ErasurePattern counterexample_pattern() {
    return counterexample_pattern(identity_permutation(5), identity_permutation(5));
}

struct OrbitMember {
    ErasurePattern pattern;
    Permutation row_perm;
    Permutation col_perm;
};

/// Distinct row/column permutations of the counterexample, sorted by pattern;
/// each carries the lexicographically first permutation pair producing it.
inline const std::vector<OrbitMember>& counterexample_orbit() {
    static const std::vector<OrbitMember> orbit = [] {
        std::map<ErasurePattern, std::pair<Permutation, Permutation>> seen;
        Permutation rows = identity_permutation(5);
        do {
            Permutation cols = identity_permutation(5);
            do {
                seen.try_emplace(counterexample_pattern(rows, cols), rows, cols);
            } while (std::next_permutation(cols.begin(), cols.end()));
        } while (std::next_permutation(rows.begin(), rows.end()));
        std::vector<OrbitMember> out;
        for (auto& [pattern, perms] : seen) out.push_back({pattern, perms.first, perms.second});
        return out;
    }();
    return orbit;
}

/// Permutations producing e from the counterexample, if e lies in its orbit.
inline std::optional<std::pair<Permutation, Permutation>> find_counterexample_perms(const ErasurePattern& e) {
    if (e.rows() != 5 || e.cols() != 5 || e.size() != 16) return std::nullopt;
    const auto& orbit = counterexample_orbit();
    auto it = std::lower_bound(orbit.begin(), orbit.end(), e,
                               [](const OrbitMember& m, const ErasurePattern& p) { return m.pattern < p; });
    if (it == orbit.end() || it->pattern != e) return std::nullopt;
    return std::make_pair(it->row_perm, it->col_perm);
}

struct LiftResult {
    GridTopology target;
    ErasurePattern pattern;
    bool padded = false;
    /// Set when padding to maximal size could not keep the pattern regular.
    bool padding_failed = false;
};

/// Places E in a (m + delta) x (n + gamma) grid with the same (a, b).
///
/// With pad_to_maximal, each new row receives b erasures in the original
/// columns and each new column a erasures in the original rows, scanning
/// left-to-right / top-to-bottom and skipping cells that would break
/// regularity. On failure the unpadded pattern is returned with
/// padding_failed set.
inline LiftResult lift_extend(const GridTopology& base, const ErasurePattern& e, std::size_t delta, std::size_t gamma,
                              bool pad_to_maximal) {
    if (e.rows() != base.m || e.cols() != base.n) throw Error(ErrorCode::kShapeMismatch, "pattern shape differs from topology");
    const GridTopology target{base.m + delta, base.n + gamma, base.a, base.b, 0};
    const ErasurePattern lifted = e.rebound(target.m, target.n);
    if (!pad_to_maximal || (delta == 0 && gamma == 0)) return {target, lifted, false, false};

    const RegularityChecker regular(target);
    IndexSet cells = lifted.flat();
    auto try_add = [&](std::size_t r, std::size_t c) {
        IndexSet trial = cells;
        trial.push_back(r * target.n + c);
        if (!regular(ErasurePattern(target.m, target.n, trial))) return false;
        cells = std::move(trial);
        return true;
    };
    bool ok = true;
    for (std::size_t r = base.m; r < target.m && ok; ++r) {
        std::size_t placed = 0;
        for (std::size_t c = 0; c < base.n && placed < base.b; ++c) placed += try_add(r, c) ? 1 : 0;
        ok = placed == base.b;
    }
    for (std::size_t c = base.n; c < target.n && ok; ++c) {
        std::size_t placed = 0;
        for (std::size_t r = 0; r < base.m && placed < base.a; ++r) placed += try_add(r, c) ? 1 : 0;
        ok = placed == base.a;
    }
    if (!ok) return {target, lifted, false, true};
    return {target, ErasurePattern(target.m, target.n, cells), true, false};
}

/// E together with delta fully erased new rows and gamma fully erased new
/// columns, for the topology T_{(m+delta) x (n+gamma)}(a+delta, b+gamma, 0).
inline LiftResult lift_puncture(const GridTopology& base, const ErasurePattern& e, std::size_t delta, std::size_t gamma) {
    if (e.rows() != base.m || e.cols() != base.n) throw Error(ErrorCode::kShapeMismatch, "pattern shape differs from topology");
    const GridTopology target{base.m + delta, base.n + gamma, base.a + delta, base.b + gamma, 0};
    IndexSet cells = e.rebound(target.m, target.n).flat();
    for (std::size_t r = 0; r < target.m; ++r) {
        for (std::size_t c = 0; c < target.n; ++c) {
            if (r >= base.m || c >= base.n) cells.push_back(r * target.n + c);
        }
    }
    ErasurePattern lifted(target.m, target.n, std::move(cells));
    if (is_regular(base, e) && !is_regular(target, lifted)) {
        throw std::logic_error("lift_puncture produced a non-regular pattern from a regular one");
    }
    return {target, std::move(lifted), false, false};
}

/// One way of writing a pattern as E' u I with E' maximal for h = 0 and |I| = h.
struct GlobalDecomposition {
    std::size_t base_index;  // into the emax0 list
    IndexSet extra;          // I, flat indices outside E'
    ErasurePattern pattern;  // E' u I
};

/// Every (E', I) pair with E' in emax0 and I a size-h subset of its complement.
inline std::vector<GlobalDecomposition> emax_global_decompositions(const std::vector<ErasurePattern>& emax0,
                                                                   const GridTopology& topo) {
    std::vector<GlobalDecomposition> out;
    for (std::size_t i = 0; i < emax0.size(); ++i) {
        const IndexSet free = emax0[i].survivors();
        for_each_subset(free.size(), topo.h, [&](const IndexSet& pick) {
            IndexSet extra;
            for (auto p : pick) extra.push_back(free[p]);
            out.push_back({i, extra, emax0[i].united(ErasurePattern(topo.m, topo.n, extra))});
            return true;
        });
    }
    return out;
}

/// Deduplicated, sorted {E' u I}.
inline std::vector<ErasurePattern> emax_global(const std::vector<ErasurePattern>& emax0, const GridTopology& topo) {
    if (topo.h == 0) return emax0;
    std::set<ErasurePattern> unique;
    for (auto& d : emax_global_decompositions(emax0, topo)) unique.insert(std::move(d.pattern));
    return {unique.begin(), unique.end()};
}

}  // namespace mrgrid
