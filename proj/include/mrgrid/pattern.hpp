/**************************************************************************
 * pattern.hpp
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
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fmatrix.hpp"

namespace mrgrid {

/// Grid-like topology T_{m x n}(a, b, h): a checks per column, b per row, h global.
struct GridTopology {
    std::size_t m = 1;
    std::size_t n = 1;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t h = 0;

    bool operator==(const GridTopology&) const = default;

    std::size_t cells() const { return m * n; }
    /// (m - a)(n - b), the dimension of the local product code.
    std::size_t local_dimension() const { return (m - a) * (n - b); }

    void validate() const {
        if (m <= a || n <= b) throw Error(ErrorCode::kInvalidTopology, "need m > a and n > b in " + to_string());
        const std::size_t k = local_dimension();
        const std::size_t cap = k - std::max(m - a, n - b);
        if (h > cap) {
            throw Error(ErrorCode::kInvalidTopology,
                        "h must not exceed (m-a)(n-b) - max(m-a, n-b) = " + std::to_string(cap));
        }
    }

    GridTopology without_global() const { return {m, n, a, b, 0}; }

    /// "MxN:a,b,h"
    std::string to_string() const {
        return std::to_string(m) + "x" + std::to_string(n) + ":" + std::to_string(a) + "," + std::to_string(b) + "," +
               std::to_string(h);
    }

    /// Parses "MxN:a,b,h" or "MxN:a,b" (h = 0); with `check`, also validates.
    static GridTopology parse(const std::string& input, bool check = true) {
        const std::size_t colon_at = input.find(':');
        const bool short_form = colon_at != std::string::npos &&
                                std::count(input.begin() + static_cast<std::ptrdiff_t>(colon_at), input.end(), ',') == 1;
        const std::string text = short_form ? input + ",0" : input;
        if (text.find_first_not_of("0123456789xX:,") != std::string::npos) {
            throw Error(ErrorCode::kParse, "topology must look like MxN:a,b,h, got '" + input + "'");
        }
        GridTopology t;
        char x = 0;
        char colon = 0;
        char c1 = 0;
        char c2 = 0;
        int consumed = 0;
        unsigned long m = 0, n = 0, a = 0, b = 0, h = 0;
        const int got = std::sscanf(text.c_str(), "%lu%c%lu%c%lu%c%lu%c%lu%n", &m, &x, &n, &colon, &a, &c1, &b, &c2, &h,
                                    &consumed);
        if (got != 9 || (x != 'x' && x != 'X') || colon != ':' || c1 != ',' || c2 != ',' ||
            static_cast<std::size_t>(consumed) != text.size()) {
            throw Error(ErrorCode::kParse, "topology must look like MxN:a,b,h, got '" + input + "'");
        }
        t = {m, n, a, b, h};
        if (check) t.validate();
        return t;
    }
};

/// Erased cells of an m x n array, held as sorted flat indices r * n + c.
class ErasurePattern {
public:
    ErasurePattern() = default;
    ErasurePattern(std::size_t m, std::size_t n) : m_(m), n_(n) {}

    ErasurePattern(std::size_t m, std::size_t n, IndexSet flat) : m_(m), n_(n), cells_(std::move(flat)) {
        std::sort(cells_.begin(), cells_.end());
        cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
        if (!cells_.empty() && cells_.back() >= m_ * n_) throw Error(ErrorCode::kIndexOutOfRange, "cell outside the grid");
    }

    static ErasurePattern from_cells(std::size_t m, std::size_t n,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& cells) {
        IndexSet flat;
        for (auto [r, c] : cells) {
            if (r >= m || c >= n) throw Error(ErrorCode::kIndexOutOfRange, "cell outside the grid");
            flat.push_back(r * n + c);
        }
        return {m, n, std::move(flat)};
    }

    static ErasurePattern from_mask(std::size_t m, std::size_t n, std::uint64_t mask) {
        IndexSet flat;
        while (mask) {
            flat.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
            mask &= mask - 1;
        }
        return {m, n, std::move(flat)};
    }

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    const IndexSet& flat() const { return cells_; }

    bool contains(std::size_t r, std::size_t c) const { return std::binary_search(cells_.begin(), cells_.end(), r * n_ + c); }

    std::vector<std::pair<std::size_t, std::size_t>> cells() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        out.reserve(cells_.size());
        for (auto f : cells_) out.emplace_back(f / n_, f % n_);
        return out;
    }

    std::uint64_t mask() const {
        if (m_ * n_ > 64) throw Error(ErrorCode::kShapeMismatch, "grid too large for a 64-bit mask");
        std::uint64_t out = 0;
        for (auto f : cells_) out |= std::uint64_t{1} << f;
        return out;
    }

    /// Non-erased cells.
    IndexSet survivors() const { return complement(cells_, m_ * n_); }

    /// Same cells placed in a larger array.
    ErasurePattern rebound(std::size_t m, std::size_t n) const {
        if (m < m_ || n < n_) throw Error(ErrorCode::kShapeMismatch, "can only rebind into a larger grid");
        IndexSet flat;
        for (auto f : cells_) flat.push_back((f / n_) * n + f % n_);
        return {m, n, std::move(flat)};
    }

    /// Cell (r, c) moves to (row_perm[r], col_perm[c]).
    ErasurePattern permuted(const std::vector<std::size_t>& row_perm, const std::vector<std::size_t>& col_perm) const {
        if (row_perm.size() != m_ || col_perm.size() != n_) throw Error(ErrorCode::kShapeMismatch, "permutation size");
        IndexSet flat;
        for (auto f : cells_) flat.push_back(row_perm[f / n_] * n_ + col_perm[f % n_]);
        return {m_, n_, std::move(flat)};
    }

    ErasurePattern united(const ErasurePattern& other) const {
        if (other.m_ != m_ || other.n_ != n_) throw Error(ErrorCode::kShapeMismatch, "pattern shapes differ");
        IndexSet flat = cells_;
        flat.insert(flat.end(), other.cells_.begin(), other.cells_.end());
        return {m_, n_, std::move(flat)};
    }

    bool includes(const ErasurePattern& other) const {
        return other.m_ == m_ && other.n_ == n_ &&
               std::includes(cells_.begin(), cells_.end(), other.cells_.begin(), other.cells_.end());
    }

    /// Rows drawn as strings of '*' (erased) and '.', top row first.
    std::string render() const {
        std::string out;
        for (std::size_t r = 0; r < m_; ++r) {
            for (std::size_t c = 0; c < n_; ++c) out += contains(r, c) ? '*' : '.';
            out += '\n';
        }
        return out;
    }

    friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;
    friend auto operator<=>(const ErasurePattern& x, const ErasurePattern& y) {
        if (auto c = x.m_ <=> y.m_; c != 0) return c;
        if (auto c = x.n_ <=> y.n_; c != 0) return c;
        return x.cells_ <=> y.cells_;
    }

private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    IndexSet cells_;
};

/// n a + m b - a b: the bound of the regularity condition on the full grid.
inline std::size_t max_pattern_size(const GridTopology& topo) {
    return topo.n * topo.a + topo.m * topo.b - topo.a * topo.b;
}

/// Regularity test for a fixed (m, n, a, b).
///
/// Subsets U of the shorter side with |U| >= its parameter are enumerated; for
/// each size v >= the other parameter, the densest choice of V is the v lines
/// with the largest counts inside U, so only that choice is compared against
/// v a + u b - a b.
class RegularityChecker {
public:
    explicit RegularityChecker(const GridTopology& topo) : topo_(topo) {
        if (topo.m == 0 || topo.n == 0) throw Error(ErrorCode::kInvalidTopology, "empty grid");
        transposed_ = topo.m > topo.n;
        outer_ = transposed_ ? topo.n : topo.m;
        inner_ = transposed_ ? topo.m : topo.n;
        outer_param_ = transposed_ ? topo.b : topo.a;
        inner_param_ = transposed_ ? topo.a : topo.b;
        if (outer_ > 24) throw Error(ErrorCode::kTooLargeToEnumerate, "grid side too long for subset enumeration");
        for (std::uint32_t u = 0; u < (std::uint32_t{1} << outer_); ++u) {
            if (static_cast<std::size_t>(std::popcount(u)) >= outer_param_) subsets_.push_back(u);
        }
        if (topo.m * topo.n <= 64) {
            line_masks_.resize(subsets_.size() * inner_, 0);
            for (std::size_t s = 0; s < subsets_.size(); ++s) {
                for (std::size_t j = 0; j < inner_; ++j) {
                    std::uint64_t mask = 0;
                    for (std::size_t i = 0; i < outer_; ++i) {
                        if (subsets_[s] >> i & 1U) mask |= std::uint64_t{1} << flat(i, j);
                    }
                    line_masks_[s * inner_ + j] = mask;
                }
            }
        }
    }

    const GridTopology& topology() const { return topo_; }

    /// Requires m * n <= 64.
    bool operator()(std::uint64_t mask) const {
        std::size_t counts[64];
        for (std::size_t s = 0; s < subsets_.size(); ++s) {
            const std::uint64_t* lines = &line_masks_[s * inner_];
            for (std::size_t j = 0; j < inner_; ++j) counts[j] = static_cast<std::size_t>(std::popcount(mask & lines[j]));
            if (!check(subsets_[s], counts)) return false;
        }
        return true;
    }

    bool operator()(const ErasurePattern& e) const {
        if (e.rows() != topo_.m || e.cols() != topo_.n) throw Error(ErrorCode::kShapeMismatch, "pattern shape differs from topology");
        if (!line_masks_.empty()) return (*this)(e.mask());
        std::vector<std::vector<std::uint8_t>> grid(outer_, std::vector<std::uint8_t>(inner_, 0));
        for (auto [r, c] : e.cells()) {
            if (transposed_) grid[c][r] = 1;
            else grid[r][c] = 1;
        }
        std::vector<std::size_t> counts(inner_);
        for (auto u : subsets_) {
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t i = 0; i < outer_; ++i) {
                if (!(u >> i & 1U)) continue;
                for (std::size_t j = 0; j < inner_; ++j) counts[j] += grid[i][j];
            }
            if (!check(u, counts.data())) return false;
        }
        return true;
    }

private:
    std::size_t flat(std::size_t outer_idx, std::size_t inner_idx) const {
        return transposed_ ? inner_idx * topo_.n + outer_idx : outer_idx * topo_.n + inner_idx;
    }

    bool check(std::uint32_t subset, std::size_t* counts) const {
        const auto u = static_cast<long long>(std::popcount(subset));
        std::sort(counts, counts + inner_, std::greater<>());
        const auto a = static_cast<long long>(outer_param_);
        const auto b = static_cast<long long>(inner_param_);
        long long sum = 0;
        for (std::size_t v = 1; v <= inner_; ++v) {
            sum += static_cast<long long>(counts[v - 1]);
            if (static_cast<long long>(v) < b) continue;
            if (sum > static_cast<long long>(v) * a + u * b - a * b) return false;
        }
        return true;
    }

    GridTopology topo_;
    bool transposed_ = false;
    std::size_t outer_ = 0;
    std::size_t inner_ = 0;
    std::size_t outer_param_ = 0;
    std::size_t inner_param_ = 0;
    std::vector<std::uint32_t> subsets_;
    std::vector<std::uint64_t> line_masks_;
};

/// |E n (U x V)| <= v a + u b - a b for all |U| = u >= a, |V| = v >= b. h is ignored.
inline bool is_regular(const GridTopology& topo, const ErasurePattern& e) { return RegularityChecker(topo)(e); }

}  // namespace mrgrid
