/**************************************************************************
 * classify.hpp
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
 * @file classify.hpp
 * @brief Correctability verdicts for erasure patterns of T(m x n; a, b, 0).
 *
 * A Correctable verdict carries a code that corrects the pattern. A
 * ProvenUncorrectable verdict carries a nonzero product-code word supported
 * inside the pattern: for non-regular patterns any code pair has one, and for
 * the 5x5 counterexample orbit it is built explicitly. Everything else ends
 * as NoCertificateFound, which is a Monte Carlo outcome.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codes.hpp"
#include "error.hpp"
#include "gf.hpp"
#include "kernel.hpp"
#include "parallel.hpp"
#include "pattern.hpp"
#include "topology.hpp"

namespace mrgrid {

inline constexpr std::size_t kDefaultTrials = 20;

/// GF(2^13), the default search field.
inline FieldRef default_search_field() { return make_field(2, 13); }

enum class Status { kCorrectable, kNoCertificateFound, kProvenUncorrectable };

inline std::string_view to_string(Status s) {
    switch (s) {
        case Status::kCorrectable: return "Correctable";
        case Status::kNoCertificateFound: return "NoCertificateFound";
        case Status::kProvenUncorrectable: return "ProvenUncorrectable";
    }
    return "?";
}

struct UncorrectabilityCertificate {
    LinearCode col_code;
    LinearCode row_code;
    FMatrix array;  // m x n
    /// Set when the array comes from kernel_codeword.
    std::optional<std::pair<Permutation, Permutation>> orbit_perms;
};

class Verdict {
public:
    static Verdict correctable(GridCode code, const ErasurePattern& e, std::size_t trials) {
        if (!corrects(code.code, e)) throw std::logic_error("Correctable verdict with a code that fails the pattern");
        Verdict v(Status::kCorrectable, trials);
        v.code_.emplace(std::move(code));
        return v;
    }

    static Verdict proven_uncorrectable(UncorrectabilityCertificate cert, const ErasurePattern& e, std::size_t trials) {
        if (!check_kernel_array(cert.col_code, cert.row_code, e, cert.array).valid()) {
            throw std::logic_error("ProvenUncorrectable verdict with an invalid kernel array");
        }
        Verdict v(Status::kProvenUncorrectable, trials);
        v.kernel_.emplace(std::move(cert));
        return v;
    }

    static Verdict no_certificate(std::size_t trials) { return Verdict(Status::kNoCertificateFound, trials); }

    Status status() const { return status_; }
    std::size_t trials_used() const { return trials_; }
    const std::optional<GridCode>& code_certificate() const { return code_; }
    const std::optional<UncorrectabilityCertificate>& kernel_certificate() const { return kernel_; }

private:
    Verdict(Status s, std::size_t trials) : status_(s), trials_(trials) {}

    Status status_;
    std::size_t trials_;
    std::optional<GridCode> code_;
    std::optional<UncorrectabilityCertificate> kernel_;
};

/// Generator seeded from the run seed and the pattern, so that every
/// classification is a function of (pattern, seed) alone.
inline std::mt19937_64 pattern_rng(std::uint64_t seed, const ErasurePattern& e) {
    std::vector<std::uint32_t> material{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                        static_cast<std::uint32_t>(e.rows()), static_cast<std::uint32_t>(e.cols())};
    for (auto f : e.flat()) material.push_back(static_cast<std::uint32_t>(f));
    std::seed_seq seq(material.begin(), material.end());
    return std::mt19937_64(seq);
}

/// rank of (G_col (x) G_row) restricted to the given flat cells.
inline std::size_t product_rank_on(const LinearCode& col, const LinearCode& row, const IndexSet& cells) {
    const Field& f = *col.field();
    const std::size_t n = row.n();
    FMatrix g(col.field(), col.k() * row.k(), cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const std::size_t i = cells[c] / n, j = cells[c] % n;
        for (std::size_t x = 0; x < col.k(); ++x) {
            const Symbol cx = col.generator()(x, i);
            for (std::size_t y = 0; y < row.k(); ++y) g(x * row.k() + y, c) = f.mul(cx, row.generator()(y, j));
        }
    }
    return rank(g);
}

inline bool product_corrects(const LinearCode& col, const LinearCode& row, const ErasurePattern& e) {
    return product_rank_on(col, row, e.survivors()) == col.k() * row.k();
}

namespace detail {

inline void check_search_inputs(const GridTopology& topo, const ErasurePattern& e, const Field& field) {
    topo.validate();
    if (topo.h != 0) throw Error(ErrorCode::kInvalidTopology, "classification works on topologies with h = 0");
    if (e.rows() != topo.m || e.cols() != topo.n) throw Error(ErrorCode::kShapeMismatch, "pattern shape differs from topology");
    if (field.order() < std::max(topo.m, topo.n)) {
        throw Error(ErrorCode::kFieldTooSmallForMDS, field.describe() + " has no MDS codes of length " +
                                                         std::to_string(std::max(topo.m, topo.n)));
    }
}

template <class Rng>
std::pair<LinearCode, LinearCode> random_rs_pair(const FieldRef& field, const GridTopology& topo, Rng& rng) {
    LinearCode col = random_rs_code(field, topo.m, topo.m - topo.a, rng);
    LinearCode row = random_rs_code(field, topo.n, topo.n - topo.b, rng);
    return {std::move(col), std::move(row)};
}

}  // namespace detail

/// Searches `trials` random Reed-Solomon pairs for a product code correcting E.
inline Verdict classify_pattern(const GridTopology& topo, const ErasurePattern& e, const FieldRef& field,
                                std::size_t trials = kDefaultTrials, std::uint64_t seed = 0) {
    detail::check_search_inputs(topo, e, *field);
    auto rng = pattern_rng(seed, e);

    if (!is_regular(topo, e)) {
        auto [col, row] = detail::random_rs_pair(field, topo, rng);
        auto array = kernel_witness(col, row, e);
        if (!array) throw std::logic_error("non-regular pattern corrected by a product code");
        return Verdict::proven_uncorrectable({std::move(col), std::move(row), std::move(*array), std::nullopt}, e, 1);
    }

    for (std::size_t t = 1; t <= trials; ++t) {
        auto [col, row] = detail::random_rs_pair(field, topo, rng);
        if (product_corrects(col, row, e)) return Verdict::correctable(grid_code(col, row), e, t);
    }

    if (topo.m == 5 && topo.n == 5 && topo.a == 2 && topo.b == 2) {
        if (auto perms = find_counterexample_perms(e)) {
            auto [col, row] = detail::random_rs_pair(field, topo, rng);
            KernelCodeword kc = kernel_codeword(col, row, FieldElement(field, 1), perms->first, perms->second);
            return Verdict::proven_uncorrectable({std::move(col), std::move(row), std::move(kc.array), std::move(*perms)},
                                                 e, trials);
        }
    }
    return Verdict::no_certificate(trials);
}

/// One census line. Certificates are reduced to a reference string; they can
/// be rebuilt by re-running classify_pattern with the same seed. Enumeration
/// output has no status yet.
struct CensusEntry {
    std::size_t id = 0;
    ErasurePattern pattern;
    bool regular = false;
    std::optional<Status> status;
    std::size_t trials = 0;
    std::string certificate_ref;
    std::uint64_t seed = 0;
};

inline std::string permutation_string(const Permutation& p) {
    std::string out;
    for (auto x : p) out += std::to_string(x + 1);
    return out;
}

inline std::string certificate_ref(const Verdict& v) {
    switch (v.status()) {
        case Status::kCorrectable: return "rs-trial:" + std::to_string(v.trials_used());
        case Status::kProvenUncorrectable: {
            const auto& perms = v.kernel_certificate()->orbit_perms;
            if (!perms) return "kernel:generic";
            return "kernel:rows=" + permutation_string(perms->first) + ",cols=" + permutation_string(perms->second);
        }
        case Status::kNoCertificateFound: return "";
    }
    return "";
}

/// Classifies every pattern; output order follows the input order.
inline std::vector<CensusEntry> classify_census(const GridTopology& topo, const std::vector<ErasurePattern>& patterns,
                                                const FieldRef& field, std::size_t trials, std::uint64_t seed,
                                                std::size_t jobs = 1) {
    std::vector<CensusEntry> out(patterns.size());
    const RegularityChecker regular(topo);
    parallel_for(patterns.size(), jobs, [&](std::size_t i) {
        const Verdict v = classify_pattern(topo, patterns[i], field, trials, seed);
        out[i] = {i + 1, patterns[i], regular(patterns[i]), v.status(), v.trials_used(), certificate_ref(v), seed};
    });
    return out;
}

}  // namespace mrgrid
