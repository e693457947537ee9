/**************************************************************************
 * codes.hpp
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
 * @file codes.hpp
 * @brief Linear codes: constructions, transforms and erasure correctability.
 *
 * A LinearCode always carries a full-rank generator. Index sets are 0-based
 * positions; an erasure pattern E is correctable iff the generator restricted
 * to the surviving positions still has rank k.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fmatrix.hpp"
#include "gf.hpp"
#include "pattern.hpp"

#if !defined(NDEBUG) || defined(MRGRID_CROSSCHECK)
#define MRGRID_CROSSCHECK_ENABLED 1
#else
#define MRGRID_CROSSCHECK_ENABLED 0
#endif

namespace mrgrid {

using Word = std::vector<Symbol>;

class LinearCode {
public:
    /// Throws RankDeficient unless the generator has full row rank.
    explicit LinearCode(FMatrix generator) : gen_(std::move(generator)) {
        if (rank(gen_) != gen_.rows()) throw Error(ErrorCode::kRankDeficient, "generator rows are dependent");
    }

    /// Row space of an arbitrary matrix; keeps the first independent rows.
    static LinearCode span(const FMatrix& m) { return LinearCode(row_basis(m), Trusted{}); }

    static LinearCode zero(FieldRef field, std::size_t n) { return LinearCode(FMatrix(std::move(field), 0, n), Trusted{}); }

    static LinearCode whole_space(FieldRef field, std::size_t n) {
        return LinearCode(FMatrix::identity(std::move(field), n), Trusted{});
    }

    const FieldRef& field() const { return gen_.field(); }
    std::size_t n() const { return gen_.cols(); }
    std::size_t k() const { return gen_.rows(); }
    const FMatrix& generator() const { return gen_; }

    Word encode(std::span<const Symbol> message) const { return row_times(message, gen_); }

private:
    struct Trusted {};
    LinearCode(FMatrix generator, Trusted) : gen_(std::move(generator)) {}

    FMatrix gen_;
};

/// (n - k) x n matrix whose right kernel is the code.
inline FMatrix parity_check(const LinearCode& c) { return right_kernel(c.generator()); }

inline bool contains(const LinearCode& c, std::span<const Symbol> word) {
    const auto syndrome = times_column(parity_check(c), word);
    return std::all_of(syndrome.begin(), syndrome.end(), [](Symbol s) { return s == 0; });
}

inline bool same_code(const LinearCode& x, const LinearCode& y) {
    return x.n() == y.n() && x.k() == y.k() && same_row_space(x.generator(), y.generator());
}

/// Generator in reduced row echelon form; [I | P] whenever the first k positions are an information set.
inline FMatrix systematic_generator(const LinearCode& c) { return rref(c.generator()).reduced; }

/// Vandermonde Reed-Solomon code: row i holds evals[j]^i.
inline LinearCode rs_code(const FieldRef& field, std::size_t n, std::size_t k, const std::vector<Symbol>& evals) {
    if (n > field->order()) throw Error(ErrorCode::kFieldTooSmall, "length exceeds field order");
    if (evals.size() != n) throw Error(ErrorCode::kShapeMismatch, "need exactly n evaluation points");
    if (k > n) throw Error(ErrorCode::kDimensionMismatch, "k exceeds n");
    std::unordered_set<Symbol> seen(evals.begin(), evals.end());
    if (seen.size() != n) throw Error(ErrorCode::kDuplicateEvaluationPoints, "evaluation points repeat");
    FMatrix g(field, k, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!field->contains(evals[j])) throw Error(ErrorCode::kIndexOutOfRange, "evaluation point outside the field");
        Symbol v = 1;
        for (std::size_t i = 0; i < k; ++i) {
            g(i, j) = v;
            v = field->mul(v, evals[j]);
        }
    }
    return LinearCode(std::move(g));
}

/// Reed-Solomon code on the points 0, 1, ..., n-1 (as symbols).
inline LinearCode rs_code(const FieldRef& field, std::size_t n, std::size_t k) {
    if (n > field->order()) throw Error(ErrorCode::kFieldTooSmall, "length exceeds field order");
    std::vector<Symbol> evals(n);
    for (std::size_t j = 0; j < n; ++j) evals[j] = j;
    return rs_code(field, n, k, evals);
}

/// k x n Moore matrix, row i holding locators[j]^(q^i).
inline FMatrix moore_matrix(const FieldRef& field, std::size_t k, const std::vector<Symbol>& locators) {
    FMatrix g(field, k, locators.size());
    for (std::size_t j = 0; j < locators.size(); ++j) {
        Symbol v = locators[j];
        for (std::size_t i = 0; i < k; ++i) {
            g(i, j) = v;
            v = field->frobenius(v, 1);
        }
    }
    return g;
}

/// True iff the elements are linearly independent over the designated subfield GF(q).
///
/// Elements g_1..g_n are GF(q)-independent iff the products beta_j g_i, with
/// beta_j running over a GF(p)-basis of GF(q), are GF(p)-independent; the
/// latter is a rank test on their coefficient vectors.
inline bool independent_over_subfield(const FieldRef& field, const std::vector<Symbol>& elements) {
    const auto& basis = field->subfield_basis();
    const auto prime = make_field(field->characteristic(), 1);
    FMatrix expansion(prime, elements.size() * basis.size(), field->degree());
    std::size_t r = 0;
    for (auto g : elements) {
        for (auto beta : basis) {
            const auto coeffs = field->coefficients(field->mul(beta, g));
            for (std::size_t c = 0; c < coeffs.size(); ++c) expansion(r, c) = coeffs[c];
            ++r;
        }
    }
    return rank(expansion) == expansion.rows();
}

/// Gabidulin code Gab(n, k, g) over a field with a designated subfield.
inline LinearCode gabidulin(const FieldRef& field, std::size_t n, std::size_t k, const std::vector<Symbol>& locators) {
    if (!field->has_subfield()) throw Error(ErrorCode::kNoDesignatedSubfield, field->describe() + " has no designated subfield");
    if (n > field->extension_degree()) {
        throw Error(ErrorCode::kLengthExceedsExtensionDegree, "n = " + std::to_string(n) + " exceeds s = " +
                                                                  std::to_string(field->extension_degree()));
    }
    if (locators.size() != n) throw Error(ErrorCode::kShapeMismatch, "need exactly n locators");
    if (k > n) throw Error(ErrorCode::kDimensionMismatch, "k exceeds n");
    if (!independent_over_subfield(field, locators)) {
        throw Error(ErrorCode::kDependentLocators, "locators are dependent over the subfield");
    }
    return LinearCode(moore_matrix(field, k, locators));
}

inline LinearCode dual(const LinearCode& c) { return LinearCode(parity_check(c)); }

/// Codewords vanishing on I, restricted to the remaining positions.
inline LinearCode shorten(const LinearCode& c, const IndexSet& removed) {
    const IndexSet kept = complement(removed, c.n());
    // messages x with x G|_I = 0 form the left kernel of G|_I
    const FMatrix combos = right_kernel(transpose(restrict_cols(c.generator(), removed)));
    if (combos.rows() == 0) return LinearCode::zero(c.field(), kept.size());
    return LinearCode::span(multiply(combos, restrict_cols(c.generator(), kept)));
}

/// Codewords with positions I deleted.
inline LinearCode puncture(const LinearCode& c, const IndexSet& removed) {
    return LinearCode::span(restrict_cols(c.generator(), complement(removed, c.n())));
}

/// E is correctable iff rank(G restricted to the survivors) = k.
inline bool corrects(const LinearCode& c, const IndexSet& erased) {
    const bool by_rank = rank(restrict_cols(c.generator(), complement(erased, c.n()))) == c.k();
#if MRGRID_CROSSCHECK_ENABLED
    const bool by_shortening = shorten(c, complement(erased, c.n())).k() == 0;
    if (by_rank != by_shortening) throw std::logic_error("corrects: rank and shortening criteria disagree");
#endif
    return by_rank;
}

inline bool corrects(const LinearCode& c, const ErasurePattern& e) {
    if (e.rows() * e.cols() != c.n()) throw Error(ErrorCode::kShapeMismatch, "pattern size differs from code length");
    return corrects(c, e.flat());
}

inline bool is_information_set(const LinearCode& c, const IndexSet& positions) {
    if (positions.size() != c.k()) throw Error(ErrorCode::kWrongSize, "information sets have exactly k positions");
    return rank(restrict_cols(c.generator(), positions)) == c.k();
}

inline double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

/// Calls f on every k-subset of [0, n) in lexicographic order until f returns false.
template <class F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return true;
    IndexSet idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!f(static_cast<const IndexSet&>(idx))) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline constexpr double kMdsEnumerationCap = 1e6;

/// Every k-subset is an information set.
inline bool is_mds(const LinearCode& c, double cap = kMdsEnumerationCap) {
    if (binomial(c.n(), c.k()) > cap) throw Error(ErrorCode::kTooLargeToEnumerate, "too many k-subsets");
    return for_each_subset(c.n(), c.k(), [&](const IndexSet& s) { return is_information_set(c, s); });
}

/// <G_col (x) G_row>; codeword (i, j) sits at flat index i * n + j.
inline LinearCode product_code(const LinearCode& col, const LinearCode& row) {
    require_same_field(*col.field(), *row.field());
    return LinearCode(kron(col.generator(), row.generator()));
}

struct GridCode {
    GridTopology topo;
    LinearCode col_code;
    LinearCode row_code;
    FMatrix h_global;
    LinearCode code;
};

/// Code with parity-check matrix [H_local; H_global], H_local checking col (x) row.
inline GridCode grid_code(const LinearCode& col, const LinearCode& row, const FMatrix& h_global) {
    require_same_field(*col.field(), *row.field());
    require_same_field(*col.field(), *h_global.field());
    const std::size_t cells = col.n() * row.n();
    if (h_global.cols() != cells) {
        throw Error(ErrorCode::kShapeMismatch, "global checks need " + std::to_string(cells) + " columns");
    }
    const FMatrix h_local = parity_check(product_code(col, row));
    LinearCode code(right_kernel(vstack(h_local, h_global)));
    GridTopology topo{col.n(), row.n(), col.n() - col.k(), row.n() - row.k(), h_global.rows()};
    return {topo, col, row, h_global, std::move(code)};
}

inline GridCode grid_code(const LinearCode& col, const LinearCode& row) {
    return grid_code(col, row, FMatrix(col.field(), 0, col.n() * row.n()));
}

/// TP(col, row) = <H_col (x) H_row>^perp.
inline LinearCode tensor_product_code(const LinearCode& col, const LinearCode& row) {
    require_same_field(*col.field(), *row.field());
    return LinearCode(right_kernel(kron(parity_check(col), parity_check(row))));
}

/// Raised when an erasure pattern admits more than one completion.
class AmbiguousErasure : public Error {
public:
    AmbiguousErasure(Word first, Word second)
        : Error(ErrorCode::kAmbiguousErasure, "erased word has several completions"),
          witness_(std::move(first), std::move(second)) {}

    const std::pair<Word, Word>& witness() const { return witness_; }

private:
    std::pair<Word, Word> witness_;
};

/// Recovers the codeword agreeing with `received` outside `erased`. Values at
/// erased positions are ignored.
inline Word erasure_decode(const LinearCode& c, const Word& received, const IndexSet& erased) {
    if (received.size() != c.n()) throw Error(ErrorCode::kShapeMismatch, "word length differs from n");
    const Field& f = *c.field();
    const IndexSet known = complement(erased, c.n());
    const FMatrix sub = restrict_cols(c.generator(), known);  // k x |known|
    // Solve x * sub = received|known via the augmented system sub^T x^T = w^T.
    FMatrix aug(c.field(), known.size(), c.k() + 1);
    for (std::size_t r = 0; r < known.size(); ++r) {
        for (std::size_t i = 0; i < c.k(); ++i) aug(r, i) = sub(i, r);
        aug(r, c.k()) = received[known[r]];
    }
    const auto ech = rref(aug);
    if (!ech.pivots.empty() && ech.pivots.back() == c.k()) {
        throw Error(ErrorCode::kInconsistentWord, "surviving symbols do not belong to any codeword");
    }
    Word message(c.k(), 0);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) message[ech.pivots[r]] = ech.reduced(r, c.k());
    Word codeword = c.encode(message);
    const FMatrix ambiguity = right_kernel(transpose(sub));
    if (ambiguity.rows() > 0) {
        Word other_message = message;
        for (std::size_t i = 0; i < c.k(); ++i) other_message[i] = f.add(other_message[i], ambiguity(0, i));
        throw AmbiguousErasure(std::move(codeword), c.encode(other_message));
    }
    return codeword;
}

template <class Rng>
Symbol random_symbol(const Field& f, Rng& rng) {
    return std::uniform_int_distribution<Symbol>(0, f.order() - 1)(rng);
}

template <class Rng>
Symbol random_nonzero(const Field& f, Rng& rng) {
    return std::uniform_int_distribution<Symbol>(1, f.order() - 1)(rng);
}

/// n distinct uniformly drawn symbols.
template <class Rng>
std::vector<Symbol> random_distinct(const Field& f, std::size_t n, Rng& rng) {
    if (n > f.order()) throw Error(ErrorCode::kFieldTooSmall, "not enough field elements");
    std::vector<Symbol> out;
    std::unordered_set<Symbol> seen;
    while (out.size() < n) {
        const Symbol s = random_symbol(f, rng);
        if (seen.insert(s).second) out.push_back(s);
    }
    return out;
}

template <class Rng>
LinearCode random_rs_code(const FieldRef& field, std::size_t n, std::size_t k, Rng& rng) {
    if (n > field->order()) throw Error(ErrorCode::kFieldTooSmall, "length exceeds field order");
    return rs_code(field, n, k, random_distinct(*field, n, rng));
}

/// Uniformly random full-rank k x n generator.
template <class Rng>
LinearCode random_code(const FieldRef& field, std::size_t n, std::size_t k, Rng& rng) {
    if (k > n) throw Error(ErrorCode::kDimensionMismatch, "k exceeds n");
    while (true) {
        FMatrix g(field, k, n);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < n; ++j) g(i, j) = random_symbol(*field, rng);
        }
        if (rank(g) == k) return LinearCode(std::move(g));
    }
}

/// Random systematic [I | P] generator, resampled until MDS.
template <class Rng>
LinearCode random_mds_code(const FieldRef& field, std::size_t n, std::size_t k, Rng& rng, std::size_t max_attempts = 10000) {
    if (k > n) throw Error(ErrorCode::kDimensionMismatch, "k exceeds n");
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        FMatrix g(field, k, n);
        for (std::size_t i = 0; i < k; ++i) {
            g(i, i) = 1;
            for (std::size_t j = k; j < n; ++j) g(i, j) = random_symbol(*field, rng);
        }
        LinearCode c(std::move(g));
        if (is_mds(c)) return c;
    }
    throw Error(ErrorCode::kFieldTooSmallForMDS, "no MDS code found in " + field->describe());
}

}  // namespace mrgrid
