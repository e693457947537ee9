/**************************************************************************
 * kernel.hpp
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

// Nonzero product-code words supported inside an erasure pattern. Such a word
// proves that the pattern cannot be corrected by that code pair.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "codes.hpp"
#include "error.hpp"
#include "fmatrix.hpp"
#include "pattern.hpp"
#include "topology.hpp"

namespace mrgrid {

/// Snapshot of the array after one construction step. Cells are in the
/// unpermuted frame of the counterexample, row-major; nullopt marks a cell
/// whose value is not yet determined.
struct KernelStep {
    char label;
    std::string action;
    std::vector<std::optional<Symbol>> cells;
};

struct KernelCodeword {
    FMatrix array;  // 5 x 5, rows in the row code and columns in the column code
    std::vector<KernelStep> steps;
    Permutation row_perm;
    Permutation col_perm;
    // Weight-3 codewords (1, alpha2, alpha3, 0, 0) of the row code and
    // (1, gamma2, gamma3, 0, 0) of the column code, both column-permuted.
    Symbol alpha2 = 0, alpha3 = 0, gamma2 = 0, gamma3 = 0;
};

/// Membership and support checks of a candidate kernel array.
struct KernelCheck {
    bool nonzero = false;
    bool support_inside = false;  // zero off the pattern
    bool support_exact = false;   // nonzero on every pattern cell
    bool rows_in_code = false;
    bool cols_in_code = false;

    bool valid() const { return nonzero && support_inside && rows_in_code && cols_in_code; }
};

inline KernelCheck check_kernel_array(const LinearCode& col, const LinearCode& row, const ErasurePattern& e,
                                      const FMatrix& array) {
    const std::size_t m = col.n(), n = row.n();
    if (array.rows() != m || array.cols() != n || e.rows() != m || e.cols() != n) {
        throw Error(ErrorCode::kShapeMismatch, "kernel array shape differs from the code pair");
    }
    KernelCheck out;
    out.nonzero = !array.is_zero();
    out.support_inside = out.support_exact = true;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const bool erased = e.contains(i, j);
            if (!erased && array(i, j) != 0) out.support_inside = false;
            if (erased && array(i, j) == 0) out.support_exact = false;
        }
    }
    out.rows_in_code = true;
    for (std::size_t i = 0; i < m && out.rows_in_code; ++i) out.rows_in_code = contains(row, array.row(i));
    const FMatrix t = transpose(array);
    out.cols_in_code = true;
    for (std::size_t j = 0; j < n && out.cols_in_code; ++j) out.cols_in_code = contains(col, t.row(j));
    return out;
}

/// Some nonzero word of col (x) row vanishing off E, if one exists.
inline std::optional<FMatrix> kernel_witness(const LinearCode& col, const LinearCode& row, const ErasurePattern& e) {
    const LinearCode shortened = shorten(product_code(col, row), e.survivors());
    if (shortened.k() == 0) return std::nullopt;
    FMatrix array(col.field(), col.n(), row.n());
    const auto& flat = e.flat();
    for (std::size_t i = 0; i < flat.size(); ++i) array(flat[i] / row.n(), flat[i] % row.n()) = shortened.generator()(0, i);
    return array;
}

namespace detail {

/// Column j of the result is column perm[j] of c.
inline LinearCode permute_columns(const LinearCode& c, const Permutation& perm) {
    FMatrix g(c.field(), c.k(), c.n());
    for (std::size_t i = 0; i < c.k(); ++i) {
        for (std::size_t j = 0; j < c.n(); ++j) g(i, j) = c.generator()(i, perm[j]);
    }
    return LinearCode(std::move(g));
}

/// Systematic parities P (rows: information positions 1..3) of a [5,3] MDS
/// code and the coefficients of its weight-3 word (1, x2, x3, 0, 0).
struct Weight3 {
    std::array<std::array<Symbol, 2>, 3> p{};
    Symbol x2 = 0;
    Symbol x3 = 0;
};

inline Weight3 weight3(const LinearCode& c) {
    const Field& f = *c.field();
    const auto ech = rref(c.generator());
    if (ech.pivots != IndexSet{0, 1, 2}) throw Error(ErrorCode::kNotMDS, "first three positions are not an information set");
    Weight3 w;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            w.p[i][j] = ech.reduced(i, 3 + j);
            if (w.p[i][j] == 0) throw Error(ErrorCode::kNotMDS, "zero systematic parity");
        }
    }
    // x2 p21 + x3 p31 = -p11 and x2 p22 + x3 p32 = -p12.
    const auto& p = w.p;
    const Symbol det = f.sub(f.mul(p[1][0], p[2][1]), f.mul(p[2][0], p[1][1]));
    if (det == 0) throw Error(ErrorCode::kNotMDS, "weight-3 word is not unique");
    w.x2 = f.div(f.sub(f.mul(p[2][0], p[0][1]), f.mul(p[0][0], p[2][1])), det);
    w.x3 = f.div(f.sub(f.mul(p[0][0], p[1][1]), f.mul(p[1][0], p[0][1])), det);
    if (w.x2 == 0 || w.x3 == 0) throw Error(ErrorCode::kNotMDS, "weight-3 word has weight below 3");
    return w;
}

}  // namespace detail

/// Builds the nonzero codeword of col (x) row supported exactly on
/// counterexample_pattern(row_perm, col_perm).
///
/// `value` is the entry placed at position (2, 1) of the unpermuted frame;
/// every other entry follows from it, so the array is linear in `value`.
inline KernelCodeword kernel_codeword(const LinearCode& col, const LinearCode& row, const FieldElement& value,
                                      const Permutation& row_perm, const Permutation& col_perm) {
    require_same_field(*col.field(), *row.field());
    require_same_field(*col.field(), *value.field());
    if (col.n() != 5 || col.k() != 3 || row.n() != 5 || row.k() != 3 || !is_mds(col) || !is_mds(row)) {
        throw Error(ErrorCode::kNotMDS, "kernel construction needs two [5,3] MDS codes");
    }
    if (value.is_zero()) throw Error(ErrorCode::kZeroGamma, "the seed entry must be nonzero");
    if (row_perm.size() != 5 || col_perm.size() != 5) throw Error(ErrorCode::kShapeMismatch, "permutations of 5 needed");

    const Field& f = *col.field();
    const LinearCode row_p = detail::permute_columns(row, col_perm);
    const LinearCode col_p = detail::permute_columns(col, row_perm);
    const detail::Weight3 wr = detail::weight3(row_p);
    const detail::Weight3 wc = detail::weight3(col_p);

    KernelCodeword out{FMatrix(col.field(), 5, 5), {}, row_perm, col_perm, wr.x2, wr.x3, wc.x2, wc.x3};
    const ErasurePattern base = counterexample_pattern();
    std::vector<std::optional<Symbol>> y(25);
    for (std::size_t f_idx = 0; f_idx < 25; ++f_idx) {
        if (!base.contains(f_idx / 5, f_idx % 5)) y[f_idx] = 0;
    }
    auto at = [&](std::size_t i, std::size_t j) -> std::optional<Symbol>& { return y[i * 5 + j]; };
    auto get = [&](std::size_t i, std::size_t j) {
        if (!at(i, j)) throw std::logic_error("kernel construction read an undetermined cell");
        return *at(i, j);
    };
    auto snapshot = [&](char label, std::string action) { out.steps.push_back({label, std::move(action), y}); };

    const Symbol t = value.value();
    const Symbol s = f.div(t, wc.x2);

    at(1, 0) = t;
    snapshot('a', "place the seed value at (2,1)");

    // Row 2 has zeros at positions 4 and 5, so it is a multiple of the
    // row code's weight-3 word.
    at(1, 1) = f.mul(t, wr.x2);
    at(1, 2) = f.mul(t, wr.x3);
    snapshot('b', "row 2 = (2,1) * (1, alpha2, alpha3, 0, 0)");

    // Columns 2 and 3 vanish at rows 4 and 5: multiples of the column word.
    for (std::size_t j = 1; j <= 2; ++j) {
        const Symbol mu = f.div(get(1, j), wc.x2);
        at(0, j) = mu;
        at(2, j) = f.mul(mu, wc.x3);
    }
    snapshot('c', "columns 2,3 = multiples of (1, gamma2, gamma3, 0, 0) matching row 2");

    at(2, 0) = f.div(get(2, 1), wr.x2);
    snapshot('d', "row 3 = multiple of (1, alpha2, alpha3, 0, 0) matching (3,2)");

    // Encode the first row from (1,1), (1,2), (1,3) and the first column from
    // (1,1), (2,1), (3,1).
    std::array<Symbol, 2> row1{}, col1{};
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t i = 0; i < 3; ++i) {
            row1[j] = f.add(row1[j], f.mul(get(0, i), wr.p[i][j]));
            col1[j] = f.add(col1[j], f.mul(get(i, 0), wc.p[i][j]));
        }
    }
    at(0, 3) = row1[0];
    at(0, 4) = row1[1];
    at(3, 0) = col1[0];
    at(4, 0) = col1[1];
    snapshot('e', "encode row 1 and column 1 from their information positions");

    // The encoded parities collapse to -s * p_{1,j} since the information part
    // is s * (0, alpha2, alpha3) with s = (2,1) / gamma2.
    for (std::size_t j = 0; j < 2; ++j) {
        if (row1[j] != f.neg(f.mul(s, wr.p[0][j])) || col1[j] != f.neg(f.mul(s, wc.p[0][j]))) {
            throw std::logic_error("parity substitution disagrees with the encoded value");
        }
    }
    snapshot('f', "parities equal -s * p11, -s * p12 for both codes");

    // Rows 4 and 5 vanish at positions 2 and 3: multiples of the systematic
    // row (1, 0, 0, p11, p12).
    for (std::size_t i = 3; i <= 4; ++i) {
        at(i, 3) = f.mul(get(i, 0), wr.p[0][0]);
        at(i, 4) = f.mul(get(i, 0), wr.p[0][1]);
    }
    snapshot('g', "rows 4,5 = (4,1) resp. (5,1) times (1, 0, 0, p11, p12)");

    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) out.array(row_perm[i], col_perm[j]) = get(i, j);
    }
    const KernelCheck check =
        check_kernel_array(col, row, counterexample_pattern(row_perm, col_perm), out.array);
    if (!check.valid() || !check.support_exact) throw std::logic_error("kernel construction produced an invalid array");
    return out;
}

inline KernelCodeword kernel_codeword(const LinearCode& col, const LinearCode& row, const FieldElement& value) {
    return kernel_codeword(col, row, value, identity_permutation(5), identity_permutation(5));
}

}  // namespace mrgrid
