/**************************************************************************
 * fmatrix.hpp
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
 * @file fmatrix.hpp
 * @brief Dense matrices over a runtime finite field.
 *
 * Storage is row-major with 0-based indices. A cell (i, j) of an m x n grid
 * is identified with flat index i * n + j throughout the library, which is
 * also the column order produced by kron().
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "gf.hpp"

namespace mrgrid {

using IndexSet = std::vector<std::size_t>;

class FMatrix {
public:
    FMatrix(FieldRef field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    FMatrix(FieldRef field, std::size_t rows, std::size_t cols, std::vector<Symbol> data)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) throw Error(ErrorCode::kShapeMismatch, "entry count does not match shape");
        for (auto v : data_) {
            if (!field_->contains(v)) throw Error(ErrorCode::kIndexOutOfRange, "symbol outside the field");
        }
    }

    static FMatrix from_rows(FieldRef field, std::initializer_list<std::initializer_list<Symbol>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        std::vector<Symbol> data;
        data.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) throw Error(ErrorCode::kShapeMismatch, "ragged rows");
            data.insert(data.end(), row.begin(), row.end());
        }
        return FMatrix(std::move(field), r, c, std::move(data));
    }

    static FMatrix identity(FieldRef field, std::size_t n) {
        FMatrix m(std::move(field), n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    const FieldRef& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Symbol& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Symbol operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    FieldElement at(std::size_t i, std::size_t j) const {
        check_index(i, j);
        return {field_, (*this)(i, j)};
    }

    void set(std::size_t i, std::size_t j, const FieldElement& v) {
        check_index(i, j);
        require_same_field(*field_, *v.field());
        (*this)(i, j) = v.value();
    }

    std::span<const Symbol> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<Symbol> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    const std::vector<Symbol>& data() const { return data_; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](Symbol v) { return v == 0; });
    }

    friend bool operator==(const FMatrix& a, const FMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_->same_as(*b.field_) && a.data_ == b.data_;
    }

private:
    void check_index(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw Error(ErrorCode::kIndexOutOfRange, "matrix index out of range");
    }

    FieldRef field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Symbol> data_;
};

inline FMatrix transpose(const FMatrix& m) {
    FMatrix t(m.field(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    }
    return t;
}

inline FMatrix multiply(const FMatrix& a, const FMatrix& b) {
    require_same_field(*a.field(), *b.field());
    if (a.cols() != b.rows()) throw Error(ErrorCode::kShapeMismatch, "inner dimensions differ");
    const Field& f = *a.field();
    FMatrix c(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const Symbol x = a(i, l);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(l, j)));
        }
    }
    return c;
}

/// Block matrix [a(i,j) * b]; cell (i, j) of a product array maps to column i * n + j.
inline FMatrix kron(const FMatrix& a, const FMatrix& b) {
    require_same_field(*a.field(), *b.field());
    const Field& f = *a.field();
    FMatrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Symbol x = a(i, j);
            if (x == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = f.mul(x, b(k, l));
                }
            }
        }
    }
    return out;
}

/// Columns of m indexed by I, in ascending index order.
inline FMatrix restrict_cols(const FMatrix& m, const IndexSet& index_set) {
    IndexSet idx = index_set;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (!idx.empty() && idx.back() >= m.cols()) throw Error(ErrorCode::kIndexOutOfRange, "column index out of range");
    FMatrix out(m.field(), m.rows(), idx.size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(i, idx[j]);
    }
    return out;
}

inline FMatrix select_rows(const FMatrix& m, const IndexSet& rows) {
    FMatrix out(m.field(), rows.size(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= m.rows()) throw Error(ErrorCode::kIndexOutOfRange, "row index out of range");
        std::copy(m.row(rows[i]).begin(), m.row(rows[i]).end(), out.row(i).begin());
    }
    return out;
}

inline FMatrix vstack(const FMatrix& top, const FMatrix& bottom) {
    require_same_field(*top.field(), *bottom.field());
    if (top.cols() != bottom.cols()) throw Error(ErrorCode::kShapeMismatch, "vstack column counts differ");
    std::vector<Symbol> data = top.data();
    data.insert(data.end(), bottom.data().begin(), bottom.data().end());
    return FMatrix(top.field(), top.rows() + bottom.rows(), top.cols(), std::move(data));
}

/// Complement of an index set within [0, n).
inline IndexSet complement(const IndexSet& index_set, std::size_t n) {
    std::vector<bool> in(n, false);
    for (auto i : index_set) {
        if (i >= n) throw Error(ErrorCode::kIndexOutOfRange, "index out of range");
        in[i] = true;
    }
    IndexSet out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in[i]) out.push_back(i);
    }
    return out;
}

struct RowEchelon {
    FMatrix reduced;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form by plain Gauss-Jordan elimination. Zero rows are
/// dropped, so reduced.rows() equals the rank.
inline RowEchelon rref(const FMatrix& m) {
    const Field& f = *m.field();
    FMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
        }
        const Symbol inv = f.inv(a(r, c));
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = f.mul(a(r, j), inv);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Symbol factor = f.neg(a(i, c));
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = f.add(a(i, j), f.mul(factor, a(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<Symbol> data(a.data().begin(), a.data().begin() + static_cast<std::ptrdiff_t>(r * a.cols()));
    return {FMatrix(m.field(), r, m.cols(), std::move(data)), std::move(pivots)};
}

inline std::size_t rank(const FMatrix& m) {
    // Forward elimination only; this is the hot path of every correctability test.
    const Field& f = *m.field();
    FMatrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != r) {
            for (std::size_t j = c; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
        }
        const Symbol inv = f.inv(a(r, c));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            const Symbol factor = f.neg(f.mul(a(i, c), inv));
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = f.add(a(i, j), f.mul(factor, a(r, j)));
        }
        ++r;
    }
    return r;
}

/// Basis of {v : M v^T = 0}, one vector per row.
inline FMatrix right_kernel(const FMatrix& m) {
    const Field& f = *m.field();
    const auto ech = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!is_pivot[c]) free_cols.push_back(c);
    }
    FMatrix k(m.field(), free_cols.size(), m.cols());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        const std::size_t fc = free_cols[t];
        k(t, fc) = 1;
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) k(t, ech.pivots[r]) = f.neg(ech.reduced(r, fc));
    }
    return k;
}

/// Rows of m that are independent of all earlier rows, in their original order.
inline FMatrix row_basis(const FMatrix& m) {
    const Field& f = *m.field();
    std::vector<std::vector<Symbol>> basis;  // reduced copies, each with a leading 1 at pivot
    std::vector<std::size_t> basis_pivots;
    IndexSet keep;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Symbol> v(m.row(i).begin(), m.row(i).end());
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Symbol x = v[basis_pivots[b]];
            if (x == 0) continue;
            const Symbol factor = f.neg(x);
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.add(v[j], f.mul(factor, basis[b][j]));
        }
        auto lead = std::find_if(v.begin(), v.end(), [](Symbol s) { return s != 0; });
        if (lead == v.end()) continue;
        const auto pivot = static_cast<std::size_t>(lead - v.begin());
        const Symbol inv = f.inv(*lead);
        for (auto& s : v) s = f.mul(s, inv);
        // keep earlier basis vectors reduced at the new pivot
        for (auto& bv : basis) {
            const Symbol x = bv[pivot];
            if (x == 0) continue;
            const Symbol factor = f.neg(x);
            for (std::size_t j = 0; j < bv.size(); ++j) bv[j] = f.add(bv[j], f.mul(factor, v[j]));
        }
        basis.push_back(std::move(v));
        basis_pivots.push_back(pivot);
        keep.push_back(i);
    }
    return select_rows(m, keep);
}

inline bool same_row_space(const FMatrix& a, const FMatrix& b) {
    require_same_field(*a.field(), *b.field());
    if (a.cols() != b.cols()) return false;
    const auto ra = rref(a);
    const auto rb = rref(b);
    return ra.reduced == rb.reduced;
}

/// x * M for a row vector x.
inline std::vector<Symbol> row_times(std::span<const Symbol> x, const FMatrix& m) {
    if (x.size() != m.rows()) throw Error(ErrorCode::kShapeMismatch, "vector length does not match rows");
    const Field& f = *m.field();
    std::vector<Symbol> out(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(x[i], m(i, j)));
    }
    return out;
}

/// M * v^T as a vector.
inline std::vector<Symbol> times_column(const FMatrix& m, std::span<const Symbol> v) {
    if (v.size() != m.cols()) throw Error(ErrorCode::kShapeMismatch, "vector length does not match columns");
    const Field& f = *m.field();
    std::vector<Symbol> out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
    }
    return out;
}

}  // namespace mrgrid
