/**************************************************************************
 * construct.hpp
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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "codes.hpp"
#include "error.hpp"
#include "fmatrix.hpp"
#include "gf.hpp"
#include "pattern.hpp"

namespace mrgrid {

/// m copies of the Reed-Solomon [n, n-b] code on 0..n-1, one per row of the
/// grid: corrects every pattern with at most b erasures in each row.
inline LinearCode pmds_block_code(std::size_t m, std::size_t n, std::size_t b, const FieldRef& field) {
    if (b > n) throw Error(ErrorCode::kDimensionMismatch, "b exceeds n");
    const LinearCode block = rs_code(field, n, n - b);
    FMatrix g(field, m * block.k(), m * n);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i < block.k(); ++i) {
            for (std::size_t j = 0; j < n; ++j) g(r * block.k() + i, r * n + j) = block.generator()(i, j);
        }
    }
    return LinearCode(std::move(g));
}

struct GlobalRedundancyCode {
    GridTopology topo;
    FieldRef extension;    // GF(q^s) with GF(q) designated, s = (m-a)(n-b)
    LinearCode inner;      // Gabidulin [s, s-h] over the extension
    FMatrix lifted_outer;  // outer generator mapped into the extension
    LinearCode code;       // <G_in * lifted G_out>
};

/// Extends an MR code of T(m x n; a, b, 0) over GF(q) to T(m x n; a, b, h)
/// by precoding its messages with a Gabidulin code over GF(q^s).
///
/// The locators are 1, x, ..., x^(s-1) for the polynomial generator x of the
/// extension, which are independent over GF(q) because x has degree s over it.
inline GlobalRedundancyCode add_global_redundancy(const LinearCode& outer, const GridTopology& topo) {
    topo.validate();
    const std::size_t s = topo.local_dimension();
    if (outer.n() != topo.cells() || outer.k() != s) {
        throw Error(ErrorCode::kDimensionMismatch, "outer code must be [" + std::to_string(topo.cells()) + ", " +
                                                       std::to_string(s) + "] for " + topo.to_string());
    }
    const FieldRef& base = outer.field();
    const unsigned t = base->degree();
    const FieldRef ext = make_field(base->characteristic(), static_cast<unsigned>(t * s), std::nullopt, t);

    std::vector<Symbol> locators{1};
    const Symbol x = ext->degree() > 1 ? ext->characteristic() : 1;
    while (locators.size() < s) locators.push_back(ext->mul(locators.back(), x));
    LinearCode inner = gabidulin(ext, s, s - topo.h, locators);

    const Embedding lift(base, ext);
    FMatrix lifted(ext, outer.k(), outer.n());
    for (std::size_t i = 0; i < outer.k(); ++i) {
        for (std::size_t j = 0; j < outer.n(); ++j) lifted(i, j) = lift(outer.generator()(i, j));
    }
    LinearCode code(multiply(inner.generator(), lifted));
    return {topo, ext, std::move(inner), std::move(lifted), std::move(code)};
}

}  // namespace mrgrid
