/**************************************************************************
 * test_kernel.cpp
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

#include <gtest/gtest.h>

#include <random>

#include "mrgrid/codes.hpp"
#include "mrgrid/kernel.hpp"
#include "mrgrid/topology.hpp"

using namespace mrgrid;

namespace {

bool rows_in(const LinearCode& c, const FMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!contains(c, a.row(i))) return false;
    }
    return true;
}

}  // namespace

class KernelFields : public ::testing::TestWithParam<const char*> {};

TEST_P(KernelFields, RandomMdsPairs) {
    const std::string spec = GetParam();
    const auto f = spec == "2^3" ? make_field(2, 3) : spec == "13" ? make_field(13, 1) : make_field(2, 4);
    std::mt19937_64 rng(f->order());
    const ErasurePattern e = counterexample_pattern();
    for (int it = 0; it < 100; ++it) {
        const LinearCode col = random_mds_code(f, 5, 3, rng), row = random_mds_code(f, 5, 3, rng);
        const KernelCodeword kc = kernel_codeword(col, row, FieldElement(f, random_nonzero(*f, rng)));
        ASSERT_TRUE(rows_in(row, kc.array));
        ASSERT_TRUE(rows_in(col, transpose(kc.array)));
        for (std::size_t r = 0; r < 5; ++r) {
            for (std::size_t c = 0; c < 5; ++c) ASSERT_EQ(kc.array(r, c) != 0, e.contains(r, c));
        }
        const KernelCheck check = check_kernel_array(col, row, e, kc.array);
        ASSERT_TRUE(check.valid() && check.support_exact);
        ASSERT_FALSE(corrects(product_code(col, row), e));
        ASSERT_EQ(kc.steps.size(), 7U);
        ASSERT_EQ(kc.steps.front().label, 'a');
        ASSERT_EQ(kc.steps.back().label, 'g');
        for (const auto& cell : kc.steps.back().cells) ASSERT_TRUE(cell.has_value());
    }
}

INSTANTIATE_TEST_SUITE_P(Fields, KernelFields, ::testing::Values("2^3", "13", "2^4"));

TEST(Kernel, DeterministicAndLinearInTheFreeValue) {
    const auto f = make_field(2, 8);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 20; ++it) {
        const LinearCode col = random_rs_code(f, 5, 3, rng), row = random_rs_code(f, 5, 3, rng);
        const Symbol v = random_nonzero(*f, rng), s = random_nonzero(*f, rng);
        const FMatrix a = kernel_codeword(col, row, FieldElement(f, v)).array;
        EXPECT_EQ(a.data(), kernel_codeword(col, row, FieldElement(f, v)).array.data());
        const FMatrix b = kernel_codeword(col, row, FieldElement(f, f->mul(v, s))).array;
        for (std::size_t i = 0; i < 25; ++i) EXPECT_EQ(b.data()[i], f->mul(a.data()[i], s));
    }
}

TEST(Kernel, PermutedPatterns) {
    const auto f = make_field(13, 1);
    std::mt19937_64 rng(4);
    const auto& orbit = counterexample_orbit();
    for (int it = 0; it < 60; ++it) {
        const auto& member = orbit[rng() % orbit.size()];
        const LinearCode col = random_mds_code(f, 5, 3, rng), row = random_mds_code(f, 5, 3, rng);
        const KernelCodeword kc = kernel_codeword(col, row, FieldElement(f, 1), member.row_perm, member.col_perm);
        const KernelCheck check = check_kernel_array(col, row, member.pattern, kc.array);
        EXPECT_TRUE(check.valid() && check.support_exact);
    }
}

TEST(Kernel, Errors) {
    const auto f = make_field(2, 3);
    std::mt19937_64 rng(5);
    const LinearCode mds = random_mds_code(f, 5, 3, rng);
    EXPECT_THROW(kernel_codeword(mds, mds, FieldElement(f, 0)), Error);
    const LinearCode not_mds(FMatrix::from_rows(f, {{1, 0, 0, 1, 1}, {0, 1, 0, 1, 0}, {0, 0, 1, 0, 0}}));
    try {
        kernel_codeword(not_mds, mds, FieldElement(f, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kNotMDS);
    }
    try {
        kernel_codeword(mds, rs_code(f, 5, 2), FieldElement(f, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kNotMDS);
    }
}

TEST(Kernel, WitnessForNonRegularPatterns) {
    const auto f = make_field(2, 8);
    std::mt19937_64 rng(6);
    const LinearCode col = random_rs_code(f, 5, 3, rng), row = random_rs_code(f, 5, 3, rng);
    IndexSet block;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) block.push_back(r * 5 + c);
    }
    const ErasurePattern e(5, 5, block);
    const auto w = kernel_witness(col, row, e);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(check_kernel_array(col, row, e, *w).valid());
    EXPECT_FALSE(kernel_witness(col, row, ErasurePattern(5, 5, {0, 1, 5, 6})).has_value());
}
