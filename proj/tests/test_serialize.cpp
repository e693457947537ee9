/**************************************************************************
 * test_serialize.cpp
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

#include "mrgrid/kernel.hpp"
#include "mrgrid/serialize.hpp"
#include "mrgrid/topology.hpp"

using namespace mrgrid;

TEST(Json, FieldRoundTrip) {
    for (const auto& f : {make_field(2, 3), make_field(13, 1), make_field(2, 12, std::nullopt, 3)}) {
        const Json j = to_json(*f);
        EXPECT_TRUE(field_from_json(Json::parse(j.dump()))->same_as(*f));
    }
    EXPECT_EQ(to_json(*make_field(2, 3)).at("modulus"), Json::parse("[1,1,0,1]"));
}

TEST(Json, MatrixAndCodeRoundTrip) {
    const auto f = make_field(3, 2);
    std::mt19937_64 rng(1);
    const LinearCode c = random_code(f, 6, 3, rng);
    const LinearCode back = code_from_json(Json::parse(dump(to_json(c))));
    EXPECT_EQ(back.generator().data(), c.generator().data());
    EXPECT_TRUE(back.field()->same_as(*f));
    const FMatrix m = c.generator();
    EXPECT_EQ(matrix_from_json(to_json(m)).data(), m.data());
    Json bad = to_json(c);
    bad["k"] = 2;
    EXPECT_THROW(code_from_json(bad), Error);
    bad = to_json(c);
    bad["generator"][0][0] = 9;
    EXPECT_THROW(code_from_json(bad), Error);
}

TEST(Json, PatternFormat) {
    const ErasurePattern e = counterexample_pattern();
    const Json j = to_json(e);
    EXPECT_EQ(j.at("cells").front(), Json::parse("[1,2]"));
    EXPECT_EQ(j.at("cells").size(), 16U);
    EXPECT_EQ(pattern_from_json(j), e);
    EXPECT_THROW(pattern_from_json(Json::parse(R"({"m":2,"n":2,"cells":[[0,1]]})")), Error);
    EXPECT_THROW(pattern_from_json(Json::parse(R"({"m":2,"n":2,"cells":[[3,1]]})")), Error);
}

TEST(Json, KernelCodewordSteps) {
    const auto f = make_field(2, 3);
    std::mt19937_64 rng(2);
    const KernelCodeword kc = kernel_codeword(random_mds_code(f, 5, 3, rng), random_mds_code(f, 5, 3, rng), FieldElement(f, 1));
    const Json j = to_json(kc);
    ASSERT_EQ(j.at("steps").size(), 7U);
    EXPECT_EQ(j.at("steps")[0].at("label"), "a");
    EXPECT_EQ(j.at("steps")[0].at("cells")[0][0], 0);  // off the pattern
    EXPECT_TRUE(j.at("steps")[0].at("cells")[0][1].is_null());
    EXPECT_EQ(j.at("steps")[0].at("cells")[1][0], 1);
    EXPECT_EQ(j.at("row_perm"), Json::parse("[1,2,3,4,5]"));
}

TEST(Json, DumpIsCanonical) {
    const Json j = Json::parse(R"({"b":1,"a":[1,2]})");
    EXPECT_EQ(dump(j), "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 1\n}\n");
}

TEST(Csv, QuotingRoundTrip) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    const std::string text = "x,\"a,b\",\"line\r\nbreak\"\r\n\"q\"\"q\",,end\n";
    const auto rows = parse_csv(text);
    ASSERT_EQ(rows.size(), 2U);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "a,b", "line\r\nbreak"}));
    EXPECT_EQ(rows[1], (std::vector<std::string>{"q\"q", "", "end"}));
    EXPECT_THROW(parse_csv("\"open"), Error);
}

TEST(Csv, CensusRoundTrip) {
    const auto patterns = enumerate_regular_max({2, 2, 1, 1, 0});
    std::vector<CensusEntry> rows;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        rows.push_back({i + 1, patterns[i], true, i % 2 ? std::optional(Status::kCorrectable) : std::nullopt, i, "ref,with comma", 7});
    }
    const std::string text = census_csv(rows);
    EXPECT_EQ(text.substr(0, text.find("\r\n")), "pattern_id,cells,regular,verdict,trials,certificate_ref,seed");
    const auto back = parse_census(text, 2, 2);
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(back[i].pattern, rows[i].pattern);
        EXPECT_EQ(back[i].status, rows[i].status);
        EXPECT_EQ(back[i].trials, rows[i].trials);
        EXPECT_EQ(back[i].certificate_ref, rows[i].certificate_ref);
        EXPECT_EQ(back[i].seed, 7U);
    }
    EXPECT_TRUE(parse_census("", 2, 2).empty());
    EXPECT_THROW(parse_census("wrong,header\r\n", 2, 2), Error);
    EXPECT_THROW(status_from_string("Maybe"), Error);
}
