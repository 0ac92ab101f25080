// Copyright 2026 The glt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using glt::Matrix;
namespace io = glt::io;

namespace {

glt::ErrorKind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (const glt::Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return glt::ErrorKind::InvalidArgument;
}

} // namespace

TEST(MatrixCsv, RoundTripIsLossless)
{
    std::mt19937_64 rng(51);
    std::normal_distribution<double> z;
    Matrix a(7, 4);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            a(i, j) = z(rng) * std::pow(10.0, static_cast<double>(i) - 3.0);
    a(0, 0) = 0.1;
    a(1, 1) = -0.0;
    std::stringstream ss;
    io::write_matrix_csv(ss, a);
    EXPECT_EQ(io::read_matrix_csv(ss), a);
}

TEST(MatrixCsv, ParsesWhitespaceAndBlankLines)
{
    std::istringstream in("1, 2.5\n\n -3e-2 ,4\n");
    EXPECT_EQ(io::read_matrix_csv(in), (Matrix{{1, 2.5}, {-0.03, 4}}));
}

TEST(MatrixCsv, RejectsRaggedEmptyAndGarbage)
{
    EXPECT_EQ(kind_of([] {
                  std::istringstream in("1,2\n3\n");
                  io::read_matrix_csv(in);
              }),
              glt::ErrorKind::Parse);
    EXPECT_EQ(kind_of([] {
                  std::istringstream in("\n\n");
                  io::read_matrix_csv(in);
              }),
              glt::ErrorKind::Parse);
    EXPECT_EQ(kind_of([] {
                  std::istringstream in("1,abc\n");
                  io::read_matrix_csv(in);
              }),
              glt::ErrorKind::Parse);
    EXPECT_EQ(kind_of([] {
                  std::istringstream in("1,nan\n");
                  io::read_matrix_csv(in);
              }),
              glt::ErrorKind::NonFinite);
    EXPECT_THROW(io::read_matrix_csv(std::string("/nonexistent/x.csv")), glt::Error);
}

TEST(PatternCsv, RoundTripAndValidation)
{
    const glt::SparsityPattern p = fixtures::glt_left();
    std::stringstream ss;
    io::write_pattern_csv(ss, p);
    EXPECT_EQ(io::read_pattern_csv(ss), p);
    std::istringstream bad("1,2\n");
    EXPECT_THROW(io::read_pattern_csv(bad), glt::Error);
}

TEST(SignedPermutationJson, OneBasedRoundTrip)
{
    const glt::SignedPermutation sp{{2, 0, 1}, {1, -1, 1}};
    const auto j = io::to_json(sp);
    EXPECT_EQ(j.at("perm"), nlohmann::json({3, 1, 2}));
    EXPECT_EQ(io::signed_permutation_from_json(j), sp);
    EXPECT_THROW(io::signed_permutation_from_json(nlohmann::json{{"perm", {0, 1}}, {"signs", {1, 1}}}), glt::Error);
    EXPECT_THROW(io::signed_permutation_from_json(nlohmann::json{{"perm", {1, 1}}, {"signs", {1, 1}}}), glt::Error);
}

TEST(ReportJson, WitnessIsOneBased)
{
    const auto rep = glt::identification_report(fixtures::dedicated5_pattern(), fixtures::dedicated5());
    const auto j = io::to_json(rep);
    EXPECT_EQ(j.at("verdict"), "NotIdentified");
    EXPECT_EQ(j.at("counting_rule").at("witness").at("columns"), nlohmann::json({2}));
    EXPECT_EQ(j.at("counting_rule").at("witness").at("nonzero_rows"), 2);
    EXPECT_EQ(j.at("rd_oracle"), false);
}

TEST(SummaryJson, FieldsPresent)
{
    glt::PostprocessSummary s;
    s.draws_total = 3;
    const auto empty = io::to_json(s);
    for (const char* key : {"m_v", "draws_total", "draws_kept", "r_true", "r_hat", "ordinate", "ordinate_r_hat",
                            "ordinate_r_true", "r_histogram", "mse_omega"})
        EXPECT_TRUE(empty.contains(key)) << key;
    EXPECT_TRUE(empty.at("r_hat").is_null());
    s.draws_kept = 2;
    s.r_hat = 5;
    s.r_histogram = {{5, 2}};
    const auto full = io::to_json(s);
    EXPECT_EQ(full.at("r_hat"), 5);
    EXPECT_EQ(full.at("r_histogram").at("5"), 2);
}

TEST(Archive, JsonLinesRoundTrip)
{
    const auto truth = glt::scenario_truth({glt::Scenario::Block, 30, 5, 150, 5});
    glt::HarnessConfig cfg;
    cfg.n_draws = 40;
    cfg.spurious_rate = 1.0;
    cfg.noise = 0.05;
    cfg.max_spurious = 3;
    cfg.seed = 5;
    cfg.scenario = "block";
    const auto a = glt::synthesize_draw_archive(truth, cfg);
    std::stringstream ss;
    io::write_archive(ss, a);
    const auto b = io::read_archive(ss);
    EXPECT_EQ(b.meta.m, a.meta.m);
    EXPECT_EQ(b.meta.k_max, a.meta.k_max);
    EXPECT_EQ(b.meta.seed, 5u);
    EXPECT_EQ(b.meta.scenario, "block");
    ASSERT_EQ(b.draws.size(), a.draws.size());
    for (std::size_t n = 0; n < a.draws.size(); ++n) {
        EXPECT_EQ(b.draws[n].loading, a.draws[n].loading);
        EXPECT_EQ(b.draws[n].idio, a.draws[n].idio);
        EXPECT_EQ(b.draws[n].pattern, a.draws[n].pattern);
    }
}

TEST(Archive, RejectsMalformedLines)
{
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return io::read_archive(in);
    };
    const std::string header = R"({"meta":{"m":2,"k_max":1,"seed":0,"scenario":"x"}})"
                               "\n";
    EXPECT_NO_THROW(parse(header + R"({"k":1,"loading":[1,2],"idio":[1,1],"pattern":"11"})"));
    EXPECT_EQ(kind_of([&] { parse(""); }), glt::ErrorKind::Parse);
    EXPECT_EQ(kind_of([&] { parse(header + "{not json"); }), glt::ErrorKind::Parse);
    EXPECT_EQ(kind_of([&] { parse(header + R"({"k":1,"loading":[1],"idio":[1,1],"pattern":"11"})"); }),
              glt::ErrorKind::Parse);
    EXPECT_EQ(kind_of([&] { parse(header + R"({"k":1,"loading":[1,2],"idio":[1,1],"pattern":"1x"})"); }),
              glt::ErrorKind::Parse);
    EXPECT_EQ(kind_of([&] { parse(header + R"({"k":2,"loading":[1,2,3,4],"idio":[1,1],"pattern":"1111"})"); }),
              glt::ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([&] { parse(header + R"({"k":1,"loading":[1,2],"idio":[1,1],"pattern":"10"})"); }),
              glt::ErrorKind::InvalidArgument);
}
