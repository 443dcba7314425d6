#include <gtest/gtest.h>

#include "albert/cli.hpp"

using namespace albert;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

io::Json without_runtime(io::Json j) {
  j.erase("runtime_ms");
  return j;
}

}  // namespace

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"census", "--help"}).code, 0);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"census", "--q", "3"}).code, 2);
  EXPECT_EQ(run({"build", "--q", "6", "--norm-target", "2"}).code, 2);
  EXPECT_EQ(run({"build", "--q", "3", "--c", "[1,1,0]", "--norm-target", "2"}).code, 2);
  EXPECT_EQ(run({"build", "--q", "3", "--c", "[1,0,0]"}).code, 2);
  EXPECT_EQ(run({"build", "--q", "3", "--norm-target", "1"}).code, 2);
  EXPECT_EQ(run({"census", "--q", "3", "--norm-target", "2", "--v", "[1,0],[0,1,0]"}).code, 2);
  EXPECT_EQ(run({"census", "--q", "3", "--norm-target", "2", "--v", "[0,0,0],[0,0,0]"}).code, 2);
  EXPECT_EQ(run({"line-census", "--q", "3", "--norm-target", "2", "--v", "[1,0,0],[2,0,0]"}).code, 2);
  EXPECT_EQ(run({"verify", "--q", "3", "--norm-target", "2", "--theorem", "9.9"}).code, 2);
  EXPECT_EQ(run({"census", "--q", "3", "--norm-target", "2", "--v", "[1,0,0],[0,1,0]", "--format", "xml"}).code, 2);
}

TEST(Cli, GF2IsRejectedWithNormExplanation) {
  const auto r = run({"build", "--q", "2", "--norm-target", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("norm"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run({"verify", "--q", "2", "--theorem", "7.1"}).code, 0);
}

TEST(Cli, BuildEchoesParameters) {
  const auto r = run({"build", "--q", "4", "--c", "[1,1,0]"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = io::Json::parse(r.out);
  EXPECT_EQ(j.at("parameters").at("c"), "[1,1,0]");
  EXPECT_EQ(j.at("parameters").at("field_modulus"), "u^2+u+1");
  EXPECT_EQ(j.at("parameters").at("d").size(), 3u);
  EXPECT_EQ(j.at("algebra").at("tensor").size(), 27u);
  EXPECT_TRUE(j.at("division").get<bool>());
}

TEST(Cli, SplitIdentityHolds) {
  const auto r = run({"split", "--q", "5", "--norm-target", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::Json::parse(r.out).at("cases"), 125u * 125u);
}

TEST(Cli, CensusJsonRoundTripsAndMatchesLibrary) {
  const auto r = run({"census", "--q", "3", "--norm-target", "2", "--v", "[1,0,0],[0,1,0]"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto parsed = io::census_report_from_json(io::Json::parse(r.out));
  const TwistedFieldSpec spec(Tower::of_order(3), Tower::of_order(3).parse("2"));
  const census::Context ctx(spec);
  auto direct = census::per_vector_profile(ctx, engine::parse_pair(ctx.field(), "[1,0,0],[0,1,0]"));
  parsed.runtime_ms = direct.runtime_ms = 0;
  EXPECT_EQ(parsed, direct);
}

TEST(Cli, OutputIndependentOfWorkerCount) {
  for (const std::vector<std::string>& base :
       {std::vector<std::string>{"census", "--q", "4", "--c", "[1,1,0]", "--v", "[1,0,0],[0,1,0]"},
        std::vector<std::string>{"census", "--q", "3", "--norm-target", "2", "--scan-all"}}) {
    auto one = base, four = base;
    one.insert(one.end(), {"--workers", "1"});
    four.insert(four.end(), {"--workers", "4"});
    const auto a = run(one), b = run(four);
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(without_runtime(io::Json::parse(a.out)), without_runtime(io::Json::parse(b.out)));
  }
}

TEST(Cli, VerifyOutputIsDeterministicForASeed) {
  const std::vector<std::string> args{"verify", "--q", "7", "--theorem", "3.1", "--d", "[3,1,5]", "--samples", "300", "--seed", "11"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(without_runtime(io::Json::parse(a.out)), without_runtime(io::Json::parse(b.out)));
  const auto v = io::verdict_from_json(io::Json::parse(a.out));
  EXPECT_EQ(v.cases, 900u);
}

TEST(Cli, CsvAndTableFormats) {
  const auto csv = run({"census", "--q", "3", "--norm-target", "2", "--v", "[1,0,0],[0,1,0]", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), io::kCsvHeader);
  const auto table = run({"line-census", "--q", "3", "--norm-target", "2", "--v", "[1,0,0],[0,1,0]", "--format", "table"});
  ASSERT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("predicted: 18 in <x,y>v, 16 otherwise"), std::string::npos);
}
