#include <gtest/gtest.h>

#include "albert/io.hpp"

using namespace albert;

namespace {

TwistedFieldSpec spec_with_norm(unsigned q, const std::string& norm) {
  const Tower k = Tower::of_order(q);
  return TwistedFieldSpec(k, *lex_least_with_norm(k, k.base().parse(norm)));
}

}  // namespace

TEST(Io, SpecsRoundTrip) {
  const auto spec = spec_with_norm(4, "u");
  EXPECT_EQ(io::twisted_field_from_json(io::to_json(spec)), spec);
  EXPECT_EQ(io::field_spec_from_json(io::to_json(spec.field().spec())), spec.field().spec());
  const Algebra3 alg = to_structure_constants(spec);
  EXPECT_EQ(io::algebra_from_json(io::to_json(alg)), alg);
  const Field f = Field::of_order(5);
  const split::SplitAlbertSpec<Field> s(f, {f.parse("2"), f.parse("3"), f.parse("1")});
  EXPECT_EQ(io::split_spec_from_json(io::to_json(s)), s);
}

TEST(Io, TwistedFieldJsonShape) {
  const auto j = io::to_json(spec_with_norm(3, "2"));
  EXPECT_EQ(j.at("q"), 3);
  EXPECT_EQ(j.at("f_coeffs").size(), 4u);
  EXPECT_EQ(j.at("c"), "[2,0,0]");
}

TEST(Io, SubspaceRoundTrip) {
  const Field f = Field::of_order(3);
  Mat m(2, 4);
  m(0, 0) = f.one();
  m(0, 2) = f.parse("2");
  m(1, 1) = f.one();
  m(1, 3) = f.one();
  const auto s = linalg::row_space(f, m);
  EXPECT_EQ(io::subspace_from_json(f, io::to_json(f, s)), s);
}

TEST(Io, ReportsRoundTrip) {
  const census::Context ctx(spec_with_norm(3, "2"));
  const auto rep = census::per_vector_profile(ctx, engine::parse_pair(ctx.field(), "[1,0,0],[0,1,0]"));
  const auto text = io::to_json(rep).dump(2);
  EXPECT_EQ(io::census_report_from_json(io::Json::parse(text)), rep);

  const auto scan = census::scan(ctx, census::ScanScope::Representatives, {2, true});
  EXPECT_EQ(io::scan_report_from_json(io::Json::parse(io::to_json(scan).dump())), scan);

  const auto v = verify::verify_pair_normal_form(Field::of_order(2));
  const auto j = io::to_json(ctx.parameters(), v);
  EXPECT_EQ(io::verdict_from_json(j), v);
  EXPECT_EQ(io::parameters_from_json(j.at("parameters")), ctx.parameters());
}

TEST(Io, MissingFieldIsUsageError) {
  io::Json j = io::to_json(spec_with_norm(3, "2"));
  j.erase("c");
  EXPECT_THROW(io::twisted_field_from_json(j), UsageError);
  EXPECT_THROW(io::field_spec_from_json(io::Json{{"p", 4}, {"m", 1}, {"modulus_coeffs", {0, 1}}}), UsageError);
}

TEST(Io, CsvHasOneRowPerClass) {
  const census::Context ctx(spec_with_norm(3, "2"));
  const auto rep = census::per_vector_profile(ctx, engine::parse_pair(ctx.field(), "[1,0,0],[0,1,0]"));
  std::istringstream in(io::to_csv(rep));
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], io::kCsvHeader);
  EXPECT_EQ(lines[1], "3,2,2,1,1,true");
  EXPECT_EQ(lines[2], "2,24,24,12,12,true");
  EXPECT_EQ(lines[6], "zero,1,1,1,1,true");
}
