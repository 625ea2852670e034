#include <gtest/gtest.h>

#include "holo/annihilator.hpp"
#include "holo/arith_parser.hpp"
#include "holo/serialize.hpp"

using namespace holo;

TEST(Serialize, GroebnerRoundTrip) {
  auto alg = OreAlgebra::create(parse_generators("S[n], S[a], Der[x]"));
  auto g = annihilator("laguerreL(n,a,x)", alg);
  json j = gb_to_json(g);
  EXPECT_EQ(j["algebra"]["generators"], "S[n],S[a],Der[x]");
  auto back = gb_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.to_string(), g.to_string());
  EXPECT_EQ(back.order(), g.order());
  EXPECT_EQ(gb_to_json(back), j);
}

TEST(Serialize, ParametersAndQShift) {
  auto alg = OreAlgebra::create(parse_generators("QS[qk,q], Der[x]"), {"alpha"});
  std::vector<OrePolynomial> ops{parse_operator("(q*qk-1)*QS[qk,q] - alpha*x", alg), parse_operator("Der[x] - qk", alg)};
  auto g = buchberger(ops);
  auto back = gb_from_json(gb_to_json(g));
  EXPECT_EQ(back.algebra()->field()->names(), alg->field()->names());
  EXPECT_EQ(back.to_string(), g.to_string());
}

TEST(Serialize, ModuleElements) {
  auto alg = OreAlgebra::create(parse_generators("S[n], Der[x]"));
  auto p = parse_operator("S[n] - n", alg) + parse_operator("x*Der[x]", alg).at_position(2);
  auto j = operator_to_json(p);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 3u);
  EXPECT_EQ(operator_from_json(j, alg), p);
}

TEST(Serialize, TelescopingRoundTrip) {
  auto alg = OreAlgebra::create(parse_generators("S[n], S[k]"));
  auto g = annihilator("binomial(n,k)", alg);
  auto r = ct_heuristic(g, DeltaSpec{{"k"}}, {"S[n]"});
  json j = telescoping_to_json(r);
  EXPECT_EQ(j["certificate_identity"], "verified");
  auto back = telescoping_from_json(json::parse(j.dump()));
  EXPECT_EQ(telescoping_to_json(back), j);
  EXPECT_TRUE(verify_certificates(back, g));
}

TEST(Serialize, ReportRoundTrip) {
  OracleReport r;
  r.checked = 3;
  r.failures.push_back({1, Point{{"n", 2}, {"x", mpq_class(-3, 4)}}, mpq_class(7, 5)});
  r.skipped.push_back(Point{{"n", 0}});
  r.degenerate = {2};
  json j = report_to_json(r);
  EXPECT_EQ(j["failures"][0]["point"]["x"], "-3/4");
  EXPECT_EQ(j["failures"][0]["residue"], "7/5");
  auto back = report_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.checked, 3u);
  ASSERT_EQ(back.failures.size(), 1u);
  EXPECT_EQ(back.failures[0].point, r.failures[0].point);
  EXPECT_EQ(back.failures[0].residue, r.failures[0].residue);
  EXPECT_EQ(back.degenerate, r.degenerate);
  EXPECT_EQ(report_to_json(back), j);
}
