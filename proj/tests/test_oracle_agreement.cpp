#include <gtest/gtest.h>

#include <random>

#include "holo/annihilator.hpp"
#include "holo/arith_parser.hpp"
#include "holo/oracle.hpp"

using namespace holo;

namespace {

struct Case {
  const char* expr;
  const char* algebra;
  std::map<std::string, std::vector<mpq_class>> axes;
};

std::vector<mpq_class> range(long lo, long hi) {
  std::vector<mpq_class> v;
  for (long i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

void expect_annihilates(const Case& c) {
  auto e = parse_expression(c.expr);
  auto alg = algebra_for(e, parse_generators(c.algebra));
  auto g = annihilator(e, alg);
  auto rep = check_annihilator(g.elements(), e, SampleGrid::product(c.axes));
  EXPECT_TRUE(rep.ok()) << c.expr << ": operator " << rep.failures[0].op << " residue " << rep.failures[0].residue;
  EXPECT_GE(rep.checked * 2, rep.checked + rep.skipped.size()) << c.expr;
}

}  // namespace

TEST(OracleAgreement, KnowledgeBaseAtoms) {
  mpq_class h(1, 2), t(1, 3);
  std::vector<Case> cases{
      {"(x^2+1)/(x-3)", "Der[x]", {{"x", {0, 1, 2, 4, h}}}},
      {"2^n * 3^k", "S[n], S[k]", {{"n", range(0, 3)}, {"k", range(0, 3)}}},
      {"exp(x*y)", "Der[x], Der[y]", {{"x", {0}}, {"y", {1, 2, h}}}},
      {"sqrt(1+x)", "Der[x]", {{"x", {0, 3, 8, mpq_class(-3, 4), mpq_class(5, 4)}}}},
      {"factorial(n)", "S[n]", {{"n", range(0, 6)}}},
      {"binomial(n,k)", "S[n], S[k]", {{"n", range(0, 5)}, {"k", range(0, 5)}}},
      {"pochhammer(a,n)", "S[n], S[a]", {{"n", range(0, 5)}, {"a", {h, 2, 3}}}},
      {"factorial(2*n)/factorial(n)^2", "S[n]", {{"n", range(0, 8)}}},
      {"x^n", "S[n], Der[x]", {{"n", range(0, 4)}, {"x", {2, t}}}},
      {"q^(k^2)", "QS[qk,q]", {{"k", range(0, 4)}, {"q", {2, t}}}},
      {"qpochhammer(a,q,k)", "QS[qk,q]", {{"k", range(0, 4)}, {"q", {2, t}}, {"a", {3, h}}}},
      {"chebyshevT(n,x)", "S[n], Der[x]", {{"n", range(0, 6)}, {"x", {0, h, 2}}}},
      {"legendreP(n,x)", "S[n], Der[x]", {{"n", range(0, 6)}, {"x", {0, t, 3}}}},
      {"laguerreL(n,a,x)", "S[n], S[a], Der[x]", {{"n", range(0, 4)}, {"a", range(1, 3)}, {"x", {h, 2}}}},
  };
  for (const auto& c : cases) expect_annihilates(c);
}

TEST(OracleAgreement, RandomCompositions) {
  std::vector<std::string> atoms{"binomial(n,2)*x", "(n+1)*x^2", "2^n", "chebyshevT(n,x)", "1/(x+2)",
                                 "legendreP(n,x)", "sqrt(1+x)", "factorial(n)", "x^n"};
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  std::map<std::string, std::vector<mpq_class>> axes{{"n", range(0, 4)}, {"x", {0, 3, mpq_class(5, 4)}}};
  for (int trial = 0; trial < 20; ++trial) {
    std::string a = atoms[pick(rng)], b = atoms[pick(rng)];
    std::string e = "(" + a + ")" + (trial % 2 ? "*" : "+") + "(" + b + ")";
    expect_annihilates({e.c_str(), "S[n], Der[x]", axes});
  }
}

TEST(OracleAgreement, CommutationActsOnPolynomials) {
  // D_x^2 x = x D_x^2 + 2 D_x as actions on x^3 and on 1/(1+x).
  auto alg = OreAlgebra::create(parse_generators("Der[x]"));
  auto lhs = parse_operator("Der[x]^2", alg) * parse_operator("x", alg);
  auto rhs = parse_operator("x*Der[x]^2 + 2*Der[x]", alg);
  EXPECT_EQ(lhs, rhs);
  for (const char* f : {"x^3", "1/(1+x)"})
    for (int x : {0, 1, 2}) {
      Point p{{"x", x}};
      auto e = parse_expression(f);
      EXPECT_EQ(apply_at(lhs, e, p), eval_derivative(make_binary(ExprKind::mul, make_symbol("x"), e), p, {{"x", 2}}));
      EXPECT_EQ(apply_at(rhs, e, p), apply_at(lhs, e, p));
    }
}

TEST(OracleAgreement, TelescopersAnnihilateSums) {
  auto alg = OreAlgebra::create(parse_generators("S[n], S[k]"));
  auto grid = SampleGrid::product({{"n", range(0, 10)}});
  std::vector<SumBound> bounds{{"k", parse_expression("0"), parse_expression("n")}};
  for (const char* f : {"binomial(n,k)", "binomial(n,k)^2", "binomial(n,k)*2^k"}) {
    auto e = parse_expression(f);
    auto g = annihilator(e, alg);
    for (auto r : {ct_slow(g, DeltaSpec{{"k"}}, {"S[n]"}), ct_heuristic(g, DeltaSpec{{"k"}}, {"S[n]"})}) {
      EXPECT_TRUE(r.verified) << f;
      for (const auto& t : r.telescopers) EXPECT_TRUE(check_sum_identity(t, e, bounds, grid).ok()) << f << ": " << t.to_string();
    }
  }
}
