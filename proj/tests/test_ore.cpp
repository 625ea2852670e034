#include <gtest/gtest.h>

#include <random>

#include "holo/arith_parser.hpp"
#include "holo/ore_polynomial.hpp"

using namespace holo;

namespace {

AlgebraPtr laguerre_algebra() { return OreAlgebra::create(parse_generators("S[n], S[a], Der[x]")); }

OrePolynomial op(const AlgebraPtr& a, std::string_view text) { return parse_operator(text, a); }

OrePolynomial random_operator(const AlgebraPtr& alg, std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-3, 3), e(0, 1), nterms(1, 3);
  const auto& ctx = alg->field();
  std::vector<OrePolynomial::Term> terms;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m;
    for (std::size_t s = 0; s < alg->slots(); ++s) m.exps.e[s] = static_cast<std::uint16_t>(e(rng));
    Polynomial p(ctx, c(rng));
    for (std::size_t v = 0; v < ctx->size(); ++v)
      if (e(rng)) p += Polynomial::variable(ctx, v) * mpq_class(c(rng));
    terms.push_back({m, RationalFunction(p)});
  }
  return OrePolynomial::from_terms(alg, terms);
}

}  // namespace

TEST(Ore, CommutationRules) {
  auto alg = OreAlgebra::create(parse_generators("S[n], Der[x]"));
  EXPECT_EQ((op(alg, "Der[x]") * op(alg, "x")).to_string(), "x*Der[x] + 1");
  EXPECT_EQ((op(alg, "S[n]") * op(alg, "n")).to_string(), "(n+1)*S[n]");
  EXPECT_EQ((op(alg, "Der[x]^2") * op(alg, "x")).to_string(), "x*Der[x]^2 + 2*Der[x]");
  EXPECT_EQ(op(alg, "Der[x]*x"), op(alg, "x*Der[x]+1"));
}

TEST(Ore, QShiftRule) {
  auto alg = OreAlgebra::create(parse_generators("QS[qk,q]"));
  EXPECT_EQ((op(alg, "QS[qk,q]") * op(alg, "3*qk")).to_string(), "3*q*qk*QS[qk,q]");
}

TEST(Ore, ApplyRational) {
  auto alg = OreAlgebra::create(parse_generators("S[n], Der[x]"), {"a"});
  auto f = [&](std::string_view t) { return parse_rational_function(t, alg->full()); };
  EXPECT_EQ(op(alg, "Der[x]").apply(f("x^2")), f("2*x"));
  EXPECT_EQ(op(alg, "S[n]-1").apply(f("n^2")), f("2*n+1"));
  auto lag = OreAlgebra::create(parse_generators("Der[x]"), {"a", "n"});
  auto g = parse_rational_function("1+a-x", lag->full());
  auto P = parse_operator("x*Der[x]^2 + (a-x+1)*Der[x] + 1", lag);
  EXPECT_TRUE(P.apply(g).is_zero());
}

TEST(Ore, LeadingTerm) {
  auto alg = laguerre_algebra();
  auto order = MonomialOrder::deglex();
  auto p = op(alg, "S[a] + Der[x] - 1");
  EXPECT_EQ(OrePolynomial::monomial(alg, p.leading_term(order).monomial, p.leading_term(order).coeff).to_string(),
            "S[a]");
  auto five = op(alg, "5");
  EXPECT_EQ(five.leading_term(order).coeff.to_string(), "5");
  auto q = op(alg, "x*Der[x]^2 + Der[x]");
  EXPECT_EQ(q.leading_term(order).coeff.to_string(), "x");
  EXPECT_THROW(OrePolynomial(alg).leading_term(order), MathError);
}

TEST(Ore, PrintParseRoundTrip) {
  auto alg = laguerre_algebra();
  auto p = op(alg, "(n+1)*S[n] - x*Der[x] + (-a-n+x-1)");
  EXPECT_EQ(p.to_string(), "(n+1)*S[n] - x*Der[x] + (-a-n+x-1)");
  EXPECT_EQ(op(alg, p.to_string()), p);
  EXPECT_THROW(op(alg, "S[m]"), ParseError);
  EXPECT_THROW(op(alg, "S[n] +"), ParseError);
}

TEST(Ore, Associativity) {
  auto alg = OreAlgebra::create(parse_generators("S[n], Der[x], QS[qk,q]"));
  std::mt19937 rng(1);
  for (int i = 0; i < 100; ++i) {
    auto a = random_operator(alg, rng), b = random_operator(alg, rng), c = random_operator(alg, rng);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(Ore, ActionCompatibility) {
  auto alg = OreAlgebra::create(parse_generators("S[n], Der[x]"));
  std::mt19937 rng(2);
  auto f = parse_rational_function("(x^2*n+1)/(x+n+2)", alg->full());
  for (int i = 0; i < 30; ++i) {
    auto a = random_operator(alg, rng), b = random_operator(alg, rng);
    ASSERT_EQ((a * b).apply(f), a.apply(b.apply(f)));
  }
}

TEST(Ore, EliminationModeRules) {
  auto base = OreAlgebra::create(parse_generators("S[k], S[n], Der[x]"));
  auto elim = base->with_elimination({"k", "x"});
  EXPECT_EQ((op(elim, "S[k]") * op(elim, "k")), op(elim, "k*S[k] + S[k]"));
  EXPECT_EQ((op(elim, "Der[x]") * op(elim, "x")), op(elim, "x*Der[x] + 1"));
  std::mt19937 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto a = random_operator(elim, rng), b = random_operator(elim, rng), c = random_operator(elim, rng);
    ASSERT_EQ((a * b) * c, a * (b * c));
    // Converting to the standard algebra is a ring homomorphism.
    ASSERT_EQ((a * b).convert(base), a.convert(base) * b.convert(base));
  }
  auto p = op(base, "(k^2+n)*S[k] - x*k");
  EXPECT_EQ(p.convert(elim).convert(base), p);
}
