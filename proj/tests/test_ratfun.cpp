#include <gtest/gtest.h>

#include <random>

#include "holo/rational_function.hpp"

using namespace holo;

namespace {

ContextPtr xyz() { return make_context({"x", "y", "z"}); }

Polynomial random_poly(const ContextPtr& ctx, std::mt19937& rng, int terms, int maxdeg) {
  std::uniform_int_distribution<int> c(-5, 5), d(0, maxdeg);
  std::vector<Polynomial::Term> ts;
  for (int i = 0; i < terms; ++i) {
    Exponents e;
    for (std::size_t v = 0; v < ctx->size(); ++v) e[v] = static_cast<std::uint16_t>(d(rng));
    ts.push_back({e, c(rng)});
  }
  return Polynomial::from_terms(ctx, ts);
}

}  // namespace

TEST(Polynomial, ArithmeticAndPrinting) {
  auto ctx = xyz();
  auto x = Polynomial::variable(ctx, 0), y = Polynomial::variable(ctx, 1);
  auto p = (x + y) * (x - y);
  EXPECT_EQ(p.to_string(), "x^2-y^2");
  EXPECT_EQ((p * mpq_class(1, 2)).to_string(), "1/2*x^2-1/2*y^2");
  EXPECT_EQ(Polynomial::divide_exact(p, x + y)->to_string(), "x-y");
  EXPECT_FALSE(Polynomial::divide_exact(p, x + Polynomial(ctx, 1)));
  EXPECT_EQ(x.pow(3).derivative(0).to_string(), "3*x^2");
  EXPECT_EQ(x.pow(2).shift(0, 1).to_string(), "x^2+2*x+1");
}

TEST(Polynomial, GcdExamples) {
  auto ctx = xyz();
  auto x = Polynomial::variable(ctx, 0), one = Polynomial(ctx, 1);
  EXPECT_EQ(gcd(x * x - one, x - one), x - one);
  auto p = x * mpq_class(3) + one * mpq_class(6);
  EXPECT_EQ(gcd(p, Polynomial(ctx)), p.monic());
}

TEST(Polynomial, GcdOfCommonFactor) {
  auto ctx = xyz();
  std::mt19937 rng(7);
  auto x = Polynomial::variable(ctx, 0), y = Polynomial::variable(ctx, 1);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_poly(ctx, rng, 4, 2), b = random_poly(ctx, rng, 4, 2);
    if (a.is_zero() || b.is_zero()) continue;
    auto g0 = gcd(a, b);
    auto g = gcd((x + y) * a, (x + y) * b);
    EXPECT_EQ(g, ((x + y) * g0).monic());
    EXPECT_TRUE(Polynomial::divide_exact((x + y) * a, g));
    EXPECT_TRUE(Polynomial::divide_exact((x + y) * b, g));
  }
}

TEST(Polynomial, GcdAgainstCofactors) {
  auto ctx = xyz();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_poly(ctx, rng, 3, 2), a = random_poly(ctx, rng, 3, 2), b = random_poly(ctx, rng, 3, 2);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    auto h = gcd(g * a, g * b);
    ASSERT_TRUE(Polynomial::divide_exact(g * a, h));
    ASSERT_TRUE(Polynomial::divide_exact(g * b, h));
    ASSERT_TRUE(Polynomial::divide_exact(h, g.monic())) << h.to_string() << " vs " << g.to_string();
  }
}

TEST(RationalFunction, Examples) {
  auto ctx = xyz();
  auto x = RationalFunction::variable(ctx, 0), one = RationalFunction(ctx, 1);
  auto s = one / (x - one) + one / (x + one);
  EXPECT_EQ(s.to_string(), "2*x/(x^2-1)");
  auto c = RationalFunction(Polynomial::variable(ctx, 0).pow(2) - Polynomial(ctx, 1),
                            Polynomial::variable(ctx, 0) - Polynomial(ctx, 1));
  EXPECT_EQ(c.to_string(), "x+1");
  EXPECT_THROW(one / RationalFunction(ctx), MathError);
}

TEST(RationalFunction, FieldAxiomsAndEvaluation) {
  auto ctx = xyz();
  std::mt19937 rng(3);
  auto rnd = [&] {
    Polynomial d(ctx);
    while (d.is_zero()) d = random_poly(ctx, rng, 2, 2);
    return RationalFunction(random_poly(ctx, rng, 3, 2), d);
  };
  std::vector<mpq_class> pt{mpq_class(3, 7), mpq_class(-5, 2), mpq_class(11, 3)};
  for (int i = 0; i < 50; ++i) {
    auto a = rnd(), b = rnd(), c = rnd();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
    try {
      EXPECT_EQ((a * b).evaluate(pt), a.evaluate(pt) * b.evaluate(pt));
      EXPECT_EQ((a - b).evaluate(pt), a.evaluate(pt) - b.evaluate(pt));
    } catch (const MathError&) {
    }
    auto d = a.derivative(0);
    auto e = (a * b).derivative(1);
    EXPECT_EQ(e, a.derivative(1) * b + a * b.derivative(1));
    (void)d;
  }
}
