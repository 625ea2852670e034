#include <gtest/gtest.h>

#include "holo/annihilator.hpp"
#include "holo/arith_parser.hpp"
#include "holo/error.hpp"
#include "holo/oracle.hpp"

using namespace holo;

namespace {

mpq_class value(const char* text, const Point& p) { return eval_expression(parse_expression(text), p); }

mpz_class fac(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

mpz_class binom(long n, long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

mpq_class qpow(const mpq_class& x, long k) {
  mpq_class r = 1;
  for (long i = 0; i < k; ++i) r *= x;
  return r;
}

// Explicit sums, independent of the three-term recurrences.
mpq_class chebyshev_closed(long n, const mpq_class& x) {
  if (n == 0) return 1;
  mpq_class s = 0;
  for (long k = 0; 2 * k <= n; ++k)
    s += mpq_class(k % 2 ? -1 : 1) * mpq_class(fac(n - k - 1)) / mpq_class(fac(k) * fac(n - 2 * k)) * qpow(2 * x, n - 2 * k);
  return s * n / 2;
}

mpq_class legendre_closed(long n, const mpq_class& x) {
  mpq_class s = 0;
  for (long k = 0; k <= n; ++k) s += mpq_class(binom(n, k) * binom(n, k)) * qpow(x - 1, n - k) * qpow(x + 1, k);
  return s / qpow(2, n);
}

mpq_class laguerre_closed(long n, long a, const mpq_class& x) {
  mpq_class s = 0;
  for (long i = 0; i <= n; ++i) s += mpq_class(binom(n + a, n - i)) * qpow(-x, i) / mpq_class(fac(i));
  return s;
}

Point at(std::initializer_list<std::pair<const std::string, mpq_class>> v) { return Point(v); }

}  // namespace

TEST(Oracle, SpecialValues) {
  EXPECT_EQ(value("chebyshevT(3, 1/2)", {}), -1);
  EXPECT_EQ(value("legendreP(2, 1/3)", {}), mpq_class(-1, 3));
  EXPECT_EQ(value("binomial(5, 2)", {}), 10);
  EXPECT_EQ(value("binomial(n, k)", at({{"n", 5}, {"k", 7}})), 0);
  EXPECT_EQ(value("pochhammer(1/2, 3)", {}), mpq_class(15, 8));
  EXPECT_EQ(value("qpochhammer(a, q, 2)", at({{"a", 2}, {"q", 3}})), 5);
  EXPECT_EQ(value("sqrt(9/4) + exp(0)", {}), mpq_class(5, 2));
  EXPECT_EQ(value("sum(k^2, k, 1, n)", at({{"n", 10}})), 385);
  EXPECT_EQ(value("2^(-3)", {}), mpq_class(1, 8));
  EXPECT_THROW(value("sqrt(2)", {}), MathError);
  EXPECT_THROW(value("1/(n-3)", at({{"n", 3}})), MathError);
  EXPECT_THROW(value("factorial(1/2)", {}), MathError);
  EXPECT_THROW(value("x", {}), MathError);
}

TEST(Oracle, RecurrencesMatchClosedForms) {
  for (long n = 0; n < 20; ++n) {
    mpq_class x = mpq_class(n + 3) / 7;
    Point p = at({{"n", n}, {"x", x}, {"a", n % 4}});
    EXPECT_EQ(value("chebyshevT(n, x)", p), chebyshev_closed(n, x)) << n;
    EXPECT_EQ(value("legendreP(n, x)", p), legendre_closed(n, x)) << n;
    EXPECT_EQ(value("laguerreL(n, a, x)", p), laguerre_closed(n, n % 4, x)) << n;
  }
  EXPECT_EQ(value("chebyshevT(-3, x)", at({{"x", mpq_class(1, 3)}})), chebyshev_closed(3, mpq_class(1, 3)));
  EXPECT_EQ(value("legendreP(-3, x)", at({{"x", mpq_class(1, 3)}})), legendre_closed(2, mpq_class(1, 3)));
}

TEST(Oracle, Derivatives) {
  auto f = parse_expression("x^3/(1+x)");
  // x^3/(1+x) = x^2 - x + 1 - 1/(1+x)
  EXPECT_EQ(eval_derivative(f, at({{"x", 1}}), {{"x", 2}}), mpq_class(7, 4));
  EXPECT_EQ(eval_derivative(f, at({{"x", 1}}), {}), mpq_class(1, 2));
  EXPECT_EQ(eval_derivative(parse_expression("sqrt(1+x)"), at({{"x", 3}}), {{"x", 1}}), mpq_class(1, 4));
  EXPECT_EQ(eval_derivative(parse_expression("exp(x*y)"), at({{"x", 0}, {"y", 0}}), {{"x", 2}, {"y", 2}}), 2);
  EXPECT_EQ(eval_derivative(parse_expression("chebyshevT(4, x)"), at({{"x", 0}}), {{"x", 4}}), 192);
}

TEST(Oracle, LaguerreGrid) {
  auto alg = OreAlgebra::create(parse_generators("S[n], S[a], Der[x]"));
  auto e = parse_expression("laguerreL(n, a, x)");
  auto g = annihilator(e, alg);
  auto grid = SampleGrid::product({{"n", {0, 1, 2, 3, 4}}, {"a", {1, 2, 3}}, {"x", {mpq_class(1, 2), 2}}});
  auto rep = check_annihilator(g.elements(), e, grid);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.checked + rep.skipped.size(), 30u);
  EXPECT_GE(rep.checked, 20u);
  // The same operators on the explicit sum.
  auto closed = parse_expression("sum(binomial(n+a, n-i)*(-x)^i/factorial(i), i, 0, n)");
  EXPECT_TRUE(check_annihilator(g.elements(), closed, grid).ok());
}

TEST(Oracle, DetectsWrongOperator) {
  auto alg = OreAlgebra::create(parse_generators("S[n]"));
  auto e = parse_expression("binomial(2*n, n)");
  auto grid = SampleGrid::product({{"n", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}});
  auto good = parse_operator("(n+1)*S[n] - (4*n+2)", alg);
  EXPECT_TRUE(check_annihilator({good}, e, grid).ok());
  auto bad = parse_operator("(n+1)*S[n] - (4*n+3)", alg);
  auto rep = check_annihilator({bad}, e, grid);
  ASSERT_EQ(rep.failures.size(), 11u);
  EXPECT_EQ(rep.failures[0].point.at("n"), 0);
  EXPECT_EQ(rep.failures[0].residue, -1);
  auto zero = check_annihilator({OrePolynomial(alg)}, e, grid);
  EXPECT_EQ(zero.degenerate, std::vector<std::size_t>{0});
}

TEST(Oracle, GridErrors) {
  auto alg = OreAlgebra::create(parse_generators("S[n]"));
  auto op = parse_operator("S[n] - 2", alg);
  auto e = parse_expression("2^n");
  EXPECT_THROW(check_annihilator({op}, e, SampleGrid{}), MathError);
  auto grid = SampleGrid::product({{"n", {0, 1, 2}}});
  grid.exclude = [](const Point&) { return true; };
  EXPECT_THROW(check_annihilator({op}, e, grid), MathError);
  grid.exclude = [](const Point& p) { return p.at("n") == 1; };
  auto rep = check_annihilator({op}, e, grid);
  EXPECT_EQ(rep.checked, 2u);
  EXPECT_EQ(rep.skipped.size(), 1u);
}

TEST(Oracle, SumIdentities) {
  auto alg = OreAlgebra::create(parse_generators("S[n]"));
  auto grid = SampleGrid::product({{"n", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}});
  auto t = parse_operator("S[n] - 2", alg);
  auto rep = check_sum_identity(t, parse_expression("binomial(n,k)"), {{"k", parse_expression("0"), parse_expression("n")}}, grid);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.checked, 11u);
}

TEST(Oracle, DoubleSumBruteForce) {
  auto summand = parse_expression("binomial(i+j,i)^2 * binomial(4*n-2*i-2*j, 2*n-2*i)");
  auto f = nested_sum(summand, {{"i", parse_expression("0"), parse_expression("n")}, {"j", parse_expression("0"), parse_expression("n")}});
  std::vector<mpz_class> expected{1, 12, 180, 2800, 44100, 698544, 11099088};
  for (long n = 0; n <= 6; ++n) {
    mpq_class v = eval_expression(f, at({{"n", n}}));
    EXPECT_EQ(v, expected[n]) << n;
    EXPECT_EQ(v, (2 * n + 1) * binom(2 * n, n) * binom(2 * n, n)) << n;
  }
}

TEST(Oracle, BoundaryMatchesTelescoper) {
  auto alg = OreAlgebra::create(parse_generators("S[n], S[k]"));
  auto summand = parse_expression("binomial(n,k)");
  auto g = annihilator(summand, alg);
  auto r = ct_slow(g, DeltaSpec{{"k"}}, {"S[n]"});
  auto b = assemble_boundary(r, summand, {{"k", {parse_expression("0"), parse_expression("n")}}});
  for (long n = 0; n <= 8; ++n) {
    Point p = at({{"n", n}});
    // T applied to the summand, summed over the original range.
    mpq_class lhs = 0;
    for (long k = 0; k <= n; ++k) {
      Point q = p;
      q["k"] = k;
      lhs += apply_at(r.telescopers[0].convert(alg), summand, q);
    }
    EXPECT_EQ(lhs, eval_boundary(b, 0, p)) << n;
  }
}

TEST(Oracle, ChebyshevAnnihilatorWithDerivatives) {
  auto alg = OreAlgebra::create(parse_generators("S[n], Der[x], Der[y]"));
  auto e = parse_expression("chebyshevT(n, 1-x^2*y)/sqrt(1-x^2)");
  auto g = annihilator(e, alg);
  auto grid = SampleGrid::product({{"n", {0, 1, 2, 3, 5}}, {"x", {mpq_class(5, 13), mpq_class(3, 5), mpq_class(4, 5)}}, {"y", {mpq_class(1, 3), 3}}});
  auto rep = check_annihilator(g.elements(), e, grid);
  EXPECT_TRUE(rep.ok());
  // Coefficient poles (n = 0) are skipped.
  EXPECT_EQ(rep.checked + rep.skipped.size(), 30u);
  EXPECT_GE(rep.checked, 24u);
}

TEST(Oracle, SerialMatchesParallel) {
  auto alg = OreAlgebra::create(parse_generators("S[n], S[a], Der[x]"));
  auto e = parse_expression("laguerreL(n, a, x)");
  auto g = annihilator(e, alg);
  std::vector<OrePolynomial> ops = g.elements();
  ops.push_back(parse_operator("S[n] - 1", alg));
  auto grid = SampleGrid::product({{"n", {0, 1, 2, 3}}, {"a", {1, 2}}, {"x", {mpq_class(1, 3), 3}}});
  auto s = check_annihilator(ops, e, grid, Execution::serial);
  auto p = check_annihilator(ops, e, grid, Execution::parallel);
  ASSERT_EQ(s.failures.size(), p.failures.size());
  EXPECT_FALSE(s.ok());
  for (std::size_t i = 0; i < s.failures.size(); ++i) {
    EXPECT_EQ(s.failures[i].point, p.failures[i].point);
    EXPECT_EQ(s.failures[i].residue, p.failures[i].residue);
  }
}
