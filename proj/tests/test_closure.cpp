#include <gtest/gtest.h>

#include "holo/arith_parser.hpp"
#include "holo/closure.hpp"
#include "holo/error.hpp"

using namespace holo;

namespace {

GroebnerBasis ideal(const AlgebraPtr& a, std::initializer_list<std::string_view> texts) {
  std::vector<OrePolynomial> gens;
  for (auto t : texts) gens.push_back(parse_operator(t, a));
  return buchberger(gens);
}

RationalFunction rf(const AlgebraPtr& a, std::string_view text) { return parse_rational_function(text, a->field()); }

void expect_annihilates(const GroebnerBasis& g, const RationalFunction& f) {
  for (const auto& e : g.elements()) EXPECT_TRUE(e.apply(f).is_zero()) << e.to_string();
}

}  // namespace

TEST(Closure, PlusOfGeometricSequences) {
  auto alg = OreAlgebra::create(parse_generators("S[n]"));
  auto g = dfinite_plus(ideal(alg, {"S[n] - 2"}), ideal(alg, {"S[n] - 3"}));
  EXPECT_EQ(g.to_string(), "{S[n]^2 - 5*S[n] + 6}");
}

TEST(Closure, TimesOfGeometricSequences) {
  auto alg = OreAlgebra::create(parse_generators("S[n]"));
  auto g = dfinite_times(ideal(alg, {"S[n] - 2"}), ideal(alg, {"S[n] - 3"}));
  EXPECT_EQ(g.to_string(), "{S[n] - 6}");
}

TEST(Closure, ScalingSubstitutions) {
  auto d = OreAlgebra::create(parse_generators("Der[x]"));
  EXPECT_EQ(substitute_algebraic(ideal(d, {"Der[x] - 1"}), d, "x", rf(d, "2*x")).to_string(), "{Der[x] - 2}");
  auto s = OreAlgebra::create(parse_generators("S[n]"));
  EXPECT_EQ(substitute_integer_linear(ideal(s, {"S[n] - 2"}), s, "n", rf(s, "2*n")).to_string(), "{S[n] - 4}");
}

TEST(Closure, NegativeOffset) {
  auto s = OreAlgebra::create(parse_generators("S[n]"));
  // 1/n! shifted to 1/(n-1)!
  auto g = substitute_integer_linear(ideal(s, {"(n+1)*S[n] - 1"}), s, "n", rf(s, "n-1"));
  EXPECT_EQ(g.to_string(), "{S[n] - 1/n}");
}

TEST(Closure, ChainRule) {
  auto d = OreAlgebra::create(parse_generators("Der[x]"));
  EXPECT_EQ(substitute_algebraic(ideal(d, {"Der[x] - 1"}), d, "x", rf(d, "x^2")).to_string(), "{Der[x] - 2*x}");
  auto dd = OreAlgebra::create(parse_generators("Der[x], Der[y]"));
  auto g = substitute_algebraic(ideal(d, {"Der[x] - 1"}), dd, "x", rf(dd, "x*y"));
  EXPECT_EQ(g.to_string(), "{Der[y] - x, Der[x] - y}");
}

TEST(Closure, ProductOfRationalFunctions) {
  auto d = OreAlgebra::create(parse_generators("Der[x]"));
  auto g = dfinite_times(ideal(d, {"(1-x)*Der[x] - 1"}), ideal(d, {"x*Der[x] - 2"}));
  EXPECT_EQ(rank(g), 1u);
  expect_annihilates(g, parse_rational_function("x^2/(1-x)", d->full()));
  auto h = dfinite_plus(ideal(d, {"(1-x)*Der[x] - 1"}), ideal(d, {"x*Der[x] - 2"}));
  EXPECT_LE(rank(h), 2u);
  expect_annihilates(h, parse_rational_function("x^2 + 1/(1-x)", d->full()));
  expect_annihilates(h, parse_rational_function("3*x^2 - 5/(1-x)", d->full()));
}

TEST(Closure, RankBounds) {
  auto d = OreAlgebra::create(parse_generators("Der[x]"));
  auto trig = ideal(d, {"Der[x]^2 + 1"});
  auto ex = ideal(d, {"Der[x] - 1"});
  EXPECT_EQ(rank(dfinite_times(trig, trig)), 3u);
  EXPECT_EQ(rank(dfinite_plus(trig, ex)), 3u);
  auto alg = OreAlgebra::create(parse_generators("S[n], S[a], Der[x]"));
  auto lag = ideal(alg, {"S[a] + Der[x] - 1", "(n+1)*S[n] - x*Der[x] + (-a-n+x-1)", "x*Der[x]^2 + (a-x+1)*Der[x] + n"});
  EXPECT_EQ(rank(lag), 2u);
  EXPECT_LE(rank(dfinite_times(lag, lag)), 4u);
  EXPECT_LE(rank(dfinite_plus(lag, lag)), 2u);
}

TEST(Closure, FglmRoundTrip) {
  auto alg = OreAlgebra::create(parse_generators("S[n], S[a], Der[x]"));
  auto lag = ideal(alg, {"S[a] + Der[x] - 1", "(n+1)*S[n] - x*Der[x] + (-a-n+x-1)", "x*Der[x]^2 + (a-x+1)*Der[x] + n"});
  auto back = fglm(Representation::from_gb(lag));
  EXPECT_EQ(back.to_string(), lag.to_string());
}

TEST(Closure, ApplyOperator) {
  auto d = OreAlgebra::create(parse_generators("Der[x]"));
  auto trig = ideal(d, {"Der[x]^2 + 1"});
  EXPECT_EQ(apply_operator(parse_operator("Der[x]", d), trig).to_string(), trig.to_string());
  auto ex = ideal(d, {"Der[x] - 1"});
  EXPECT_TRUE(apply_operator(parse_operator("Der[x] - 1", d), ex).is_unit_ideal());
  EXPECT_EQ(apply_operator(parse_operator("x", d), ex).to_string(), "{Der[x] + (-x-1)/x}");
}

TEST(Closure, InfiniteRankIsRejected) {
  auto alg = OreAlgebra::create(parse_generators("S[n], Der[x]"));
  EXPECT_THROW(rank(ideal(alg, {"S[n] - 1"})), NotDFiniteError);
}

TEST(Closure, ShiftOfContinuousArgumentIsRejected) {
  auto d = OreAlgebra::create(parse_generators("Der[x]"));
  auto s = OreAlgebra::create(parse_generators("S[n]"));
  auto r = Representation::from_gb(ideal(d, {"Der[x] - 1"}));
  auto n = RationalFunction::variable(s->field(), 0);
  EXPECT_THROW(substitute(r, s, {{"x", n}}), NotDFiniteError);
}
