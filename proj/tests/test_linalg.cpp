#include <gtest/gtest.h>

#include <random>

#include "holo/linalg.hpp"

using namespace holo;

namespace {

RMatrix random_matrix(const ContextPtr& ctx, std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> c(-3, 3);
  auto x = RationalFunction::variable(ctx, 0), y = RationalFunction::variable(ctx, 1);
  RMatrix m(rows, RVector(cols, RationalFunction(ctx)));
  for (auto& row : m)
    for (auto& a : row) a = RationalFunction(ctx, c(rng)) * x + RationalFunction(ctx, c(rng)) * y + RationalFunction(ctx, c(rng));
  return m;
}

void expect_kernel(const RMatrix& m, const std::vector<RVector>& basis) {
  for (const auto& v : basis)
    for (const auto& entry : mat_vec(m, v)) EXPECT_TRUE(entry.is_zero());
}

}  // namespace

TEST(Linalg, IdentityHasTrivialNullspace) {
  auto ctx = make_context({"x"});
  RMatrix id(3, RVector(3, RationalFunction(ctx)));
  for (int i = 0; i < 3; ++i) id[i][i] = RationalFunction(ctx, 1);
  EXPECT_TRUE(nullspace(id).empty());
}

TEST(Linalg, SingleRelation) {
  auto ctx = make_context({"x"});
  auto x = RationalFunction::variable(ctx, 0);
  RMatrix m{{x, RationalFunction(ctx, -1)}};
  auto basis = nullspace(m);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0][0].to_string(), "1");
  EXPECT_EQ(basis[0][1].to_string(), "x");
}

TEST(Linalg, RandomRankFour) {
  auto ctx = make_context({"x", "y"});
  std::mt19937 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    RMatrix m = random_matrix(ctx, rng, 4, 6);
    if (rank(m) != 4) continue;
    auto basis = nullspace(m, 6, Execution::serial);
    EXPECT_EQ(basis.size(), 2u);
    expect_kernel(m, basis);
    auto par = nullspace(m, 6, Execution::parallel);
    ASSERT_EQ(par.size(), basis.size());
    for (std::size_t i = 0; i < par.size(); ++i) EXPECT_EQ(par[i], basis[i]);
  }
}

TEST(Linalg, DeficientRankAndInverse) {
  auto ctx = make_context({"x", "y"});
  std::mt19937 rng(9);
  RMatrix m = random_matrix(ctx, rng, 3, 5);
  m.push_back(m[0]);
  for (std::size_t j = 0; j < 5; ++j) m[3][j] += m[1][j] * RationalFunction::variable(ctx, 1);
  EXPECT_EQ(rank(m), 3u);
  auto basis = nullspace(m);
  EXPECT_EQ(basis.size(), 2u);
  expect_kernel(m, basis);

  RMatrix sq = random_matrix(ctx, rng, 3, 3);
  RMatrix inv = inverse(sq);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      RationalFunction s(ctx);
      for (std::size_t k = 0; k < 3; ++k) s += sq[i][k] * inv[k][j];
      EXPECT_EQ(s, RationalFunction(ctx, i == j ? 1 : 0));
    }
}

TEST(Linalg, RationalNullspace) {
  QMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  auto basis = nullspace(m, 3);
  ASSERT_EQ(basis.size(), 1u);
  for (const auto& row : m) EXPECT_EQ(row[0] * basis[0][0] + row[1] * basis[0][1] + row[2] * basis[0][2], 0);
}

TEST(Linalg, UnivariateNullspaceMatchesFractionFree) {
  auto ctx = make_context({"n", "k"});
  auto n = RationalFunction::variable(ctx, 0);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    // rank 5 of 8 columns with entries of degree up to 4 in n
    RMatrix a(5, RVector(8, RationalFunction(ctx)));
    for (auto& row : a)
      for (auto& e : row)
        for (int d = 0; d <= 4; ++d) e += RationalFunction(ctx, c(rng)) * n.pow(d);
    RMatrix m = a;
    m.push_back(RVector(8, RationalFunction(ctx)));
    for (std::size_t j = 0; j < 8; ++j) m.back()[j] = a[0][j] * (n + RationalFunction(ctx, 1)) - a[1][j] / (n - RationalFunction(ctx, 2));
    auto basis = nullspace(m, 8, Execution::serial);
    auto ff = fraction_free_reduce(clear_row_denominators(m), 8, Execution::serial);
    EXPECT_EQ(basis.size(), 8 - ff.rows.size());
    expect_kernel(m, basis);
    for (const auto& v : basis)
      for (const auto& e : v) EXPECT_TRUE(e.den().is_one());
  }
}
