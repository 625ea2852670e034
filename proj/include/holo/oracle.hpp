#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "holo/execution.hpp"
#include "holo/expression.hpp"
#include "holo/ore_polynomial.hpp"
#include "holo/telescoping.hpp"

namespace holo {

/// Exact values for symbols. Discrete variables must be integers.
using Point = std::map<std::string, mpq_class>;

/// Exact value of e at the point. Special functions are evaluated by their
/// recurrences, exp and sqrt only where the value is rational. Throws
/// MathError ("point not exactly evaluable") at poles and irrational values.
mpq_class eval_expression(const ExprPtr& e, const Point& point);

/// Mixed partial derivative of e at the point, orders per variable, computed
/// from an exact truncated Taylor expansion.
mpq_class eval_derivative(const ExprPtr& e, const Point& point, const std::map<std::string, unsigned>& orders);

/// (op e)(point). Coefficients are evaluated at the point; the value of a
/// q-shift variable qk not given in the point is q^k.
mpq_class apply_at(const OrePolynomial& op, const ExprPtr& e, const Point& point);

struct SampleGrid {
  std::vector<Point> points;
  /// Points for which this returns true are skipped before evaluation.
  std::function<bool(const Point&)> exclude;

  /// Cartesian product of the axes.
  static SampleGrid product(const std::map<std::string, std::vector<mpq_class>>& axes);
};

struct Residue {
  std::size_t op = 0;
  Point point;
  mpq_class residue;
};

struct OracleReport {
  std::size_t checked = 0;
  /// Nonzero residues.
  std::vector<Residue> failures;
  /// Points excluded by the predicate or not exactly evaluable.
  std::vector<Point> skipped;
  /// Indices of zero operators, which annihilate anything.
  std::vector<std::size_t> degenerate;

  bool ok() const { return failures.empty(); }
};

/// Applies every operator to e at every grid point. Throws MathError when no
/// point is left after exclusions.
OracleReport check_annihilator(const std::vector<OrePolynomial>& ops, const ExprPtr& e, const SampleGrid& grid,
                               Execution exec = Execution::parallel);

struct SumBound {
  std::string variable;
  ExprPtr lower;
  ExprPtr upper;
};

/// sum(... sum(summand, last) ..., first) with the first bound outermost.
ExprPtr nested_sum(const ExprPtr& summand, const std::vector<SumBound>& bounds);

/// Brute-force F = nested sum of the summand, then T F at each grid point. The
/// residue is T F - rhs (rhs defaults to 0).
OracleReport check_sum_identity(const OrePolynomial& telescoper, const ExprPtr& summand,
                                const std::vector<SumBound>& bounds, const SampleGrid& grid,
                                const std::function<mpq_class(const Point&)>& rhs = {},
                                Execution exec = Execution::parallel);

/// Inhomogeneous part of telescoper k at the point: sum over i of
/// [C_i f] at the lower bound minus at the upper evaluation point, summed over
/// the remaining discrete variables. Zero for natural boundaries.
mpq_class eval_boundary(const BoundaryExpression& b, std::size_t k, const Point& point);

}  // namespace holo
