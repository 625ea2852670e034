#pragma once

#include <vector>

#include "holo/execution.hpp"
#include "holo/rational_function.hpp"

namespace holo {

using RVector = std::vector<RationalFunction>;
using RMatrix = std::vector<RVector>;
using PMatrix = std::vector<std::vector<Polynomial>>;
using QVector = std::vector<mpq_class>;
using QMatrix = std::vector<QVector>;

/// Fraction-free Gauss-Jordan form: every pivot row has the same pivot value d
/// and rows past the rank are dropped.
struct FractionFreeForm {
  PMatrix rows;
  std::vector<std::size_t> pivot_columns;
  std::size_t columns = 0;
};

/// Multiplies each row by the lcm of its denominators.
PMatrix clear_row_denominators(const RMatrix& m);
FractionFreeForm fraction_free_reduce(PMatrix m, std::size_t columns, Execution exec = Execution::parallel);

/// Basis of the right nullspace. Vectors are polynomial, primitive, and the
/// first nonzero entry has leading coefficient 1. The free column of vector i
/// is the i-th non-pivot column.
std::vector<RVector> nullspace(const RMatrix& m, std::size_t columns, Execution exec = Execution::parallel);
inline std::vector<RVector> nullspace(const RMatrix& m) { return nullspace(m, m.empty() ? 0 : m[0].size()); }
std::size_t rank(const RMatrix& m);
/// Inverse of a square matrix, or MathError if singular.
RMatrix inverse(const RMatrix& m);
RVector mat_vec(const RMatrix& m, const RVector& v);

/// Reduced row echelon form over Q.
struct QEchelon {
  QMatrix rows;
  std::vector<std::size_t> pivot_columns;
};
QEchelon rref(QMatrix m, std::size_t columns);
std::vector<QVector> nullspace(const QMatrix& m, std::size_t columns);

}  // namespace holo
