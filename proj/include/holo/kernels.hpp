#pragma once

#include <functional>
#include <vector>

#include "holo/execution.hpp"
#include "holo/rational_function.hpp"

namespace holo::kernels {

/// One fraction-free Gauss-Jordan step: every row except pivot_row becomes
/// (p * row - row[col] * pivot) / prev, where p = m[pivot_row][col].
void eliminate_column(std::vector<std::vector<Polynomial>>& m, std::size_t pivot_row, std::size_t col,
                      const Polynomial& prev, Execution exec);

/// Evaluates every entry of a list at one point.
std::vector<mpq_class> evaluate_all(const std::vector<RationalFunction>& values, std::span<const mpq_class> point,
                                    Execution exec);

/// Runs body(i) for i in [0, n). In parallel mode iterations run on the OpenMP
/// team and body must only touch slot i of any shared output.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Execution exec);

}  // namespace holo::kernels
