#include "holo/kernels.hpp"

#include <exception>

namespace holo::kernels {
namespace {

void update_row(std::vector<Polynomial>& row, const std::vector<Polynomial>& pivot, std::size_t col,
                const Polynomial& p, const Polynomial& prev) {
  if (row[col].is_zero()) {
    // Only the scaling by p / prev applies.
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j].is_zero()) continue;
      row[j] = *Polynomial::divide_exact(p * row[j], prev);
    }
    return;
  }
  Polynomial factor = row[col];
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j == col) continue;
    if (row[j].is_zero() && pivot[j].is_zero()) continue;
    Polynomial t = p * row[j] - factor * pivot[j];
    auto q = Polynomial::divide_exact(t, prev);
    if (!q) throw MathError("fraction-free elimination lost exactness");
    row[j] = std::move(*q);
  }
  row[col] = Polynomial(p.context());
}

}  // namespace

void eliminate_column(std::vector<std::vector<Polynomial>>& m, std::size_t pivot_row, std::size_t col,
                      const Polynomial& prev, Execution exec) {
  const auto& pivot = m[pivot_row];
  const Polynomial p = pivot[col];
  for_each_index(
      m.size(),
      [&](std::size_t i) {
        if (i != pivot_row) update_row(m[i], pivot, col, p, prev);
      },
      exec);
}

std::vector<mpq_class> evaluate_all(const std::vector<RationalFunction>& values, std::span<const mpq_class> point,
                                    Execution exec) {
  std::vector<mpq_class> out(values.size());
  for_each_index(values.size(), [&](std::size_t i) { out[i] = values[i].evaluate(point); }, exec);
  return out;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Execution exec) {
  if (exec == Execution::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(holo_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace holo::kernels
