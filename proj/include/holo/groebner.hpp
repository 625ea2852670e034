#pragma once

#include <vector>

#include "holo/execution.hpp"
#include "holo/ore_polynomial.hpp"

namespace holo {

struct GroebnerOptions {
  /// Upper bound on S-pair reductions before CapExceededError.
  std::size_t max_pair_reductions = 10000;
  Execution exec = Execution::parallel;
};

/// A reduced left Groebner basis: monic elements sorted by leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis(AlgebraPtr algebra, MonomialOrder order, std::vector<OrePolynomial> elements);

  const AlgebraPtr& algebra() const { return algebra_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<OrePolynomial>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool is_unit_ideal() const;
  std::vector<Monomial> leading_monomials() const;
  std::string to_string() const;

 private:
  AlgebraPtr algebra_;
  MonomialOrder order_;
  std::vector<OrePolynomial> elements_;
};

enum class ReductionStrategy { largest_first, smallest_first };

bool monomial_divides(const Monomial& a, const Monomial& b);

/// Full left normal form of p modulo the given elements.
OrePolynomial reduce(const OrePolynomial& p, const std::vector<OrePolynomial>& basis, const MonomialOrder& order,
                     ReductionStrategy strategy = ReductionStrategy::largest_first);
OrePolynomial reduce(const OrePolynomial& p, const GroebnerBasis& g,
                     ReductionStrategy strategy = ReductionStrategy::largest_first);

/// Normal form together with the cofactors: p = nf + sum q_i * basis_i.
struct TrackedReduction {
  OrePolynomial remainder;
  std::vector<OrePolynomial> quotients;
};
TrackedReduction reduce_tracked(const OrePolynomial& p, const std::vector<OrePolynomial>& basis,
                                const MonomialOrder& order);

/// The default order of an algebra: deglex with slot order as precedence.
MonomialOrder default_order(const OreAlgebra& algebra);

GroebnerBasis buchberger(const std::vector<OrePolynomial>& generators, const MonomialOrder& order,
                         const GroebnerOptions& options = {});
inline GroebnerBasis buchberger(const std::vector<OrePolynomial>& generators) {
  return buchberger(generators, default_order(*generators.at(0).algebra()));
}

/// Groebner basis plus, for each element, cofactors over the input generators:
/// basis[i] = sum_j cofactors[i][j] * generators[j].
struct ExtendedBasis {
  GroebnerBasis basis;
  std::vector<std::vector<OrePolynomial>> cofactors;
};
ExtendedBasis buchberger_extended(const std::vector<OrePolynomial>& generators, const MonomialOrder& order,
                                  const GroebnerOptions& options = {});

/// Elements of the Groebner basis under a block order that are free of the
/// given elimination slots. The generators must live in an elimination algebra.
std::vector<OrePolynomial> eliminate(const std::vector<OrePolynomial>& generators, std::uint32_t slot_mask,
                                     const GroebnerOptions& options = {});

/// Groebner basis of the left module generated by rows (positions encode the
/// components) under the POT extension of inner.
GroebnerBasis module_gb(const std::vector<OrePolynomial>& rows, const MonomialOrder& inner,
                        const GroebnerOptions& options = {});

}  // namespace holo
