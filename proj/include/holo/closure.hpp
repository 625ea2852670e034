#pragma once

#include <map>
#include <string>
#include <vector>

#include "holo/groebner.hpp"
#include "holo/linalg.hpp"

namespace holo {

/// Staircase of a Groebner basis: the monomials not divisible by any leading
/// monomial, in ascending order. Its size is the rank.
struct QuotientBasis {
  std::vector<Monomial> staircase;
  std::size_t rank() const { return staircase.size(); }
};

/// Throws NotDFiniteError when the staircase is infinite.
QuotientBasis quotient_basis(const GroebnerBasis& g);
inline std::size_t rank(const GroebnerBasis& g) { return quotient_basis(g).rank(); }

/// A finite-dimensional vector space over the coefficient field with one
/// semilinear map per generator, and a distinguished vector standing for the
/// function. Row i of action(g) holds the coordinates of d_g(e_i); applying a
/// generator to w gives sum_i sigma(w_i) * row_i + delta(w_i) * e_i.
class Representation {
 public:
  Representation(AlgebraPtr algebra, RVector start, std::vector<RMatrix> action);
  /// The quotient O/I with basis given by the staircase and start vector [1].
  static Representation from_gb(const GroebnerBasis& g);
  /// Rank one: generator g maps f to factors[g] * f.
  static Representation first_order(AlgebraPtr algebra, const std::vector<RationalFunction>& factors);

  const AlgebraPtr& algebra() const { return algebra_; }
  std::size_t dim() const { return start_.size(); }
  const RVector& start() const { return start_; }
  const RMatrix& action(std::size_t g) const { return action_[g]; }
  bool is_zero_function() const;

  RVector apply_generator(std::size_t g, const RVector& w) const;
  /// Inverse of a shift or q-shift generator.
  RVector apply_inverse(std::size_t g, const RVector& w) const;
  RVector apply(const OrePolynomial& p, const RVector& w) const;

 private:
  AlgebraPtr algebra_;
  RVector start_;
  std::vector<RMatrix> action_;
  mutable std::vector<std::optional<RMatrix>> inverse_;
};

/// Linear relations among the images of the start vector, enumerated in the
/// order's ascending sequence (FGLM). The result is a reduced Groebner basis.
GroebnerBasis fglm(const Representation& r, const MonomialOrder& order);
inline GroebnerBasis fglm(const Representation& r) { return fglm(r, default_order(*r.algebra())); }
/// The cyclic part spanned by the start vector, re-expressed over its staircase.
Representation minimize(const Representation& r);

Representation plus(const Representation& a, const Representation& b);
Representation times(const Representation& a, const Representation& b);
Representation apply_operator(const OrePolynomial& q, const Representation& r);
/// Scales the function by a rational function c: (c*f).
Representation scale(const Representation& r, const RationalFunction& c);

/// Pullback f -> f(phi) onto a target algebra. images maps each source field
/// variable (by name) to a rational function over target->field(); variables
/// without an entry map to the same-named target variable.
Representation substitute(const Representation& r, const AlgebraPtr& target,
                          const std::map<std::string, RationalFunction>& images);

GroebnerBasis dfinite_plus(const GroebnerBasis& i, const GroebnerBasis& j);
GroebnerBasis dfinite_times(const GroebnerBasis& i, const GroebnerBasis& j);
GroebnerBasis apply_operator(const OrePolynomial& q, const GroebnerBasis& i);
/// x -> a with a rational in continuous variables of the target algebra.
GroebnerBasis substitute_algebraic(const GroebnerBasis& i, const AlgebraPtr& target, const std::string& var,
                                   const RationalFunction& a);
/// n -> a with a integer-linear in discrete variables of the target algebra.
GroebnerBasis substitute_integer_linear(const GroebnerBasis& i, const AlgebraPtr& target, const std::string& var,
                                        const RationalFunction& a);

/// Composes c with images given per variable of c's context.
RationalFunction compose(const RationalFunction& c, const std::vector<RationalFunction>& images,
                         const ContextPtr& target);

}  // namespace holo
