#pragma once

#include <string>
#include <utility>
#include <vector>

#include "holo/ore_algebra.hpp"

namespace holo {

/// Element of an Ore algebra (or of a free module over it when positions are
/// used), in normal form: coefficients left of monomials. Terms are stored in
/// CanonicalOrder with nonzero coefficients.
class OrePolynomial {
 public:
  struct Term {
    Monomial monomial;
    RationalFunction coeff;
  };

  /// Empty placeholder without an algebra; assign before use.
  OrePolynomial() = default;
  explicit OrePolynomial(AlgebraPtr algebra);
  OrePolynomial(AlgebraPtr algebra, const RationalFunction& c);
  static OrePolynomial generator(AlgebraPtr algebra, std::size_t g, unsigned power = 1);
  static OrePolynomial slot_power(AlgebraPtr algebra, std::size_t slot, unsigned power = 1);
  static OrePolynomial monomial(AlgebraPtr algebra, const Monomial& m, const RationalFunction& c);
  static OrePolynomial from_terms(AlgebraPtr algebra, std::vector<Term> terms);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Nonzero only as a constant (monomial 1, position 0).
  bool is_scalar() const;
  std::uint32_t max_position() const;
  /// Bitmask of slots occurring in any monomial.
  std::uint32_t slot_mask() const;
  /// Bitmask of field variables occurring in any coefficient.
  std::uint32_t coefficient_mask() const;

  const Term& leading_term(const MonomialOrder& order) const;
  RationalFunction coefficient(const Monomial& m) const;

  OrePolynomial operator-() const;
  OrePolynomial& operator+=(const OrePolynomial& o);
  OrePolynomial& operator-=(const OrePolynomial& o);
  friend OrePolynomial operator+(OrePolynomial a, const OrePolynomial& b) { return a += b; }
  friend OrePolynomial operator-(OrePolynomial a, const OrePolynomial& b) { return a -= b; }
  /// Ore product.
  friend OrePolynomial operator*(const OrePolynomial& a, const OrePolynomial& b);
  /// Right multiplication by the inverse of a scalar operator.
  friend OrePolynomial operator/(const OrePolynomial& a, const OrePolynomial& b);
  friend bool operator==(const OrePolynomial& a, const OrePolynomial& b);
  OrePolynomial pow(int k) const;

  /// c * P (left scalar multiplication).
  OrePolynomial scale(const RationalFunction& c) const;
  /// (c * m) * P, the basic step of left reduction.
  OrePolynomial mul_term_left(const RationalFunction& c, const Monomial& m) const;
  /// Makes the leading coefficient 1.
  OrePolynomial monic(const MonomialOrder& order) const;
  /// Moves all terms to the given module position (P must live at position 0).
  OrePolynomial at_position(std::uint32_t position) const;
  /// Terms at one module position, moved to position 0.
  OrePolynomial component(std::uint32_t position) const;

  /// Action on a function given as a rational function over algebra()->full().
  RationalFunction apply(const RationalFunction& f) const;

  /// Rewrites the operator over another algebra whose generators include all
  /// generators used here; coefficients are embedded by variable name and
  /// elimination slots are converted to coefficients or back.
  OrePolynomial convert(const AlgebraPtr& target) const;

  std::string to_string() const;

 private:
  AlgebraPtr algebra_;
  std::vector<Term> terms_;
};

/// Parses the operator text format, e.g. `(n+1)*S[n] - x*Der[x] + 1`.
OrePolynomial parse_operator(std::string_view text, const AlgebraPtr& algebra);

/// Left-multiplies P by the lcm of its coefficient denominators.
OrePolynomial clear_denominators(const OrePolynomial& p);

}  // namespace holo
