#pragma once

#include "holo/polynomial.hpp"

namespace holo {

/// Element of Q(variables). Numerator and denominator are coprime and the
/// denominator has deglex leading coefficient 1; zero is 0/1.
class RationalFunction {
 public:
  explicit RationalFunction(ContextPtr ctx);
  RationalFunction(ContextPtr ctx, const mpq_class& constant);
  explicit RationalFunction(Polynomial num);
  /// Cancels common factors and normalizes the denominator.
  RationalFunction(Polynomial num, Polynomial den);
  /// Trusts the caller that num/den is already canonical.
  static RationalFunction from_canonical(Polynomial num, Polynomial den);
  static RationalFunction variable(ContextPtr ctx, std::size_t index);

  const ContextPtr& context() const { return num_.context(); }
  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  mpq_class constant_value() const { return num_.constant_value(); }
  bool depends_on(std::size_t var) const { return num_.depends_on(var) || den_.depends_on(var); }
  std::uint32_t support_mask() const { return num_.support_mask() | den_.support_mask(); }

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  RationalFunction inverse() const;
  RationalFunction pow(int k) const;

  RationalFunction derivative(std::size_t var) const;
  /// var -> var + k
  RationalFunction shift(std::size_t var, const mpq_class& k) const;
  /// var -> factor * var
  RationalFunction scale_variable(std::size_t var, const RationalFunction& factor) const;
  RationalFunction substitute(std::size_t var, const RationalFunction& value) const;
  /// Throws MathError when the denominator vanishes at the point.
  mpq_class evaluate(std::span<const mpq_class> point) const;
  /// Partial evaluation of the variables in mask; other entries of point are ignored.
  RationalFunction evaluate_partial(std::uint32_t mask, std::span<const mpq_class> point) const;
  RationalFunction embed(const ContextPtr& target) const;

  std::string to_string() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Homogenized evaluation p(var = num/den) * den^deg_var(p).
Polynomial substitute_fraction(const Polynomial& p, std::size_t var, const Polynomial& num, const Polynomial& den);

}  // namespace holo
