#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holo/error.hpp"

namespace holo {

inline constexpr std::size_t kMaxVariables = 16;

/// Ordered list of variable names shared by all polynomials of a computation.
class Context {
 public:
  explicit Context(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

 private:
  std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const Context>;

ContextPtr make_context(std::vector<std::string> names);
bool same_context(const ContextPtr& a, const ContextPtr& b);

/// Dense exponent vector; unused slots stay zero.
struct Exponents {
  std::array<std::uint16_t, kMaxVariables> e{};

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_zero() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }
  bool divides(const Exponents& o) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  std::uint16_t operator[](std::size_t i) const { return e[i]; }
  std::uint16_t& operator[](std::size_t i) { return e[i]; }

  friend bool operator==(const Exponents&, const Exponents&) = default;
  friend auto operator<=>(const Exponents&, const Exponents&) = default;
};

Exponents operator+(const Exponents& a, const Exponents& b);
/// Requires b.divides(a).
Exponents operator-(const Exponents& a, const Exponents& b);
Exponents exponent_lcm(const Exponents& a, const Exponents& b);
Exponents exponent_gcd(const Exponents& a, const Exponents& b);

/// Degree-lexicographic comparison, variable 0 most significant. Returns <0, 0, >0.
int deglex_compare(const Exponents& a, const Exponents& b);

struct DeglexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return deglex_compare(a, b) > 0; }
};

/// Sparse multivariate polynomial over Q. Terms are kept strictly descending in
/// deglex order with no zero coefficients.
class Polynomial {
 public:
  struct Term {
    Exponents exponents;
    mpq_class coeff;
  };

  explicit Polynomial(ContextPtr ctx);
  Polynomial(ContextPtr ctx, const mpq_class& constant);
  static Polynomial variable(ContextPtr ctx, std::size_t index);
  static Polynomial monomial(ContextPtr ctx, const Exponents& e, const mpq_class& c);
  /// Sorts, merges equal exponents and drops zeros.
  static Polynomial from_terms(ContextPtr ctx, std::vector<Term> terms);
  /// Caller guarantees strictly descending order and nonzero coefficients.
  static Polynomial from_sorted_terms(ContextPtr ctx, std::vector<Term> terms);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponents.is_zero()); }
  bool is_one() const;
  /// Constant term value (0 when absent).
  mpq_class constant_value() const;

  const Term& leading_term() const { return terms_.front(); }
  const mpq_class& leading_coeff() const { return terms_.front().coeff; }
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  /// Lowest exponent of var over all terms.
  std::uint32_t min_degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const;
  /// Bitmask of variables that occur.
  std::uint32_t support_mask() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const mpq_class& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const mpq_class& c) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial mul_term(const Exponents& e, const mpq_class& c) const;
  Polynomial pow(unsigned k) const;
  /// Scales so that the leading coefficient is 1; zero stays zero.
  Polynomial monic() const;

  /// Exact quotient a / b, or nullopt if b does not divide a.
  static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

  Polynomial derivative(std::size_t var) const;
  /// var -> var + k
  Polynomial shift(std::size_t var, const mpq_class& k) const;
  /// var -> factor * var with factor a polynomial (used for q-shifts).
  Polynomial scale_variable(std::size_t var, const Polynomial& factor) const;
  /// Replaces var by the polynomial value (same context).
  Polynomial substitute(std::size_t var, const Polynomial& value) const;
  /// Full evaluation; point has one entry per context variable.
  mpq_class evaluate(std::span<const mpq_class> point) const;
  /// Coefficients with respect to the variables in mask: maps exponent (restricted
  /// to mask) to a polynomial in the remaining variables.
  std::vector<std::pair<Exponents, Polynomial>> coefficients_in(std::uint32_t mask) const;
  /// Moves the polynomial into another context by variable name.
  Polynomial embed(const ContextPtr& target) const;

  std::string to_string() const;

 private:
  ContextPtr ctx_;
  std::vector<Term> terms_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// Monic least common multiple.
Polynomial lcm(const Polynomial& a, const Polynomial& b);
/// Product of the distinct squarefree parts (monic).
Polynomial squarefree_part(const Polynomial& p);
/// Content with respect to the variables in mask (a polynomial free of them), monic.
Polynomial content_in(const Polynomial& p, std::uint32_t mask);

}  // namespace holo
