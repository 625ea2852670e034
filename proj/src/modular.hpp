#pragma once

// Arithmetic modulo the Mersenne prime 2^61 - 1, used for randomized rank and
// dependency checks before exact solving.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "holo/rational_function.hpp"

namespace holo::modp {

inline constexpr std::uint64_t P = (std::uint64_t(1) << 61) - 1;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= P ? s - P : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + P - b; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t s = static_cast<std::uint64_t>(z & P) + static_cast<std::uint64_t>(z >> 61);
  return s >= P ? s - P : s;
}
inline std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul(a, a))
    if (e & 1) r = mul(r, a);
  return r;
}
inline std::uint64_t inv(std::uint64_t a) { return pow(a, P - 2); }

inline std::uint64_t from_mpz(const mpz_class& z) {
  mpz_class r = z % mpz_class(static_cast<unsigned long>(P));
  if (r < 0) r += static_cast<unsigned long>(P);
  return r.get_ui();
}

/// nullopt when the denominator is divisible by P.
inline std::optional<std::uint64_t> from_mpq(const mpq_class& q) {
  std::uint64_t d = from_mpz(q.get_den());
  if (d == 0) return std::nullopt;
  return mul(from_mpz(q.get_num()), inv(d));
}

/// A polynomial with coefficients reduced mod P, for repeated evaluation.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Polynomial& p) {
    for (const auto& t : p.terms()) {
      auto c = from_mpq(t.coeff);
      if (!c) throw MathError("coefficient not invertible modulo the prime");
      terms_.push_back({t.exponents, *c});
    }
  }
  std::uint64_t evaluate(std::span<const std::uint64_t> point) const {
    std::uint64_t s = 0;
    for (const auto& [e, c] : terms_) {
      std::uint64_t v = c;
      for (std::size_t i = 0; i < point.size(); ++i)
        if (e[i]) v = mul(v, pow(point[i], e[i]));
      s = add(s, v);
    }
    return s;
  }

 private:
  std::vector<std::pair<Exponents, std::uint64_t>> terms_;
};

class Rational {
 public:
  Rational() = default;
  explicit Rational(const RationalFunction& f) : num_(f.num()), den_(f.den()) {}
  /// nullopt at a pole.
  std::optional<std::uint64_t> evaluate(std::span<const std::uint64_t> point) const {
    std::uint64_t d = den_.evaluate(point);
    if (d == 0) return std::nullopt;
    return mul(num_.evaluate(point), inv(d));
  }

 private:
  Poly num_;
  Poly den_;
};

/// Incremental row echelon form; insert reports whether a row was independent.
class Echelon {
 public:
  explicit Echelon(std::size_t columns) : columns_(columns) {}

  bool insert(std::vector<std::uint64_t> row) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint64_t a = row[pivots_[r]];
      if (a == 0) continue;
      for (std::size_t j = 0; j < columns_; ++j)
        if (rows_[r][j]) row[j] = sub(row[j], mul(a, rows_[r][j]));
    }
    std::size_t p = 0;
    while (p < columns_ && row[p] == 0) ++p;
    if (p == columns_) return false;
    std::uint64_t s = inv(row[p]);
    for (auto& x : row) x = mul(x, s);
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t columns_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(std::vector<std::vector<std::uint64_t>>& m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    std::uint64_t s = inv(m[r][c]);
    for (std::size_t j = c; j < columns; ++j) m[r][j] = mul(m[r][j], s);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      std::uint64_t f = m[i][c];
      for (std::size_t j = c; j < columns; ++j)
        if (m[r][j]) m[i][j] = sub(m[i][j], mul(f, m[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

/// Arithmetic modulo a prime below 2^63 chosen at run time.
struct Zp {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
  std::uint64_t from_mpz(const mpz_class& z) const {
    mpz_class r = z % mpz_class(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
  }
  std::optional<std::uint64_t> from_mpq(const mpq_class& q) const {
    std::uint64_t d = from_mpz(q.get_den());
    if (d == 0) return std::nullopt;
    return mul(from_mpz(q.get_num()), inv(d));
  }
};

/// Dense univariate polynomials over Zp, lowest coefficient first, no
/// trailing zeros.
using UPoly = std::vector<std::uint64_t>;

inline void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline UPoly mul(const Zp& f, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
  trim(c);
  return c;
}

inline UPoly add(const Zp& f, UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.add(a[i], b[i]);
  trim(a);
  return a;
}

inline UPoly scale(const Zp& f, UPoly a, std::uint64_t c) {
  for (auto& x : a) x = f.mul(x, c);
  trim(a);
  return a;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<UPoly, UPoly> divmod(const Zp& f, UPoly a, const UPoly& b) {
  if (a.size() < b.size()) return {{}, a};
  UPoly q(a.size() - b.size() + 1, 0);
  std::uint64_t li = f.inv(b.back());
  for (std::size_t k = q.size(); k-- > 0;) {
    std::uint64_t c = f.mul(a[k + b.size() - 1], li);
    q[k] = c;
    if (c)
      for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = f.sub(a[k + j], f.mul(c, b[j]));
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline UPoly monic(const Zp& f, UPoly a) { return a.empty() ? a : scale(f, a, f.inv(a.back())); }

inline UPoly gcd(const Zp& f, UPoly a, UPoly b) {
  while (!b.empty()) {
    UPoly r = divmod(f, std::move(a), b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

}  // namespace holo::modp
