#include "holo/rational_function.hpp"

#include <bit>
#include <map>

namespace holo {

RationalFunction::RationalFunction(ContextPtr ctx) : num_(ctx), den_(ctx, 1) {}

RationalFunction::RationalFunction(ContextPtr ctx, const mpq_class& constant) : num_(ctx, constant), den_(ctx, 1) {}

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(num_.context(), 1) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw MathError("division by zero");
  if (num_.is_zero()) {
    den_ = Polynomial(num_.context(), 1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *Polynomial::divide_exact(num_, g);
      den_ = *Polynomial::divide_exact(den_, g);
    }
  }
  mpq_class lc = den_.leading_coeff();
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction RationalFunction::from_canonical(Polynomial num, Polynomial den) {
  RationalFunction r(num.context());
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

RationalFunction RationalFunction::variable(ContextPtr ctx, std::size_t index) {
  return RationalFunction(Polynomial::variable(std::move(ctx), index));
}

RationalFunction RationalFunction::operator-() const { return from_canonical(-num_, den_); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) return *this = RationalFunction(num_ + o.num_, den_);
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    return *this;
  }
  Polynomial g = gcd(den_, o.den_);
  if (g.is_one()) {
    Polynomial n = num_ * o.den_ + o.num_ * den_;
    Polynomial d = den_ * o.den_;
    return *this = RationalFunction(std::move(n), std::move(d));
  }
  Polynomial b1 = *Polynomial::divide_exact(den_, g);
  Polynomial d1 = *Polynomial::divide_exact(o.den_, g);
  Polynomial t = num_ * d1 + o.num_ * b1;
  if (t.is_zero()) return *this = RationalFunction(context());
  Polynomial g2 = gcd(t, g);
  if (!g2.is_one()) {
    t = *Polynomial::divide_exact(t, g2);
    g = *Polynomial::divide_exact(g, g2);
  }
  return *this = RationalFunction(std::move(t), b1 * d1 * g);
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction(context());
  if (o.is_constant()) {
    num_ *= o.num_.constant_value();
    return *this;
  }
  if (is_constant()) {
    mpq_class c = num_.constant_value();
    *this = o;
    num_ *= c;
    return *this;
  }
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  Polynomial a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_one()) {
    Polynomial g = gcd(a, d);
    if (!g.is_one()) {
      a = *Polynomial::divide_exact(a, g);
      d = *Polynomial::divide_exact(d, g);
    }
  }
  if (!b.is_one()) {
    Polynomial g = gcd(c, b);
    if (!g.is_one()) {
      c = *Polynomial::divide_exact(c, g);
      b = *Polynomial::divide_exact(b, g);
    }
  }
  Polynomial n = a * c, m = b * d;
  mpq_class lc = m.leading_coeff();
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    n *= inv;
    m *= inv;
  }
  num_ = std::move(n);
  den_ = std::move(m);
  return *this;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw MathError("division by zero");
  Polynomial n = den_, d = num_;
  mpq_class lc = d.leading_coeff();
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    n *= inv;
    d *= inv;
  }
  return from_canonical(std::move(n), std::move(d));
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction RationalFunction::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  // Powers of coprime polynomials stay coprime.
  Polynomial n = num_.pow(unsigned(k)), d = den_.pow(unsigned(k));
  return from_canonical(std::move(n), std::move(d));
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  if (!depends_on(var)) return RationalFunction(context());
  if (den_.is_one()) return RationalFunction(num_.derivative(var));
  // (n/d)' = (n'd - nd')/d^2; with d = g*h where g = gcd(d, d') the result is
  // (n'h - n*(d'/g))/(d*h) up to cancellation.
  Polynomial dd = den_.derivative(var);
  Polynomial g = gcd(den_, dd);
  Polynomial h = *Polynomial::divide_exact(den_, g);
  Polynomial ddg = *Polynomial::divide_exact(dd, g);
  Polynomial n = num_.derivative(var) * h - num_ * ddg;
  return RationalFunction(std::move(n), den_ * h);
}

RationalFunction RationalFunction::shift(std::size_t var, const mpq_class& k) const {
  if (!depends_on(var) || sgn(k) == 0) return *this;
  // Shifts preserve coprimality and the deglex leading term.
  return from_canonical(num_.shift(var, k), den_.shift(var, k));
}

Polynomial substitute_fraction(const Polynomial& p, std::size_t var, const Polynomial& num, const Polynomial& den) {
  auto deg = p.degree_in(var);
  std::map<std::uint16_t, std::vector<Polynomial::Term>> groups;
  for (const auto& t : p.terms()) {
    auto r = t;
    r.exponents.e[var] = 0;
    groups[t.exponents.e[var]].push_back(std::move(r));
  }
  std::vector<Polynomial> npow{Polynomial(p.context(), 1)}, dpow{Polynomial(p.context(), 1)};
  for (unsigned i = 1; i <= deg; ++i) {
    npow.push_back(npow.back() * num);
    dpow.push_back(dpow.back() * den);
  }
  Polynomial result(p.context());
  for (auto& [d, ts] : groups) result += Polynomial::from_terms(p.context(), std::move(ts)) * npow[d] * dpow[deg - d];
  return result;
}

RationalFunction RationalFunction::scale_variable(std::size_t var, const RationalFunction& factor) const {
  if (!depends_on(var)) return *this;
  Polynomial x = Polynomial::variable(context(), var);
  return substitute(var, factor * RationalFunction(x));
}

RationalFunction RationalFunction::substitute(std::size_t var, const RationalFunction& value) const {
  if (!depends_on(var)) return *this;
  const Polynomial &vn = value.num(), &vd = value.den();
  if (vd.is_one()) return RationalFunction(num_.substitute(var, vn), den_.substitute(var, vn));
  Polynomial n = substitute_fraction(num_, var, vn, vd);
  Polynomial d = substitute_fraction(den_, var, vn, vd);
  int excess = int(num_.degree_in(var)) - int(den_.degree_in(var));
  if (excess > 0)
    d *= vd.pow(unsigned(excess));
  else if (excess < 0)
    n *= vd.pow(unsigned(-excess));
  return RationalFunction(std::move(n), std::move(d));
}

mpq_class RationalFunction::evaluate(std::span<const mpq_class> point) const {
  mpq_class d = den_.evaluate(point);
  if (sgn(d) == 0) throw MathError("point is a pole of " + to_string());
  return num_.evaluate(point) / d;
}

RationalFunction RationalFunction::evaluate_partial(std::uint32_t mask, std::span<const mpq_class> point) const {
  auto partial = [&](const Polynomial& p) {
    std::vector<Polynomial::Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
      Polynomial::Term r = t;
      for (std::size_t i = 0; i < context()->size(); ++i) {
        if (!(mask & (1u << i)) || !t.exponents.e[i]) continue;
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), point[i].get_num_mpz_t(), t.exponents.e[i]);
        mpz_pow_ui(den.get_mpz_t(), point[i].get_den_mpz_t(), t.exponents.e[i]);
        r.coeff *= mpq_class(num, den);
        r.exponents.e[i] = 0;
      }
      r.coeff.canonicalize();
      out.push_back(std::move(r));
    }
    return Polynomial::from_terms(p.context(), std::move(out));
  };
  Polynomial d = partial(den_);
  if (d.is_zero()) throw MathError("point is a pole of " + to_string());
  return RationalFunction(partial(num_), std::move(d));
}

RationalFunction RationalFunction::embed(const ContextPtr& target) const {
  Polynomial n = num_.embed(target), d = den_.embed(target);
  mpq_class lc = d.leading_coeff();
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    n *= inv;
    d *= inv;
  }
  return from_canonical(std::move(n), std::move(d));
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string();
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string();
  bool simple = den_.size() == 1 && std::popcount(den_.support_mask()) <= 1;
  if (!simple) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace holo
