#include "holo/oracle.hpp"

#include <algorithm>

#include "holo/error.hpp"
#include "holo/kernels.hpp"

namespace holo {
namespace {

[[noreturn]] void not_evaluable(const std::string& why) { throw MathError("point not exactly evaluable: " + why); }

// Exact rational q-th root, if any.
std::optional<mpq_class> rational_root(const mpq_class& c, unsigned long q) {
  if (q == 1) return c;
  if (sgn(c) < 0 && q % 2 == 0) return std::nullopt;
  mpz_class num = abs(c.get_num()), den = c.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), q) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), q))
    return std::nullopt;
  mpq_class r(rn, rd);
  return sgn(c) < 0 ? mpq_class(-r) : r;
}

mpq_class power(const mpq_class& c, long k) {
  mpq_class r = 1, b = k < 0 ? mpq_class(1 / c) : c;
  for (long i = 0; i < std::labs(k); ++i) r *= b;
  return r;
}

// Truncated Taylor expansions in the offsets of the jet variables around the
// point, all terms of total degree above the order dropped.
class Evaluator {
 public:
  Evaluator(Point point, std::vector<std::string> jets, unsigned order)
      : point_(std::move(point)), jets_(std::move(jets)), ctx_(make_context(jets_)), order_(order) {}

  const ContextPtr& context() const { return ctx_; }

  Polynomial eval(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::number:
        return constant(e->value);
      case ExprKind::symbol: {
        auto it = point_.find(e->name);
        if (it == point_.end()) throw MathError("no value for " + e->name);
        Polynomial p = constant(it->second);
        for (std::size_t i = 0; i < jets_.size(); ++i)
          if (jets_[i] == e->name && order_ > 0) p += Polynomial::variable(ctx_, i);
        return p;
      }
      case ExprKind::add:
        return eval(e->args[0]) + eval(e->args[1]);
      case ExprKind::sub:
        return eval(e->args[0]) - eval(e->args[1]);
      case ExprKind::neg:
        return -eval(e->args[0]);
      case ExprKind::mul:
        return mul(eval(e->args[0]), eval(e->args[1]));
      case ExprKind::div:
        return mul(eval(e->args[0]), inverse(eval(e->args[1])));
      case ExprKind::pow:
        return pow(eval(e->args[0]), eval(e->args[1]));
      case ExprKind::call:
        return call(e);
    }
    throw MathError("unknown expression node");
  }

 private:
  Polynomial constant(const mpq_class& c) const { return Polynomial(ctx_, c); }

  Polynomial truncate(const Polynomial& p) const {
    std::vector<Polynomial::Term> keep;
    for (const auto& t : p.terms())
      if (t.exponents.degree() <= order_) keep.push_back(t);
    return Polynomial::from_sorted_terms(ctx_, std::move(keep));
  }

  Polynomial mul(const Polynomial& a, const Polynomial& b) const { return truncate(a * b); }

  static mpq_class constant_term(const Polynomial& p) {
    for (const auto& t : p.terms())
      if (t.exponents.is_zero()) return t.coeff;
    return 0;
  }

  // sum_k coeffs[k] * t^k for t without constant term
  Polynomial series(const Polynomial& t, const std::function<mpq_class(unsigned)>& coeffs) const {
    Polynomial out(ctx_), tk(ctx_, 1);
    for (unsigned k = 0; k <= order_; ++k) {
      mpq_class c = coeffs(k);
      if (sgn(c) != 0) out += tk * c;
      tk = mul(tk, t);
      if (tk.is_zero()) break;
    }
    return out;
  }

  Polynomial inverse(const Polynomial& a) const {
    mpq_class c = constant_term(a);
    if (sgn(c) == 0) not_evaluable("division by zero");
    Polynomial t = a * mpq_class(1 / c) - constant(1);
    return series(t, [](unsigned k) { return mpq_class(k % 2 ? -1 : 1); }) * mpq_class(1 / c);
  }

  mpq_class exact(const Polynomial& p, const char* what) const {
    if (!p.is_constant()) not_evaluable(std::string(what) + " depends on a differentiation variable");
    return p.is_zero() ? mpq_class(0) : p.constant_value();
  }

  long integer(const Polynomial& p, const char* what) const {
    mpq_class v = exact(p, what);
    if (v.get_den() != 1 || !v.get_num().fits_slong_p()) not_evaluable(std::string(what) + " is not an integer");
    return v.get_num().get_si();
  }

  Polynomial int_power(const Polynomial& a, long k) const {
    Polynomial b = k < 0 ? inverse(a) : a;
    Polynomial r = constant(1);
    for (long i = 0; i < std::labs(k); ++i) r = mul(r, b);
    return r;
  }

  Polynomial pow(const Polynomial& a, const Polynomial& b) const {
    if (!b.is_constant()) {
      if (a == constant(1)) return a;
      not_evaluable("exponent depends on a differentiation variable");
    }
    mpq_class beta = b.is_zero() ? mpq_class(0) : b.constant_value();
    if (beta.get_den() == 1) return int_power(a, beta.get_num().get_si());
    mpq_class c = constant_term(a);
    if (sgn(c) == 0) not_evaluable("fractional power of zero");
    auto root = rational_root(c, beta.get_den().get_ui());
    if (!root) not_evaluable("irrational power");
    mpq_class scale = power(*root, beta.get_num().get_si());
    Polynomial t = a * mpq_class(1 / c) - constant(1);
    // (1 + t)^beta
    mpq_class coef = 1;
    std::vector<mpq_class> cs{1};
    for (unsigned k = 1; k <= order_; ++k) {
      coef = coef * (beta - (k - 1)) / k;
      cs.push_back(coef);
    }
    return series(t, [&](unsigned k) { return cs[k]; }) * scale;
  }

  Polynomial exp(const Polynomial& a) const {
    if (sgn(constant_term(a)) != 0) not_evaluable("exp of a nonzero value");
    mpq_class f = 1;
    std::vector<mpq_class> cs{1};
    for (unsigned k = 1; k <= order_; ++k) cs.push_back(f /= k);
    return series(a, [&](unsigned k) { return cs[k]; });
  }

  Polynomial falling(const Polynomial& a, long k) const {
    Polynomial r = constant(1);
    for (long j = 0; j < k; ++j) r = mul(r, a - constant(j));
    return r;
  }

  Polynomial rising(const Polynomial& a, long k) const {
    Polynomial r = constant(1);
    if (k >= 0) {
      for (long j = 0; j < k; ++j) r = mul(r, a + constant(j));
      return r;
    }
    for (long j = 1; j <= -k; ++j) r = mul(r, a - constant(j));
    return inverse(r);
  }

  Polynomial call(const ExprPtr& e) {
    const auto& n = e->name;
    auto arg = [&](std::size_t i) { return eval(e->args[i]); };
    if (n == "factorial") {
      long k = integer(arg(0), "argument of factorial");
      if (k < 0) not_evaluable("factorial of a negative integer");
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
      return constant(mpq_class(f));
    }
    if (n == "binomial") {
      Polynomial a = arg(0), b = arg(1);
      if (!b.is_constant() || exact(b, "").get_den() != 1) {
        // binomial(a, b) = binomial(a, a - b) for integer a - b
        b = a - b;
      }
      long k = integer(b, "lower argument of binomial");
      if (k < 0) return constant(0);
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
      return falling(a, k) * mpq_class(1, f);
    }
    if (n == "pochhammer") return rising(arg(0), integer(arg(1), "length of pochhammer"));
    if (n == "qpochhammer") {
      Polynomial a = arg(0), b = arg(1);
      long k = integer(arg(2), "length of qpochhammer");
      Polynomial r = constant(1);
      if (k >= 0) {
        for (long j = 0; j < k; ++j) r = mul(r, constant(1) - mul(a, int_power(b, j)));
        return r;
      }
      for (long j = 1; j <= -k; ++j) r = mul(r, constant(1) - mul(a, int_power(b, -j)));
      return inverse(r);
    }
    if (n == "power") return pow(arg(0), arg(1));
    if (n == "sqrt") return pow(arg(0), constant(mpq_class(1, 2)));
    if (n == "exp") return exp(arg(0));
    if (n == "chebyshevT") {
      long k = std::labs(integer(arg(0), "degree of chebyshevT"));
      Polynomial z = arg(1), prev = constant(1), cur = z;
      if (k == 0) return prev;
      for (long j = 1; j < k; ++j) {
        Polynomial next = mul(z, cur) * mpq_class(2) - prev;
        prev = std::move(cur);
        cur = std::move(next);
      }
      return cur;
    }
    if (n == "legendreP") {
      long k = integer(arg(0), "degree of legendreP");
      if (k < 0) k = -k - 1;
      Polynomial z = arg(1), prev = constant(1), cur = z;
      if (k == 0) return prev;
      for (long j = 1; j < k; ++j) {
        Polynomial next = (mul(z, cur) * mpq_class(2 * j + 1) - prev * mpq_class(j)) * mpq_class(1, j + 1);
        prev = std::move(cur);
        cur = std::move(next);
      }
      return cur;
    }
    if (n == "laguerreL") {
      long k = integer(arg(0), "degree of laguerreL");
      if (k < 0) not_evaluable("laguerreL of negative degree");
      Polynomial a = arg(1), z = arg(2), prev = constant(1), cur = constant(1) + a - z;
      if (k == 0) return prev;
      for (long j = 1; j < k; ++j) {
        Polynomial next = (mul(constant(2 * j + 1) + a - z, cur) - mul(constant(j) + a, prev)) * mpq_class(1, j + 1);
        prev = std::move(cur);
        cur = std::move(next);
      }
      return cur;
    }
    if (n == "sum") {
      const auto& var = e->args[1];
      if (var->kind != ExprKind::symbol) throw MathError("summation variable must be a symbol");
      long lo = integer(arg(2), "lower summation bound"), hi = integer(arg(3), "upper summation bound");
      auto saved = point_.find(var->name) == point_.end() ? std::nullopt : std::optional(point_[var->name]);
      Polynomial s(ctx_);
      for (long k = lo; k <= hi; ++k) {
        point_[var->name] = k;
        s += eval(e->args[0]);
      }
      if (saved) point_[var->name] = *saved;
      else point_.erase(var->name);
      return s;
    }
    if (n == "integrate") not_evaluable("integrals are not evaluated");
    not_evaluable("no evaluation rule for " + n);
  }

  Point point_;
  std::vector<std::string> jets_;
  ContextPtr ctx_;
  unsigned order_;
};

std::vector<mpq_class> coefficient_point(const OreAlgebra& alg, const Point& point) {
  const auto& ctx = alg.field();
  std::vector<mpq_class> values(ctx->size());
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    const auto& name = ctx->name(i);
    if (auto it = point.find(name); it != point.end()) {
      values[i] = it->second;
      continue;
    }
    bool found = false;
    for (const auto& g : alg.generators()) {
      if (g.kind != GeneratorKind::qshift || g.variable != name) continue;
      auto q = point.find(g.q), k = point.find(g.exponent);
      if (q == point.end() || k == point.end() || k->second.get_den() != 1)
        throw MathError("no value for " + name);
      values[i] = power(q->second, k->second.get_num().get_si());
      found = true;
    }
    if (!found) throw MathError("no value for " + name);
  }
  return values;
}

}  // namespace

mpq_class eval_expression(const ExprPtr& e, const Point& point) {
  Evaluator ev(point, {}, 0);
  Polynomial p = ev.eval(e);
  return p.is_zero() ? mpq_class(0) : p.constant_value();
}

mpq_class eval_derivative(const ExprPtr& e, const Point& point, const std::map<std::string, unsigned>& orders) {
  std::vector<std::string> jets;
  unsigned total = 0;
  for (const auto& [v, k] : orders) {
    if (!k) continue;
    jets.push_back(v);
    total += k;
  }
  Evaluator ev(point, jets, total);
  Polynomial p = ev.eval(e);
  Exponents want;
  mpq_class scale = 1;
  for (std::size_t i = 0; i < jets.size(); ++i) {
    unsigned k = orders.at(jets[i]);
    want.e[i] = static_cast<std::uint16_t>(k);
    for (unsigned j = 2; j <= k; ++j) scale *= j;
  }
  for (const auto& t : p.terms())
    if (t.exponents == want) return t.coeff * scale;
  return 0;
}

mpq_class apply_at(const OrePolynomial& op, const ExprPtr& e, const Point& point) {
  const auto& alg = *op.algebra();
  if (!alg.elimination().empty()) throw MathError("operators in elimination mode cannot be applied");
  if (op.is_zero()) return 0;
  auto cpoint = coefficient_point(alg, point);
  // Terms grouped by their shifted point.
  std::map<Point, std::vector<std::pair<const OrePolynomial::Term*, std::map<std::string, unsigned>>>> groups;
  for (const auto& t : op.terms()) {
    Point p = point;
    std::map<std::string, unsigned> orders;
    for (std::size_t g = 0; g < alg.generators().size(); ++g) {
      unsigned a = t.monomial.exps.e[alg.generator_slot(g)];
      if (!a) continue;
      const auto& gen = alg.generators()[g];
      switch (gen.kind) {
        case GeneratorKind::derivative:
          orders[gen.variable] = a;
          break;
        case GeneratorKind::shift:
          if (!p.count(gen.variable)) throw MathError("no value for " + gen.variable);
          p[gen.variable] += a;
          break;
        case GeneratorKind::qshift:
          if (!p.count(gen.exponent)) throw MathError("no value for " + gen.exponent);
          p[gen.exponent] += a;
          if (p.count(gen.variable)) {
            auto q = point.find(gen.q);
            if (q == point.end()) throw MathError("no value for " + gen.q);
            p[gen.variable] *= power(q->second, a);
          }
          break;
      }
    }
    groups[p].push_back({&t, orders});
  }
  mpq_class total = 0;
  for (const auto& [p, terms] : groups) {
    std::vector<std::string> jets;
    unsigned order = 0;
    for (const auto& [t, orders] : terms) {
      unsigned s = 0;
      for (const auto& [v, k] : orders) {
        s += k;
        if (std::find(jets.begin(), jets.end(), v) == jets.end()) jets.push_back(v);
      }
      order = std::max(order, s);
    }
    Evaluator ev(p, jets, order);
    Polynomial f = ev.eval(e);
    for (const auto& [t, orders] : terms) {
      Exponents want;
      mpq_class scale = 1;
      for (std::size_t i = 0; i < jets.size(); ++i) {
        auto it = orders.find(jets[i]);
        unsigned k = it == orders.end() ? 0 : it->second;
        want.e[i] = static_cast<std::uint16_t>(k);
        for (unsigned j = 2; j <= k; ++j) scale *= j;
      }
      mpq_class d = 0;
      for (const auto& term : f.terms())
        if (term.exponents == want) d = term.coeff * scale;
      // Poles of coefficients make the point singular even where d vanishes.
      mpq_class c;
      try {
        c = t->coeff.evaluate(cpoint);
      } catch (const MathError&) {
        not_evaluable("pole of a coefficient");
      }
      total += c * d;
    }
  }
  return total;
}

SampleGrid SampleGrid::product(const std::map<std::string, std::vector<mpq_class>>& axes) {
  SampleGrid g;
  g.points.push_back({});
  for (const auto& [name, values] : axes) {
    std::vector<Point> next;
    for (const auto& p : g.points)
      for (const auto& v : values) {
        Point q = p;
        q[name] = v;
        next.push_back(std::move(q));
      }
    g.points = std::move(next);
  }
  return g;
}

namespace {

// Evaluates value(op, point) on the grid; nullopt marks a skipped point.
OracleReport run_grid(std::size_t nops, const SampleGrid& grid,
                      const std::function<mpq_class(std::size_t, const Point&)>& value, Execution exec) {
  std::size_t n = grid.points.size();
  std::vector<std::optional<std::vector<mpq_class>>> results(n);
  kernels::for_each_index(
      n,
      [&](std::size_t i) {
        const Point& p = grid.points[i];
        if (grid.exclude && grid.exclude(p)) return;
        std::vector<mpq_class> r;
        try {
          for (std::size_t k = 0; k < nops; ++k) r.push_back(value(k, p));
        } catch (const MathError&) {
          return;
        }
        results[i] = std::move(r);
      },
      exec);
  OracleReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    if (!results[i]) {
      rep.skipped.push_back(grid.points[i]);
      continue;
    }
    ++rep.checked;
    for (std::size_t k = 0; k < nops; ++k)
      if (sgn((*results[i])[k]) != 0) rep.failures.push_back({k, grid.points[i], (*results[i])[k]});
  }
  if (rep.checked == 0) throw MathError("grid empty after exclusions");
  return rep;
}

}  // namespace

OracleReport check_annihilator(const std::vector<OrePolynomial>& ops, const ExprPtr& e, const SampleGrid& grid,
                               Execution exec) {
  OracleReport rep = run_grid(
      ops.size(), grid, [&](std::size_t k, const Point& p) { return apply_at(ops[k], e, p); }, exec);
  for (std::size_t k = 0; k < ops.size(); ++k)
    if (ops[k].is_zero()) rep.degenerate.push_back(k);
  return rep;
}

ExprPtr nested_sum(const ExprPtr& summand, const std::vector<SumBound>& bounds) {
  ExprPtr e = summand;
  for (auto it = bounds.rbegin(); it != bounds.rend(); ++it)
    e = make_call("sum", {e, make_symbol(it->variable), it->lower, it->upper});
  return e;
}

OracleReport check_sum_identity(const OrePolynomial& telescoper, const ExprPtr& summand,
                                const std::vector<SumBound>& bounds, const SampleGrid& grid,
                                const std::function<mpq_class(const Point&)>& rhs, Execution exec) {
  ExprPtr f = nested_sum(summand, bounds);
  OracleReport rep = run_grid(
      1, grid,
      [&](std::size_t, const Point& p) {
        mpq_class v = apply_at(telescoper, f, p);
        if (rhs) v -= rhs(p);
        return v;
      },
      exec);
  if (telescoper.is_zero()) rep.degenerate.push_back(0);
  return rep;
}

mpq_class eval_boundary(const BoundaryExpression& b, std::size_t k, const Point& point) {
  if (b.natural) return 0;
  mpq_class total = 0;
  for (const auto& term : b.terms.at(k)) {
    // sum over the remaining variables of [C f] at v = at
    auto bracket = [&](const ExprPtr& at) {
      std::vector<std::pair<std::string, Bound>> rest(term.remaining.begin(), term.remaining.end());
      std::function<mpq_class(Point, std::size_t)> go = [&](Point p, std::size_t i) -> mpq_class {
        if (i == rest.size()) return apply_at(term.certificate, b.summand, p);
        mpq_class lo = eval_expression(rest[i].second.lower, p), hi = eval_expression(rest[i].second.upper, p);
        if (lo.get_den() != 1 || hi.get_den() != 1) throw MathError("bound not integer at the point");
        mpq_class s = 0;
        for (mpz_class j = lo.get_num(); j <= hi.get_num(); ++j) {
          p[rest[i].first] = mpq_class(j);
          s += go(p, i + 1);
        }
        return s;
      };
      Point p = point;
      p[term.variable] = eval_expression(at, point);
      return go(p, 0);
    };
    total += bracket(term.at_lower) - bracket(term.at_upper);
  }
  return total;
}

}  // namespace holo
