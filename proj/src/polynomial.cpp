#include "holo/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace holo {

Context::Context(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVariables)
    throw MathError("too many variables (" + std::to_string(names_.size()) + "), limit is " +
                    std::to_string(kMaxVariables));
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw MathError("duplicate variable '" + names_[i] + "'");
}

std::optional<std::size_t> Context::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

ContextPtr make_context(std::vector<std::string> names) {
  return std::make_shared<const Context>(std::move(names));
}

bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && a->names() == b->names());
}

Exponents operator+(const Exponents& a, const Exponents& b) {
  Exponents r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    std::uint32_t s = std::uint32_t(a.e[i]) + b.e[i];
    if (s > 0xffff) throw MathError("exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

Exponents operator-(const Exponents& a, const Exponents& b) {
  Exponents r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
  return r;
}

Exponents exponent_lcm(const Exponents& a, const Exponents& b) {
  Exponents r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

Exponents exponent_gcd(const Exponents& a, const Exponents& b) {
  Exponents r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.e[i] = std::min(a.e[i], b.e[i]);
  return r;
}

int deglex_compare(const Exponents& a, const Exponents& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  return 0;
}

Polynomial::Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

Polynomial::Polynomial(ContextPtr ctx, const mpq_class& constant) : ctx_(std::move(ctx)) {
  if (sgn(constant) != 0) terms_.push_back({Exponents{}, constant});
}

Polynomial Polynomial::variable(ContextPtr ctx, std::size_t index) {
  if (index >= ctx->size()) throw MathError("variable index out of range");
  Exponents e;
  e.e[index] = 1;
  return monomial(std::move(ctx), e, 1);
}

Polynomial Polynomial::monomial(ContextPtr ctx, const Exponents& e, const mpq_class& c) {
  Polynomial p(std::move(ctx));
  if (sgn(c) != 0) p.terms_.push_back({e, c});
  return p;
}

Polynomial Polynomial::from_terms(ContextPtr ctx, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return deglex_compare(a.exponents, b.exponents) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exponents == t.exponents) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  return from_sorted_terms(std::move(ctx), std::move(out));
}

Polynomial Polynomial::from_sorted_terms(ContextPtr ctx, std::vector<Term> terms) {
  Polynomial p(std::move(ctx));
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].exponents.is_zero() && terms_[0].coeff == 1;
}

mpq_class Polynomial::constant_value() const {
  if (!terms_.empty() && terms_.back().exponents.is_zero()) return terms_.back().coeff;
  return 0;
}

std::uint32_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().exponents.degree(); }

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max<std::uint32_t>(d, t.exponents.e[var]);
  return d;
}

std::uint32_t Polynomial::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  std::uint32_t d = 0xffff;
  for (const auto& t : terms_) d = std::min<std::uint32_t>(d, t.exponents.e[var]);
  return d;
}

bool Polynomial::depends_on(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.exponents.e[var]) return true;
  return false;
}

std::uint32_t Polynomial::support_mask() const {
  std::uint32_t m = 0;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (t.exponents.e[i]) m |= 1u << i;
  return m;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merges two descending term lists with sign applied to b.
std::vector<Polynomial::Term> merge_terms(const std::vector<Polynomial::Term>& a,
                                          const std::vector<Polynomial::Term>& b, bool negate_b) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size())
      c = -1;
    else if (j == b.size())
      c = 1;
    else
      c = deglex_compare(a[i].exponents, b[j].exponents);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j]);
      if (negate_b) out.back().coeff = -out.back().coeff;
      ++j;
    } else {
      mpq_class s = negate_b ? mpq_class(a[i].coeff - b[j].coeff) : mpq_class(a[i].coeff + b[j].coeff);
      if (sgn(s) != 0) out.push_back({a[i].exponents, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

void require_same(const Polynomial& a, const Polynomial& b) {
  if (!same_context(a.context(), b.context())) throw MathError("polynomials over different variable lists");
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same(*this, o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same(*this, o);
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  if (a.terms_.empty() || b.terms_.empty()) return Polynomial(a.ctx_);
  if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].exponents, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].exponents, b.terms_[0].coeff);
  const Polynomial& small = a.terms_.size() <= b.terms_.size() ? a : b;
  const Polynomial& large = a.terms_.size() <= b.terms_.size() ? b : a;
  // Accumulate row by row; each row is already sorted, so merging keeps order.
  std::vector<Polynomial::Term> acc;
  for (const auto& t : small.terms_) {
    std::vector<Polynomial::Term> row;
    row.reserve(large.terms_.size());
    for (const auto& u : large.terms_) row.push_back({t.exponents + u.exponents, t.coeff * u.coeff});
    acc = acc.empty() ? std::move(row) : merge_terms(acc, row, false);
  }
  return Polynomial::from_sorted_terms(a.ctx_, std::move(acc));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const mpq_class& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exponents != b.terms_[i].exponents || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Polynomial Polynomial::mul_term(const Exponents& e, const mpq_class& c) const {
  Polynomial r(ctx_);
  if (sgn(c) == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.exponents + e, t.coeff * c});
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result(ctx_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || terms_.front().coeff == 1) return *this;
  mpq_class inv = 1 / terms_.front().coeff;
  Polynomial r = *this;
  r *= inv;
  return r;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  if (b.is_zero()) throw MathError("division by zero");
  if (a.is_zero()) return Polynomial(a.ctx_);
  if (b.terms_.size() == 1) {
    const auto& lt = b.terms_[0];
    std::vector<Term> out;
    out.reserve(a.terms_.size());
    for (const auto& t : a.terms_) {
      if (!lt.exponents.divides(t.exponents)) return std::nullopt;
      out.push_back({t.exponents - lt.exponents, t.coeff / lt.coeff});
    }
    return from_sorted_terms(a.ctx_, std::move(out));
  }
  if (a.total_degree() < b.total_degree()) return std::nullopt;
  std::map<Exponents, mpq_class, DeglexGreater> rem;
  for (const auto& t : a.terms_) rem.emplace(t.exponents, t.coeff);
  const auto& blt = b.terms_.front();
  std::vector<Term> quot;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!blt.exponents.divides(it->first)) return std::nullopt;
    Exponents qe = it->first - blt.exponents;
    mpq_class qc = it->second / blt.coeff;
    rem.erase(it);
    for (std::size_t k = 1; k < b.terms_.size(); ++k) {
      Exponents e = b.terms_[k].exponents + qe;
      auto [pos, inserted] = rem.try_emplace(e, 0);
      pos->second -= qc * b.terms_[k].coeff;
      if (sgn(pos->second) == 0) rem.erase(pos);
    }
    quot.push_back({qe, std::move(qc)});
  }
  return from_sorted_terms(a.ctx_, std::move(quot));
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (!t.exponents.e[var]) continue;
    Term n{t.exponents, t.coeff * t.exponents.e[var]};
    n.exponents.e[var] -= 1;
    out.push_back(std::move(n));
  }
  return from_terms(ctx_, std::move(out));
}

Polynomial Polynomial::shift(std::size_t var, const mpq_class& k) const {
  if (sgn(k) == 0 || !depends_on(var)) return *this;
  Polynomial x = variable(ctx_, var);
  x += Polynomial(ctx_, k);
  return substitute(var, x);
}

Polynomial Polynomial::scale_variable(std::size_t var, const Polynomial& factor) const {
  if (!depends_on(var)) return *this;
  std::vector<Polynomial> powers{Polynomial(ctx_, 1)};
  Polynomial result(ctx_);
  for (const auto& t : terms_) {
    auto d = t.exponents.e[var];
    while (powers.size() <= d) powers.push_back(powers.back() * factor);
    result += powers[d].mul_term(t.exponents, t.coeff);
  }
  return result;
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  if (!depends_on(var)) return *this;
  std::vector<Polynomial> powers{Polynomial(ctx_, 1)};
  // Group by the exponent of var so each power is multiplied once.
  std::map<std::uint16_t, std::vector<Term>> groups;
  for (const auto& t : terms_) {
    Term r = t;
    r.exponents.e[var] = 0;
    groups[t.exponents.e[var]].push_back(std::move(r));
  }
  Polynomial result(ctx_);
  for (auto& [d, ts] : groups) {
    while (powers.size() <= d) powers.push_back(powers.back() * value);
    result += powers[d] * from_terms(ctx_, std::move(ts));
  }
  return result;
}

mpq_class Polynomial::evaluate(std::span<const mpq_class> point) const {
  mpq_class sum = 0;
  for (const auto& t : terms_) {
    mpq_class v = t.coeff;
    for (std::size_t i = 0; i < ctx_->size(); ++i) {
      auto d = t.exponents.e[i];
      if (!d) continue;
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), point[i].get_num_mpz_t(), d);
      mpz_pow_ui(den.get_mpz_t(), point[i].get_den_mpz_t(), d);
      v *= mpq_class(num, den);
    }
    sum += v;
  }
  sum.canonicalize();
  return sum;
}

std::vector<std::pair<Exponents, Polynomial>> Polynomial::coefficients_in(std::uint32_t mask) const {
  std::map<Exponents, std::vector<Term>, DeglexGreater> groups;
  for (const auto& t : terms_) {
    Exponents outer, inner = t.exponents;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (mask & (1u << i)) {
        outer.e[i] = t.exponents.e[i];
        inner.e[i] = 0;
      }
    groups[outer].push_back({inner, t.coeff});
  }
  std::vector<std::pair<Exponents, Polynomial>> out;
  for (auto& [e, ts] : groups) out.emplace_back(e, from_sorted_terms(ctx_, std::move(ts)));
  return out;
}

Polynomial Polynomial::embed(const ContextPtr& target) const {
  if (same_context(ctx_, target)) {
    Polynomial r = *this;
    r.ctx_ = target;
    return r;
  }
  std::array<int, kMaxVariables> map{};
  for (std::size_t i = 0; i < ctx_->size(); ++i) {
    auto idx = target->index_of(ctx_->name(i));
    map[i] = idx ? static_cast<int>(*idx) : -1;
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e;
    for (std::size_t i = 0; i < ctx_->size(); ++i) {
      if (!t.exponents.e[i]) continue;
      if (map[i] < 0) throw MathError("variable '" + ctx_->name(i) + "' is not available in the target context");
      e.e[map[i]] = t.exponents.e[i];
    }
    out.push_back({e, t.coeff});
  }
  return from_terms(target, std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.coeff;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? "-" : "+");
    first = false;
    bool has_vars = !t.exponents.is_zero();
    bool wrote = false;
    if (!has_vars || c != 1) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < ctx_->size(); ++i) {
      auto d = t.exponents.e[i];
      if (!d) continue;
      if (wrote) os << '*';
      os << ctx_->name(i);
      if (d > 1) os << '^' << d;
      wrote = true;
    }
  }
  return os.str();
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.context());
  Polynomial g = gcd(a, b);
  auto q = Polynomial::divide_exact(a, g);
  return (*q * b).monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_constant()) return Polynomial(p.context(), p.is_zero() ? 0 : 1);
  Polynomial g = p;
  for (std::size_t v = 0; v < p.context()->size(); ++v)
    if (p.depends_on(v)) g = gcd(g, p.derivative(v));
  return Polynomial::divide_exact(p, g)->monic();
}

Polynomial content_in(const Polynomial& p, std::uint32_t mask) {
  if (p.is_zero()) return p;
  Polynomial g(p.context());
  for (auto& [e, c] : p.coefficients_in(mask)) {
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g.monic();
}

}  // namespace holo
