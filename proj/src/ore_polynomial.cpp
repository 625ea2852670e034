#include "holo/ore_polynomial.hpp"

#include <map>
#include <sstream>

#include "holo/arith_parser.hpp"

namespace holo {
namespace {

using TermMap = std::map<Monomial, RationalFunction, CanonicalOrder>;

void accumulate(TermMap& acc, const Monomial& m, RationalFunction c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

std::vector<OrePolynomial::Term> to_terms(TermMap&& acc) {
  std::vector<OrePolynomial::Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) out.push_back({m, std::move(c)});
  return out;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class falling(unsigned n, unsigned k) {
  mpz_class r = 1;
  for (unsigned i = 0; i < k; ++i) r *= n - i;
  return r;
}

struct Piece {
  Exponents exps;
  RationalFunction coeff;
};

// d^alpha * b = sum of coeff * d^gamma (generator slots only).
std::vector<Piece> commute_coefficient(const OreAlgebra& alg, const Exponents& alpha, const RationalFunction& b) {
  std::vector<Piece> cur{{Exponents{}, b}};
  for (std::size_t g = 0; g < alg.generators().size(); ++g) {
    std::size_t slot = alg.generator_slot(g);
    unsigned k = alpha.e[slot];
    if (!k) continue;
    auto idx = alg.field_index(g);
    const auto& gen = alg.generators()[g];
    std::vector<Piece> next;
    for (auto& p : cur) {
      if (!idx || !p.coeff.depends_on(*idx)) {
        p.exps.e[slot] = static_cast<std::uint16_t>(p.exps.e[slot] + k);
        next.push_back(std::move(p));
        continue;
      }
      switch (gen.kind) {
        case GeneratorKind::shift: {
          Piece q{p.exps, p.coeff.shift(*idx, k)};
          q.exps.e[slot] = static_cast<std::uint16_t>(q.exps.e[slot] + k);
          next.push_back(std::move(q));
          break;
        }
        case GeneratorKind::qshift: {
          RationalFunction factor = RationalFunction::variable(alg.field(), *alg.q_index(g)).pow(int(k));
          Piece q{p.exps, p.coeff.scale_variable(*idx, factor)};
          q.exps.e[slot] = static_cast<std::uint16_t>(q.exps.e[slot] + k);
          next.push_back(std::move(q));
          break;
        }
        case GeneratorKind::derivative: {
          RationalFunction d = p.coeff;
          for (unsigned j = 0; j <= k; ++j) {
            if (j > 0) d = d.derivative(*idx);
            if (d.is_zero()) break;
            Piece q{p.exps, d * RationalFunction(alg.field(), mpq_class(binomial(k, j)))};
            q.exps.e[slot] = static_cast<std::uint16_t>(q.exps.e[slot] + k - j);
            next.push_back(std::move(q));
          }
          break;
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

// d^gamma * v^d for elimination slots: returns pieces whose exps hold both the
// new elimination part and the new generator part.
std::vector<Piece> commute_elimination(const OreAlgebra& alg, const Exponents& gamma, const Exponents& right) {
  std::vector<Piece> cur{{gamma, RationalFunction(alg.field(), 1)}};
  for (std::size_t s = 0; s < alg.elimination().size(); ++s) {
    unsigned d = right.e[s];
    if (!d) continue;
    std::size_t g = alg.generator_of_slot(s);
    std::size_t gslot = alg.generator_slot(g);
    const auto& gen = alg.generators()[g];
    std::vector<Piece> next;
    for (auto& p : cur) {
      unsigned k = p.exps.e[gslot];
      if (k == 0) {
        p.exps.e[s] = static_cast<std::uint16_t>(p.exps.e[s] + d);
        next.push_back(std::move(p));
        continue;
      }
      switch (gen.kind) {
        case GeneratorKind::shift: {
          // S^k v^d = (v + k)^d S^k
          for (unsigned i = 0; i <= d; ++i) {
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), k, d - i);
            Piece q{p.exps, p.coeff * RationalFunction(alg.field(), mpq_class(binomial(d, i) * pw))};
            q.exps.e[s] = static_cast<std::uint16_t>(q.exps.e[s] + i);
            next.push_back(std::move(q));
          }
          break;
        }
        case GeneratorKind::derivative: {
          // D^k v^d = sum_j C(k,j) d!/(d-j)! v^(d-j) D^(k-j)
          for (unsigned j = 0; j <= std::min(k, d); ++j) {
            Piece q{p.exps, p.coeff * RationalFunction(alg.field(), mpq_class(binomial(k, j) * falling(d, j)))};
            q.exps.e[s] = static_cast<std::uint16_t>(q.exps.e[s] + d - j);
            q.exps.e[gslot] = static_cast<std::uint16_t>(k - j);
            next.push_back(std::move(q));
          }
          break;
        }
        case GeneratorKind::qshift: {
          RationalFunction q = RationalFunction::variable(alg.field(), *alg.q_index(g)).pow(int(k * d));
          Piece r{p.exps, p.coeff * q};
          r.exps.e[s] = static_cast<std::uint16_t>(r.exps.e[s] + d);
          next.push_back(std::move(r));
          break;
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

Exponents generator_part(const OreAlgebra& alg, const Exponents& e) {
  Exponents g = e;
  for (std::size_t s = 0; s < alg.elimination().size(); ++s) g.e[s] = 0;
  return g;
}

Exponents elimination_part(const OreAlgebra& alg, const Exponents& e) {
  Exponents g;
  for (std::size_t s = 0; s < alg.elimination().size(); ++s) g.e[s] = e.e[s];
  return g;
}

void require_same(const OrePolynomial& a, const OrePolynomial& b) {
  if (!same_algebra(a.algebra(), b.algebra()))
    throw MathError("operators over different algebras: " + a.algebra()->declaration() + " vs " +
                    b.algebra()->declaration());
}

// Accumulates (a * left) * (b * right) into acc.
void multiply_terms(const OreAlgebra& alg, const OrePolynomial::Term& l, const OrePolynomial::Term& r,
                    TermMap& acc) {
  Exponents alpha = generator_part(alg, l.monomial.exps);
  Exponents c = elimination_part(alg, l.monomial.exps);
  Exponents beta = generator_part(alg, r.monomial.exps);
  Exponents d = elimination_part(alg, r.monomial.exps);
  std::uint32_t position = l.monomial.position + r.monomial.position;
  for (auto& piece : commute_coefficient(alg, alpha, r.coeff)) {
    RationalFunction base = l.coeff * piece.coeff;
    if (d.is_zero()) {
      accumulate(acc, Monomial{c + piece.exps + beta, position}, std::move(base));
      continue;
    }
    for (auto& e : commute_elimination(alg, piece.exps, d))
      accumulate(acc, Monomial{c + e.exps + beta, position}, base * e.coeff);
  }
}

}  // namespace

OrePolynomial::OrePolynomial(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

OrePolynomial::OrePolynomial(AlgebraPtr algebra, const RationalFunction& c) : algebra_(std::move(algebra)) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

OrePolynomial OrePolynomial::generator(AlgebraPtr algebra, std::size_t g, unsigned power) {
  return slot_power(algebra, algebra->generator_slot(g), power);
}

OrePolynomial OrePolynomial::slot_power(AlgebraPtr algebra, std::size_t slot, unsigned power) {
  Monomial m;
  m.exps.e[slot] = static_cast<std::uint16_t>(power);
  RationalFunction one(algebra->field(), 1);
  return monomial(std::move(algebra), m, one);
}

OrePolynomial OrePolynomial::monomial(AlgebraPtr algebra, const Monomial& m, const RationalFunction& c) {
  OrePolynomial p(std::move(algebra));
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

OrePolynomial OrePolynomial::from_terms(AlgebraPtr algebra, std::vector<Term> terms) {
  TermMap acc;
  for (auto& t : terms) accumulate(acc, t.monomial, std::move(t.coeff));
  OrePolynomial p(std::move(algebra));
  p.terms_ = to_terms(std::move(acc));
  return p;
}

bool OrePolynomial::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial == Monomial{});
}

std::uint32_t OrePolynomial::max_position() const {
  std::uint32_t m = 0;
  for (const auto& t : terms_) m = std::max(m, t.monomial.position);
  return m;
}

std::uint32_t OrePolynomial::slot_mask() const {
  std::uint32_t m = 0;
  for (const auto& t : terms_)
    for (std::size_t s = 0; s < kMaxVariables; ++s)
      if (t.monomial.exps.e[s]) m |= 1u << s;
  return m;
}

std::uint32_t OrePolynomial::coefficient_mask() const {
  std::uint32_t m = 0;
  for (const auto& t : terms_) m |= t.coeff.support_mask();
  return m;
}

const OrePolynomial::Term& OrePolynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw MathError("leading term of the zero operator");
  const Term* best = &terms_[0];
  for (const auto& t : terms_)
    if (order.greater(t.monomial, best->monomial)) best = &t;
  return *best;
}

RationalFunction OrePolynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.monomial == m) return t.coeff;
  return RationalFunction(algebra_->field());
}

OrePolynomial OrePolynomial::operator-() const {
  OrePolynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

OrePolynomial& OrePolynomial::operator+=(const OrePolynomial& o) {
  require_same(*this, o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  CanonicalOrder less;
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && less(terms_[i].monomial, o.terms_[j].monomial))) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || less(o.terms_[j].monomial, terms_[i].monomial)) {
      out.push_back(o.terms_[j++]);
    } else {
      RationalFunction s = terms_[i].coeff + o.terms_[j].coeff;
      if (!s.is_zero()) out.push_back({terms_[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

OrePolynomial& OrePolynomial::operator-=(const OrePolynomial& o) { return *this += -o; }

OrePolynomial operator*(const OrePolynomial& a, const OrePolynomial& b) {
  require_same(a, b);
  if (a.is_zero() || b.is_zero()) return OrePolynomial(a.algebra_);
  if (a.max_position() && b.max_position()) throw MathError("product of two module elements");
  if (a.is_scalar()) return b.scale(a.terms_[0].coeff);
  TermMap acc;
  for (const auto& l : a.terms_)
    for (const auto& r : b.terms_) multiply_terms(*a.algebra_, l, r, acc);
  OrePolynomial p(a.algebra_);
  p.terms_ = to_terms(std::move(acc));
  return p;
}

OrePolynomial operator/(const OrePolynomial& a, const OrePolynomial& b) {
  require_same(a, b);
  if (b.is_zero()) throw MathError("division by zero");
  if (!b.is_scalar()) throw MathError("can only divide by a coefficient, not by " + b.to_string());
  return a * OrePolynomial(a.algebra_, b.terms_[0].coeff.inverse());
}

bool operator==(const OrePolynomial& a, const OrePolynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  return true;
}

OrePolynomial OrePolynomial::pow(int k) const {
  if (k < 0) {
    if (!is_scalar() || is_zero()) throw MathError("negative power of a non-scalar operator");
    return OrePolynomial(algebra_, terms_[0].coeff.pow(k));
  }
  OrePolynomial r(algebra_, RationalFunction(algebra_->field(), 1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

OrePolynomial OrePolynomial::scale(const RationalFunction& c) const {
  if (c.is_zero()) return OrePolynomial(algebra_);
  OrePolynomial r = *this;
  if (c.is_one()) return r;
  for (auto& t : r.terms_) t.coeff = c * t.coeff;
  return r;
}

OrePolynomial OrePolynomial::mul_term_left(const RationalFunction& c, const Monomial& m) const {
  if (c.is_zero() || is_zero()) return OrePolynomial(algebra_);
  if (m.exps.is_zero()) {
    OrePolynomial r = scale(c);
    if (m.position)
      for (auto& t : r.terms_) t.monomial.position += m.position;
    return r;
  }
  Term left{m, c};
  TermMap acc;
  for (const auto& r : terms_) multiply_terms(*algebra_, left, r, acc);
  OrePolynomial p(algebra_);
  p.terms_ = to_terms(std::move(acc));
  return p;
}

OrePolynomial OrePolynomial::monic(const MonomialOrder& order) const {
  if (is_zero()) return *this;
  const auto& lc = leading_term(order).coeff;
  if (lc.is_one()) return *this;
  return scale(lc.inverse());
}

OrePolynomial OrePolynomial::at_position(std::uint32_t position) const {
  OrePolynomial r = *this;
  for (auto& t : r.terms_) t.monomial.position = position;
  return r;
}

OrePolynomial OrePolynomial::component(std::uint32_t position) const {
  OrePolynomial r(algebra_);
  for (const auto& t : terms_)
    if (t.monomial.position == position) r.terms_.push_back({Monomial{t.monomial.exps, 0}, t.coeff});
  return r;
}

RationalFunction OrePolynomial::apply(const RationalFunction& f) const {
  const auto& alg = *algebra_;
  const auto& full = alg.full();
  if (!same_context(f.context(), full)) throw MathError("function is not over the algebra's variables");
  RationalFunction result(full);
  for (const auto& t : terms_) {
    if (t.monomial.position) throw MathError("cannot apply a module element");
    RationalFunction g = f;
    for (std::size_t gi = 0; gi < alg.generators().size() && !g.is_zero(); ++gi) {
      unsigned k = t.monomial.exps.e[alg.generator_slot(gi)];
      if (!k) continue;
      const auto& gen = alg.generators()[gi];
      std::size_t idx = *full->index_of(gen.variable);
      switch (gen.kind) {
        case GeneratorKind::shift:
          g = g.shift(idx, k);
          break;
        case GeneratorKind::derivative:
          for (unsigned j = 0; j < k; ++j) g = g.derivative(idx);
          break;
        case GeneratorKind::qshift:
          g = g.scale_variable(idx, RationalFunction::variable(full, *full->index_of(gen.q)).pow(int(k)));
          break;
      }
    }
    RationalFunction c = t.coeff.embed(full);
    for (std::size_t s = 0; s < alg.elimination().size(); ++s)
      if (t.monomial.exps.e[s])
        c *= RationalFunction::variable(full, *full->index_of(alg.elimination()[s])).pow(t.monomial.exps.e[s]);
    result += c * g;
  }
  return result;
}

OrePolynomial OrePolynomial::convert(const AlgebraPtr& target) const {
  if (same_algebra(algebra_, target)) {
    OrePolynomial r = *this;
    r.algebra_ = target;
    return r;
  }
  const auto& src = *algebra_;
  const auto& dst = *target;
  std::vector<std::size_t> gen_map(src.generators().size());
  for (std::size_t g = 0; g < src.generators().size(); ++g) {
    auto d = dst.find_generator(src.generators()[g].variable);
    gen_map[g] = d && dst.generators()[*d] == src.generators()[g] ? *d : std::size_t(-1);
  }
  const auto& dfull = dst.full();
  std::uint32_t elim_mask = 0;
  for (std::size_t s = 0; s < dst.elimination().size(); ++s)
    elim_mask |= 1u << *dfull->index_of(dst.elimination()[s]);
  TermMap acc;
  for (const auto& t : terms_) {
    Exponents gens;
    for (std::size_t g = 0; g < src.generators().size(); ++g) {
      unsigned k = t.monomial.exps.e[src.generator_slot(g)];
      if (!k) continue;
      if (gen_map[g] == std::size_t(-1))
        throw MathError("generator " + src.generators()[g].name() + " is not part of " + dst.declaration());
      gens.e[dst.generator_slot(gen_map[g])] = static_cast<std::uint16_t>(k);
    }
    RationalFunction c = t.coeff.embed(dfull);
    for (std::size_t s = 0; s < src.elimination().size(); ++s) {
      unsigned k = t.monomial.exps.e[s];
      if (!k) continue;
      auto idx = dfull->index_of(src.elimination()[s]);
      if (!idx) throw MathError("variable " + src.elimination()[s] + " is unknown to the target algebra");
      c *= RationalFunction::variable(dfull, *idx).pow(int(k));
    }
    if (elim_mask == 0 || !(c.support_mask() & elim_mask)) {
      accumulate(acc, Monomial{gens, t.monomial.position}, c.embed(dst.field()));
      continue;
    }
    if (c.den().support_mask() & elim_mask)
      throw MathError("coefficient denominator depends on an eliminated variable; clear denominators first");
    for (auto& [e, part] : c.num().coefficients_in(elim_mask)) {
      Exponents m = gens;
      for (std::size_t s = 0; s < dst.elimination().size(); ++s)
        m.e[s] = e.e[*dfull->index_of(dst.elimination()[s])];
      RationalFunction pc(part, c.den());
      accumulate(acc, Monomial{m, t.monomial.position}, pc.embed(dst.field()));
    }
  }
  OrePolynomial p(target);
  p.terms_ = to_terms(std::move(acc));
  return p;
}

namespace {

// A coefficient prints without parentheses unless it is a sum.
bool needs_parentheses(const RationalFunction& c) { return c.den().is_one() && c.num().size() > 1; }

std::string monomial_text(const OreAlgebra& alg, const Monomial& m) {
  std::string s;
  for (std::size_t slot = 0; slot < alg.slots(); ++slot) {
    unsigned k = m.exps.e[slot];
    if (!k) continue;
    if (!s.empty()) s += "*";
    s += alg.slot_name(slot);
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

}  // namespace

std::string OrePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mono = monomial_text(*algebra_, t.monomial);
    if (t.monomial.position) mono = "e" + std::to_string(t.monomial.position) + (mono.empty() ? "" : "*" + mono);
    RationalFunction c = t.coeff;
    bool neg = false;
    if (c.num().size() == 1 && sgn(c.num().leading_coeff()) < 0) {
      neg = true;
      c = -c;
    }
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string cs = c.to_string();
    if (needs_parentheses(c)) cs = "(" + cs + ")";
    if (mono.empty())
      os << cs;
    else if (c.is_one())
      os << mono;
    else
      os << cs << "*" << mono;
  }
  return os.str();
}

OrePolynomial parse_operator(std::string_view text, const AlgebraPtr& algebra) {
  const auto& alg = *algebra;
  ArithParser<OrePolynomial>::Hooks hooks;
  hooks.number = [&](const mpq_class& q) { return OrePolynomial(algebra, RationalFunction(alg.field(), q)); };
  hooks.identifier = [&](const Token& t) {
    for (std::size_t s = 0; s < alg.elimination().size(); ++s)
      if (alg.elimination()[s] == t.text) return OrePolynomial::slot_power(algebra, s);
    auto idx = alg.field()->index_of(t.text);
    if (!idx) TokenStream::fail_at(t, "unknown symbol '" + t.text + "'");
    return OrePolynomial(algebra, RationalFunction::variable(alg.field(), *idx));
  };
  hooks.bracketed = [&](const Token& t, const std::string& inner) {
    Generator g;
    try {
      g = parse_generator(t.text, inner);
    } catch (const MathError& e) {
      TokenStream::fail_at(t, e.what());
    }
    auto idx = alg.find_generator(g.variable);
    if (!idx || alg.generators()[*idx].kind != g.kind)
      TokenStream::fail_at(t, "generator " + g.name() + " is not part of the algebra " + alg.declaration());
    return OrePolynomial::generator(algebra, *idx);
  };
  return ArithParser<OrePolynomial>(text, std::move(hooks)).parse();
}

OrePolynomial clear_denominators(const OrePolynomial& p) {
  if (p.is_zero()) return p;
  Polynomial l(p.algebra()->field(), 1);
  for (const auto& t : p.terms())
    if (!t.coeff.den().is_one()) l = lcm(l, t.coeff.den());
  return p.scale(RationalFunction(l));
}

}  // namespace holo
