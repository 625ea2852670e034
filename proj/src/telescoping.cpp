#include "holo/telescoping.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "holo/error.hpp"
#include "modular.hpp"

namespace holo {
namespace {

struct DeltaInfo {
  std::string variable;
  std::size_t generator;
  std::size_t var;  // index in the field
  GeneratorKind kind;
};

std::vector<DeltaInfo> resolve(const OreAlgebra& alg, const DeltaSpec& spec) {
  if (spec.variables.empty()) throw MathError("no summation or integration variable given");
  if (!alg.elimination().empty()) throw MathError("telescoping needs an algebra without elimination slots");
  std::vector<DeltaInfo> out;
  for (const auto& v : spec.variables) {
    auto g = alg.find_generator(v);
    if (!g) throw MathError("no generator acts on " + v);
    out.push_back({v, *g, *alg.field_index(*g), alg.generators()[*g].kind});
  }
  return out;
}

std::uint32_t variable_mask(const std::vector<DeltaInfo>& d) {
  std::uint32_t m = 0;
  for (const auto& x : d) m |= 1u << x.var;
  return m;
}

std::uint32_t delta_slot_mask(const OreAlgebra& alg, const std::vector<DeltaInfo>& d) {
  std::uint32_t m = 0;
  for (const auto& x : d) m |= 1u << alg.generator_slot(x.generator);
  return m;
}

// K(w)<d_w>: the target generators over the field without the delta variables.
AlgebraPtr telescoper_algebra(const OreAlgebra& alg, const std::vector<DeltaInfo>& d,
                              const std::vector<std::string>& target) {
  std::uint32_t vm = variable_mask(d);
  for (const auto& t : target) {
    auto g = alg.find_generator_by_name(t);
    if (!g) throw MathError("unknown target generator " + t);
    for (const auto& x : d)
      if (x.generator == *g) throw MathError("target generator " + t + " is also a delta");
  }
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < alg.field()->size(); ++i)
    if (!(vm >> i & 1)) vars.push_back(alg.field()->name(i));
  return alg.subalgebra(target, vars);
}

std::vector<std::string> other_generators(const OreAlgebra& alg, const std::vector<DeltaInfo>& d) {
  std::vector<std::string> out;
  for (std::size_t g = 0; g < alg.generators().size(); ++g)
    if (std::none_of(d.begin(), d.end(), [&](const DeltaInfo& x) { return x.generator == g; }))
      out.push_back(alg.generators()[g].name());
  return out;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// Combines telescopers into a reduced basis, carrying the certificates along:
// the cofactors live in K(w)<d_w> and commute with every Delta.
TelescopingResult finish(std::string algorithm, const GroebnerBasis& ideal, const DeltaSpec& deltas,
                         const AlgebraPtr& ta, const std::vector<OrePolynomial>& tels,
                         const std::vector<std::vector<OrePolynomial>>& certs) {
  const auto& alg = ideal.algebra();
  TelescopingResult r;
  r.algorithm = std::move(algorithm);
  r.algebra = alg;
  r.telescoper_algebra = ta;
  r.deltas = deltas;
  auto ext = buchberger_extended(tels, default_order(*ta));
  for (std::size_t i = 0; i < ext.basis.size(); ++i) {
    std::vector<OrePolynomial> c(deltas.variables.size(), OrePolynomial(alg));
    for (std::size_t k = 0; k < tels.size(); ++k) {
      const auto& a = ext.cofactors[i][k];
      if (a.is_zero()) continue;
      OrePolynomial ak = a.convert(alg);
      for (std::size_t v = 0; v < c.size(); ++v) c[v] += ak * certs[k][v];
    }
    r.telescopers.push_back(ext.basis.elements()[i]);
    r.certificates.push_back(std::move(c));
  }
  r.verified = verify_certificates(r, ideal);
  return r;
}

}  // namespace

DeltaSpec parse_deltas(std::string_view text) {
  DeltaSpec d;
  std::vector<std::string> items;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      items.push_back(trim(cur));
      cur.clear();
      continue;
    }
    cur += c;
  }
  items.push_back(trim(cur));
  for (const auto& item : items) {
    if (item.empty()) throw ParseError("empty delta specification", 1, 1);
    auto open = item.find('[');
    std::string var;
    if (open == std::string::npos) {
      var = item;
    } else {
      auto close = item.find(']', open);
      if (close == std::string::npos) throw ParseError("missing ']' in delta '" + item + "'", 1, open + 1);
      std::string inner = item.substr(open + 1, close - open - 1);
      var = trim(inner.substr(0, inner.find(',')));
    }
    if (var.empty() || !(std::isalpha(static_cast<unsigned char>(var[0])) || var[0] == '_'))
      throw ParseError("bad delta '" + item + "'", 1, 1);
    d.variables.push_back(var);
  }
  return d;
}

OrePolynomial delta_operator(const AlgebraPtr& algebra, const std::string& variable) {
  auto g = algebra->find_generator(variable);
  if (!g) throw MathError("no generator acts on " + variable);
  OrePolynomial d = OrePolynomial::generator(algebra, *g);
  if (algebra->generators()[*g].kind != GeneratorKind::derivative) d -= OrePolynomial(algebra, RationalFunction(algebra->field(), 1));
  return d;
}

Split split_delta(const OrePolynomial& p, const DeltaSpec& deltas) {
  const auto& alg = p.algebra();
  auto info = resolve(*alg, deltas);
  if (p.coefficient_mask() & variable_mask(info)) throw MathError("operator not v-free; cannot split");
  Split out;
  OrePolynomial rest = p;
  for (const auto& d : info) {
    std::size_t slot = alg->generator_slot(d.generator);
    std::vector<OrePolynomial::Term> t, c;
    for (const auto& term : rest.terms()) {
      unsigned k = term.monomial.exps.e[slot];
      Monomial m0 = term.monomial;
      m0.exps.e[slot] = 0;
      if (d.kind == GeneratorKind::derivative) {
        if (k == 0) {
          t.push_back(term);
        } else {
          Monomial m = term.monomial;
          --m.exps.e[slot];
          c.push_back({m, term.coeff});
        }
        continue;
      }
      // c m0 S^k = c m0 + (S - 1) c m0 (1 + S + ... + S^(k-1))
      t.push_back({m0, term.coeff});
      for (unsigned j = 0; j < k; ++j) {
        Monomial m = m0;
        m.exps.e[slot] = static_cast<std::uint16_t>(j);
        c.push_back({m, term.coeff});
      }
    }
    out.certificates.push_back(OrePolynomial::from_terms(alg, std::move(c)));
    rest = OrePolynomial::from_terms(alg, std::move(t));
  }
  out.telescoper = std::move(rest);
  return out;
}

GroebnerBasis TelescopingResult::telescoper_basis() const {
  return GroebnerBasis(telescoper_algebra, default_order(*telescoper_algebra), telescopers);
}

OrePolynomial certificate_identity(const TelescopingResult& r, std::size_t k) {
  OrePolynomial x = r.telescopers.at(k).convert(r.algebra);
  const auto& c = r.certificates.at(k);
  for (std::size_t i = 0; i < c.size(); ++i) x += delta_operator(r.algebra, r.deltas.variables[i]) * c[i];
  return x;
}

bool verify_certificates(const TelescopingResult& r, const GroebnerBasis& i) {
  if (r.certificates.size() != r.telescopers.size()) return false;
  for (std::size_t k = 0; k < r.telescopers.size(); ++k)
    if (!reduce(certificate_identity(r, k), i).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Elimination

TelescopingResult ct_slow(const GroebnerBasis& ideal, const DeltaSpec& deltas, const std::vector<std::string>& target,
                          const GroebnerOptions& options) {
  const auto& alg = ideal.algebra();
  auto info = resolve(*alg, deltas);
  auto ta = telescoper_algebra(*alg, info, target);
  auto ealg = alg->with_elimination(deltas.variables);
  std::vector<OrePolynomial> gens;
  for (const auto& g : ideal.elements()) gens.push_back(clear_denominators(g).convert(ealg));
  std::uint32_t mask = 0;
  for (std::size_t s = 0; s < ealg->elimination().size(); ++s) mask |= 1u << s;
  std::vector<OrePolynomial> free;
  try {
    free = eliminate(gens, mask, options);
  } catch (const CapExceededError& e) {
    throw CapExceededError(std::string("no telescoper found within bound: ") + e.what());
  }
  std::uint32_t dmask = delta_slot_mask(*alg, info);
  std::uint32_t allowed = dmask;
  for (const auto& t : target) allowed |= 1u << alg->generator_slot(*alg->find_generator_by_name(t));
  std::vector<OrePolynomial> tels;
  std::vector<std::vector<OrePolynomial>> certs;
  for (const auto& e : free) {
    OrePolynomial p = e.convert(alg);
    if (p.slot_mask() & ~allowed) continue;
    Split s = split_delta(p, deltas);
    if (s.telescoper.is_zero()) continue;
    tels.push_back(s.telescoper.convert(ta));
    certs.push_back(std::move(s.certificates));
  }
  if (tels.empty()) throw CapExceededError("no telescoper found within bound: elimination left no v-free operator");
  return finish("slow", ideal, deltas, ta, tels, certs);
}

// ---------------------------------------------------------------------------
// Takayama

TelescopingResult ct_takayama(const GroebnerBasis& ideal, const DeltaSpec& deltas, const TakayamaOptions& options) {
  const auto& alg = ideal.algebra();
  auto info = resolve(*alg, deltas);
  auto ta = telescoper_algebra(*alg, info, other_generators(*alg, info));
  const auto& ctx = alg->field();
  std::uint32_t vmask = variable_mask(info);
  std::vector<OrePolynomial> gens;
  for (const auto& g : ideal.elements()) gens.push_back(clear_denominators(g));

  // Reduction modulo the right ideals Delta_v O: with Delta_v moved to the left,
  // c S^a == c(v - a), c D^a == (-1)^a c^(a) and c QS^a == c(q^-a qv).
  struct Piece {
    Exponents v;
    Monomial m;
    RationalFunction c;
  };
  auto project = [&](const OrePolynomial& p) {
    std::vector<Piece> out;
    for (const auto& t : p.terms()) {
      RationalFunction c = t.coeff;
      Monomial m = t.monomial;
      for (const auto& d : info) {
        std::size_t slot = alg->generator_slot(d.generator);
        unsigned a = m.exps.e[slot];
        m.exps.e[slot] = 0;
        if (!a) continue;
        switch (d.kind) {
          case GeneratorKind::shift:
            c = c.shift(d.var, -int(a));
            break;
          case GeneratorKind::qshift:
            c = c.scale_variable(d.var, RationalFunction::variable(ctx, *alg->q_index(d.generator)).pow(-int(a)));
            break;
          case GeneratorKind::derivative:
            for (unsigned j = 0; j < a; ++j) c = -c.derivative(d.var);
            break;
        }
      }
      if (c.is_zero()) continue;
      if (c.den().support_mask() & vmask) throw MathError("coefficient denominator depends on a delta variable");
      Monomial mt = OrePolynomial::monomial(alg, m, RationalFunction(ctx, 1)).convert(ta).terms()[0].monomial;
      for (auto& [e, part] : c.num().coefficients_in(vmask))
        out.push_back({e, mt, RationalFunction(part, c.den()).embed(ta->field())});
    }
    return out;
  };

  std::optional<GroebnerBasis> last;
  for (unsigned rho = 0; rho <= options.max_degree; ++rho) {
    std::vector<std::vector<Piece>> pieces;
    std::vector<Exponents> vmons{Exponents{}};
    for (unsigned deg = 1; deg <= rho; ++deg) {
      std::vector<Exponents> next;
      for (const auto& e : vmons) {
        if (e.degree() != deg - 1) continue;
        for (const auto& d : info) {
          Exponents f = e;
          ++f.e[d.var];
          if (std::find(vmons.begin(), vmons.end(), f) == vmons.end() &&
              std::find(next.begin(), next.end(), f) == next.end())
            next.push_back(f);
        }
      }
      vmons.insert(vmons.end(), next.begin(), next.end());
    }
    for (const auto& g : gens)
      for (const auto& e : vmons) pieces.push_back(project(g.scale(RationalFunction(Polynomial::monomial(ctx, e, 1)))));
    std::vector<Exponents> positions;
    for (const auto& ps : pieces)
      for (const auto& p : ps) positions.push_back(p.v);
    std::sort(positions.begin(), positions.end(),
              [](const Exponents& a, const Exponents& b) { return deglex_compare(a, b) < 0; });
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    std::vector<OrePolynomial> rows;
    for (const auto& ps : pieces) {
      std::vector<OrePolynomial::Term> terms;
      for (const auto& p : ps) {
        auto pos = std::lower_bound(positions.begin(), positions.end(), p.v,
                                    [](const Exponents& a, const Exponents& b) { return deglex_compare(a, b) < 0; });
        Monomial m = p.m;
        m.position = static_cast<std::uint32_t>(pos - positions.begin());
        terms.push_back({m, p.c});
      }
      auto row = OrePolynomial::from_terms(ta, std::move(terms));
      if (!row.is_zero()) rows.push_back(std::move(row));
    }
    if (rows.empty()) continue;
    GroebnerBasis m = module_gb(rows, default_order(*ta), options.groebner);
    std::vector<OrePolynomial> tel;
    for (const auto& e : m.elements())
      if (e.max_position() == 0) tel.push_back(e);
    if (tel.empty()) continue;
    GroebnerBasis t(ta, default_order(*ta), tel);
    std::optional<std::size_t> r;
    try {
      r = rank(t);
    } catch (const NotDFiniteError&) {
    }
    last = t;
    if (r && (!options.expected_rank || *r <= *options.expected_rank)) break;
  }
  if (!last) throw CapExceededError("no telescoper found within v-degree bound " + std::to_string(options.max_degree));
  TelescopingResult res;
  res.algorithm = "takayama";
  res.algebra = alg;
  res.telescoper_algebra = ta;
  res.deltas = deltas;
  res.telescopers = last->elements();
  for (const auto& v : deltas.variables) res.assumptions.push_back("natural boundaries in " + v);
  return res;
}

// ---------------------------------------------------------------------------
// Heuristic ansatz

namespace {

struct MonomialLess {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->compare(a, b) < 0; }
};

// Exponent vectors over the given variables with total degree at most e.
std::vector<Exponents> monomials_up_to(const std::vector<std::size_t>& vars, unsigned e) {
  std::vector<Exponents> out{Exponents{}};
  for (std::size_t v : vars) {
    std::vector<Exponents> next;
    for (const auto& m : out)
      for (unsigned k = 0; m.degree() + k <= e; ++k) {
        Exponents n = m;
        n.e[v] = static_cast<std::uint16_t>(k);
        next.push_back(n);
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) { return deglex_compare(a, b) < 0; });
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Squarefree, pairwise coprime pieces of the given polynomials.
std::vector<Polynomial> coprime_base(const std::vector<Polynomial>& polys) {
  std::vector<Polynomial> base;
  std::vector<Polynomial> queue;
  for (const auto& p : polys)
    if (!p.is_constant()) queue.push_back(squarefree_part(p));
  while (!queue.empty()) {
    Polynomial q = queue.back();
    queue.pop_back();
    if (q.is_constant()) continue;
    bool split = false;
    for (std::size_t i = 0; i < base.size(); ++i) {
      Polynomial g = gcd(q, base[i]);
      if (g.is_constant()) continue;
      Polynomial b = base[i];
      base.erase(base.begin() + std::ptrdiff_t(i));
      queue.push_back(*Polynomial::divide_exact(b, g));
      queue.push_back(*Polynomial::divide_exact(q, g));
      queue.push_back(g);
      split = true;
      break;
    }
    if (!split) base.push_back(q.monic());
  }
  std::sort(base.begin(), base.end(), [](const Polynomial& a, const Polynomial& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return a.to_string() < b.to_string();
  });
  return base;
}

class Heuristic {
 public:
  Heuristic(const GroebnerBasis& ideal, const DeltaSpec& deltas, const std::vector<std::string>& target,
            const HeuristicOptions& opt)
      : ideal_(ideal),
        alg_(ideal.algebra()),
        ctx_(alg_->field()),
        deltas_(deltas),
        info_(resolve(*alg_, deltas)),
        ta_(telescoper_algebra(*alg_, info_, target)),
        ta_order_(default_order(*ta_)),
        rep_(Representation::from_gb(ideal)),
        staircase_(quotient_basis(ideal).staircase),
        opt_(opt),
        rng_(opt.seed) {
    vmask_ = variable_mask(info_);
    for (const auto& d : info_) vvars_.push_back(d.var);
    std::sort(vvars_.begin(), vvars_.end());
    vvars_.erase(std::unique(vvars_.begin(), vvars_.end()), vvars_.end());
    std::vector<Polynomial> lcs;
    for (const auto& g : ideal.elements()) {
      OrePolynomial c = clear_denominators(g);
      Polynomial lc = c.leading_term(ideal.order()).coeff.num();
      if (lc.support_mask() & vmask_) lcs.push_back(*Polynomial::divide_exact(lc, content_in(lc, vmask_)));
    }
    base_factors_ = coprime_base(lcs);
    w_point_.resize(ctx_->size());
    for (auto& x : w_point_) x = random_value();
    for (std::size_t s = 0; s < staircase_.size(); ++s) index_[staircase_[s].exps] = s;
  }

  TelescopingResult run() {
    if (rep_.dim() == 0) throw MathError("the ideal is the unit ideal");
    std::vector<OrePolynomial> tels;
    std::vector<std::vector<OrePolynomial>> certs;
    std::vector<Monomial> failed, lms;
    MonomialLess less{&ta_order_};
    std::set<Monomial, MonomialLess> todo(less);
    todo.insert(Monomial{});
    std::string last_state = "no support tried";
    while (!todo.empty()) {
      Monomial m = *todo.begin();
      todo.erase(todo.begin());
      if (std::any_of(lms.begin(), lms.end(), [&](const Monomial& l) { return monomial_divides(l, m); })) continue;
      if (m.exps.degree() > opt_.max_order) break;
      std::vector<Monomial> support = failed;
      support.push_back(m);
      auto found = try_support(support, last_state);
      if (found) {
        tels.push_back(std::move(found->first));
        certs.push_back(std::move(found->second));
        lms.push_back(m);
        if (opt_.max_telescopers && tels.size() >= opt_.max_telescopers) break;
        continue;
      }
      failed.push_back(m);
      for (std::size_t g = 0; g < ta_->generators().size(); ++g) {
        Monomial n = m;
        ++n.exps.e[ta_->generator_slot(g)];
        todo.insert(n);
      }
    }
    if (tels.empty()) throw CapExceededError("heuristic exhausted: " + last_state);
    return finish("heuristic", ideal_, deltas_, ta_, tels, certs);
  }

 private:
  struct Denominator {
    std::vector<std::pair<std::size_t, unsigned>> factors;  // factor id, multiplicity
    unsigned degree = 0;
  };

  struct Sample {
    std::vector<std::uint64_t> point;
    std::vector<std::vector<std::uint64_t>> shifted;  // per delta
    std::vector<std::uint64_t> lambda;
    std::vector<std::vector<std::uint64_t>> action;  // per delta and staircase index
    std::map<std::size_t, std::uint64_t> tvalues;    // per telescoper monomial id
    std::map<std::size_t, std::vector<std::uint64_t>> fvalues;
  };

  std::uint64_t random_value() { return 1 + rng_() % (modp::P - 1); }

  std::size_t factor_id(const Polynomial& f) {
    std::string key = f.to_string();
    auto it = factor_ids_.find(key);
    if (it != factor_ids_.end()) return it->second;
    factors_.push_back(f);
    factors_mod_.emplace_back(f);
    std::vector<modp::Poly> d;
    for (const auto& x : info_) d.emplace_back(f.derivative(x.var));
    factor_derivs_.push_back(std::move(d));
    factor_ids_[key] = factors_.size() - 1;
    return factors_.size() - 1;
  }

  unsigned v_degree(const Polynomial& p) const {
    unsigned d = 0;
    for (const auto& t : p.terms()) {
      unsigned k = 0;
      for (auto v : vvars_) k += t.exponents.e[v];
      d = std::max(d, k);
    }
    return d;
  }

  std::size_t monomial_id(const Monomial& m) {
    for (std::size_t i = 0; i < tmonos_.size(); ++i)
      if (tmonos_[i] == m) return i;
    tmonos_.push_back(m);
    OrePolynomial u = OrePolynomial::monomial(ta_, m, RationalFunction(ta_->field(), 1)).convert(alg_);
    RVector v = rep_.apply(u, rep_.start());
    std::vector<modp::Rational> mv;
    for (const auto& c : v) mv.emplace_back(c);
    tvectors_.push_back(std::move(v));
    tvectors_mod_.push_back(std::move(mv));
    return tmonos_.size() - 1;
  }

  std::vector<std::uint64_t> shifted_point(const std::vector<std::uint64_t>& pt, const DeltaInfo& d) const {
    std::vector<std::uint64_t> s = pt;
    if (d.kind == GeneratorKind::shift) s[d.var] = modp::add(s[d.var], 1);
    if (d.kind == GeneratorKind::qshift) s[d.var] = modp::mul(s[d.var], pt[*alg_->q_index(d.generator)]);
    return s;
  }

  // A sample point with fresh delta variables; retried at poles of the action.
  Sample make_sample() {
    std::size_t r = rep_.dim();
    for (;;) {
      Sample s;
      s.point = w_point_;
      for (auto v : vvars_) s.point[v] = random_value();
      for (std::size_t k = 0; k < r; ++k) s.lambda.push_back(random_value());
      bool ok = true;
      for (std::size_t i = 0; i < info_.size() && ok; ++i) {
        s.shifted.push_back(shifted_point(s.point, info_[i]));
        std::vector<std::uint64_t> a(r, 0);
        for (std::size_t row = 0; row < r && ok; ++row)
          for (std::size_t k = 0; k < r; ++k) {
            auto x = action_mod(i, row, k).evaluate(s.point);
            if (!x) {
              ok = false;
              break;
            }
            a[row] = modp::add(a[row], modp::mul(s.lambda[k], *x));
          }
        s.action.push_back(std::move(a));
      }
      if (ok) return s;
    }
  }

  const modp::Rational& action_mod(std::size_t i, std::size_t row, std::size_t k) {
    if (action_mod_.empty()) {
      std::size_t r = rep_.dim();
      for (const auto& d : info_) {
        std::vector<modp::Rational> m;
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < r; ++b) m.emplace_back(rep_.action(d.generator)[a][b]);
        action_mod_.push_back(std::move(m));
      }
    }
    return action_mod_[i][row * rep_.dim() + k];
  }

  // f(pt), f(sigma_i pt) for every delta, df/dv_i(pt) for every delta.
  const std::vector<std::uint64_t>& factor_values(Sample& s, std::size_t f) {
    auto it = s.fvalues.find(f);
    if (it != s.fvalues.end()) return it->second;
    std::vector<std::uint64_t> v{factors_mod_[f].evaluate(s.point)};
    for (std::size_t i = 0; i < info_.size(); ++i) v.push_back(factors_mod_[f].evaluate(s.shifted[i]));
    for (std::size_t i = 0; i < info_.size(); ++i) v.push_back(factor_derivs_[f][i].evaluate(s.point));
    return s.fvalues[f] = std::move(v);
  }

  std::uint64_t tvalue(Sample& s, std::size_t id) {
    auto it = s.tvalues.find(id);
    if (it != s.tvalues.end()) return it->second;
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < rep_.dim(); ++k) {
      auto x = tvectors_mod_[id][k].evaluate(s.point);
      if (x) v = modp::add(v, modp::mul(s.lambda[k], *x));
    }
    return s.tvalues[id] = v;
  }

  static std::uint64_t monomial_value(const Exponents& e, const std::vector<std::uint64_t>& pt,
                                      const std::vector<std::size_t>& vars) {
    std::uint64_t v = 1;
    for (auto x : vars)
      if (e.e[x]) v = modp::mul(v, modp::pow(pt[x], e.e[x]));
    return v;
  }

  std::vector<Denominator> denominators(unsigned order) {
    std::vector<std::size_t> ids;
    for (const auto& f : base_factors_) {
      ids.push_back(factor_id(f));
      for (const auto& d : info_) {
        if (d.kind == GeneratorKind::derivative || !f.depends_on(d.var)) continue;
        for (unsigned k = 1; k <= order; ++k) {
          Polynomial g = d.kind == GeneratorKind::shift
                             ? f.shift(d.var, k)
                             : f.scale_variable(d.var, Polynomial::variable(ctx_, *alg_->q_index(d.generator)).pow(k));
          ids.push_back(factor_id(g.monic()));
        }
      }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<Denominator> out;
    std::size_t n = ids.size();
    std::size_t limit = std::min<std::size_t>(n, opt_.max_factors);
    // Subsets by increasing size, then the full set, then its square.
    std::vector<std::vector<std::size_t>> subsets{{}};
    for (std::size_t size = 1; size <= limit; ++size) {
      std::vector<std::size_t> idx(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i;
      for (;;) {
        std::vector<std::size_t> s;
        for (auto i : idx) s.push_back(ids[i]);
        subsets.push_back(std::move(s));
        std::size_t i = size;
        while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    for (const auto& s : subsets) {
      Denominator d;
      for (auto f : s) {
        d.factors.push_back({f, 1});
        d.degree += v_degree(factors_[f]);
      }
      out.push_back(std::move(d));
    }
    if (n > limit) {
      Denominator d;
      for (auto f : ids) {
        d.factors.push_back({f, 1});
        d.degree += v_degree(factors_[f]);
      }
      out.push_back(d);
    }
    if (n > 0) {
      Denominator d;
      for (auto f : ids) {
        d.factors.push_back({f, 2});
        d.degree += 2 * v_degree(factors_[f]);
      }
      out.push_back(d);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Denominator& a, const Denominator& b) { return a.degree < b.degree; });
    return out;
  }

  using Found = std::pair<OrePolynomial, std::vector<OrePolynomial>>;

  std::optional<Found> try_support(const std::vector<Monomial>& support, std::string& state) {
    unsigned s = support.back().exps.degree();
    auto dens = denominators(s);
    std::size_t r = rep_.dim();
    std::size_t nv = vvars_.size();
    for (unsigned round = 0;; ++round) {
      bool tried = false;
      for (const auto& d : dens) {
        unsigned e = d.degree + s + 1 + 2 * round;
        if (e > opt_.max_numerator_degree) continue;
        std::size_t n = support.size() + info_.size() * r * binomial(e + nv, nv);
        if (n > opt_.max_unknowns) continue;
        tried = true;
        state = "support size " + std::to_string(support.size()) + ", round " + std::to_string(round) +
                ", denominator degree " + std::to_string(d.degree) + ", numerator degree " + std::to_string(e);
        if (auto f = trial(support, d, e)) return f;
      }
      if (!tried) return std::nullopt;
    }
  }

  struct Column {
    std::size_t t = std::size_t(-1);  // telescoper monomial index into the support
    std::size_t delta = 0;
    std::size_t stair = 0;
    Exponents beta;
  };

  std::optional<Found> trial(const std::vector<Monomial>& support, const Denominator& den, unsigned e) {
    std::size_t r = rep_.dim();
    auto betas = monomials_up_to(vvars_, e);
    std::vector<Column> cols;
    std::vector<std::size_t> tids;
    for (std::size_t k = 0; k < support.size(); ++k) {
      Column c;
      c.t = k;
      cols.push_back(c);
      tids.push_back(monomial_id(support[k]));
    }
    for (std::size_t i = 0; i < info_.size(); ++i)
      for (std::size_t st = 0; st < r; ++st)
        for (const auto& b : betas) cols.push_back({std::size_t(-1), i, st, b});
    std::size_t n = cols.size();
    std::size_t npts = n + 8;
    while (samples_.size() < npts) samples_.push_back(make_sample());

    std::vector<std::vector<std::uint64_t>> m(npts, std::vector<std::uint64_t>(n, 0));
    for (std::size_t p = 0; p < npts; ++p) {
      Sample& s = samples_[p];
      // d at the point, at each shifted point, and d'/d per delta
      std::uint64_t dv = 1;
      std::vector<std::uint64_t> dsh(info_.size(), 1), dlog(info_.size(), 0);
      bool pole = false;
      for (auto [f, mult] : den.factors) {
        const auto& fv = factor_values(s, f);
        if (fv[0] == 0) pole = true;
        for (unsigned k = 0; k < mult; ++k) dv = modp::mul(dv, fv[0]);
        for (std::size_t i = 0; i < info_.size(); ++i) {
          for (unsigned k = 0; k < mult; ++k) dsh[i] = modp::mul(dsh[i], fv[1 + i]);
          if (fv[0])
            dlog[i] = modp::add(dlog[i], modp::mul(mult, modp::mul(fv[1 + info_.size() + i], modp::inv(fv[0]))));
        }
      }
      if (pole) continue;  // leaves a zero row
      std::uint64_t dinv = modp::inv(dv);
      std::vector<std::uint64_t> dshinv(info_.size());
      for (std::size_t i = 0; i < info_.size(); ++i) dshinv[i] = dsh[i] ? modp::inv(dsh[i]) : 0;
      for (std::size_t c = 0; c < n; ++c) {
        const Column& col = cols[c];
        if (col.t != std::size_t(-1)) {
          m[p][c] = tvalue(s, tids[col.t]);
          continue;
        }
        const DeltaInfo& d = info_[col.delta];
        std::uint64_t a = s.action[col.delta][col.stair];
        std::uint64_t lam = s.lambda[col.stair];
        std::uint64_t vb = monomial_value(col.beta, s.point, vvars_);
        std::uint64_t cval = modp::mul(vb, dinv);
        if (d.kind == GeneratorKind::derivative) {
          // D(c e_s) = c' e_s + c * row_s, c = v^b/d, c'/c = b/v - d'/d
          std::uint64_t dc = modp::sub(0, modp::mul(cval, dlog[col.delta]));
          unsigned bi = col.beta.e[d.var];
          if (bi) {
            Exponents lower = col.beta;
            --lower.e[d.var];
            dc = modp::add(dc, modp::mul(bi, modp::mul(monomial_value(lower, s.point, vvars_), dinv)));
          }
          m[p][c] = modp::add(modp::mul(lam, dc), modp::mul(cval, a));
        } else {
          std::uint64_t sv = modp::mul(monomial_value(col.beta, s.shifted[col.delta], vvars_), dshinv[col.delta]);
          m[p][c] = modp::sub(modp::mul(sv, a), modp::mul(lam, cval));
        }
      }
    }
    auto pivots = modp::rref(m, n);
    std::size_t tm = support.size() - 1;
    std::vector<bool> is_pivot(n, false);
    std::size_t tm_row = std::size_t(-1);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      is_pivot[pivots[i]] = true;
      if (pivots[i] == tm) tm_row = i;
    }
    std::size_t free_col = std::size_t(-1);
    if (!is_pivot[tm]) {
      free_col = tm;
    } else {
      for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c] && m[tm_row][c]) {
          free_col = c;
          break;
        }
    }
    if (free_col == std::size_t(-1)) return std::nullopt;
    std::vector<Column> chosen;
    for (auto p : pivots) chosen.push_back(cols[p]);
    chosen.push_back(cols[free_col]);
    return solve(support, den, chosen, pivots.size());
  }

  Polynomial denominator_poly(const Denominator& den) const {
    Polynomial d(ctx_, 1);
    for (auto [f, mult] : den.factors) d *= factors_[f].pow(mult);
    return d;
  }

  // Exact solution over K(w) restricted to the chosen columns.
  std::optional<Found> solve(const std::vector<Monomial>& support, const Denominator& den,
                             const std::vector<Column>& cols, std::size_t rank) {
    std::size_t r = rep_.dim();
    Polynomial d = denominator_poly(den);
    std::vector<RVector> vecs;
    for (const auto& col : cols) {
      if (col.t != std::size_t(-1)) {
        vecs.push_back(tvectors_[monomial_id(support[col.t])]);
        continue;
      }
      const DeltaInfo& di = info_[col.delta];
      RationalFunction c(Polynomial::monomial(ctx_, col.beta, 1), d);
      RVector w(r, RationalFunction(ctx_));
      w[col.stair] = c;
      RVector out = rep_.apply_generator(di.generator, w);
      if (di.kind != GeneratorKind::derivative) out[col.stair] -= c;
      vecs.push_back(std::move(out));
    }
    std::size_t n = cols.size();
    std::vector<std::vector<Polynomial>> rows;
    for (std::size_t k = 0; k < r; ++k) {
      Polynomial l(ctx_, 1);
      for (const auto& v : vecs)
        if (!v[k].is_zero()) l = lcm(l, v[k].den());
      std::map<Exponents, std::vector<Polynomial>> byv;
      for (std::size_t c = 0; c < n; ++c) {
        if (vecs[c][k].is_zero()) continue;
        Polynomial num = vecs[c][k].num() * *Polynomial::divide_exact(l, vecs[c][k].den());
        for (auto& [e, part] : num.coefficients_in(vmask_)) {
          auto& row = byv.try_emplace(e, n, Polynomial(ctx_)).first->second;
          row[c] += part;
        }
      }
      for (auto& [e, row] : byv) rows.push_back(std::move(row));
    }
    // Independent rows at the random parameter point.
    modp::Echelon ech(n);
    RMatrix sys;
    for (const auto& row : rows) {
      std::vector<std::uint64_t> v;
      for (const auto& x : row) v.push_back(modp::Poly(x).evaluate(w_point_));
      if (!ech.insert(std::move(v))) continue;
      RVector rr;
      for (const auto& x : row) rr.emplace_back(x);
      sys.push_back(std::move(rr));
      if (sys.size() == rank) break;
    }
    if (sys.size() < rank) {
      sys.clear();
      for (const auto& row : rows) {
        RVector rr;
        for (const auto& x : row) rr.emplace_back(x);
        sys.push_back(std::move(rr));
      }
    }
    std::vector<RVector> ns = sys.empty() ? std::vector<RVector>{} : nullspace(sys, n, Execution::serial);
    if (sys.empty()) {
      RVector v(n, RationalFunction(ctx_));
      v[n - 1] = RationalFunction(ctx_, 1);
      ns.push_back(v);
    }
    std::size_t tm = 0;
    for (std::size_t c = 0; c < n; ++c)
      if (cols[c].t == support.size() - 1) tm = c;
    for (const auto& sol : ns) {
      if (sol[tm].is_zero()) continue;
      RationalFunction lam = sol[tm].inverse();
      std::vector<OrePolynomial::Term> tterms;
      std::vector<std::vector<OrePolynomial::Term>> cterms(info_.size());
      std::vector<std::vector<Polynomial>> nums(info_.size(), std::vector<Polynomial>(r, Polynomial(ctx_)));
      for (std::size_t c = 0; c < n; ++c) {
        if (sol[c].is_zero()) continue;
        const Column& col = cols[c];
        if (col.t != std::size_t(-1)) {
          tterms.push_back({support[col.t], (sol[c] * lam).embed(ta_->field())});
          continue;
        }
        nums[col.delta][col.stair] += sol[c].num().mul_term(col.beta, 1);
      }
      std::vector<OrePolynomial> certs;
      for (std::size_t i = 0; i < info_.size(); ++i) {
        std::vector<OrePolynomial::Term> terms;
        for (std::size_t st = 0; st < r; ++st)
          if (!nums[i][st].is_zero()) terms.push_back({staircase_[st], RationalFunction(nums[i][st], d) * lam});
        certs.push_back(OrePolynomial::from_terms(alg_, std::move(terms)));
      }
      OrePolynomial t = OrePolynomial::from_terms(ta_, std::move(tterms));
      OrePolynomial x = t.convert(alg_);
      for (std::size_t i = 0; i < info_.size(); ++i) x += delta_operator(alg_, info_[i].variable) * certs[i];
      if (reduce(x, ideal_).is_zero()) return Found{t, certs};
    }
    return std::nullopt;
  }

  const GroebnerBasis& ideal_;
  AlgebraPtr alg_;
  ContextPtr ctx_;
  DeltaSpec deltas_;
  std::vector<DeltaInfo> info_;
  AlgebraPtr ta_;
  MonomialOrder ta_order_;
  Representation rep_;
  std::vector<Monomial> staircase_;
  HeuristicOptions opt_;
  std::mt19937_64 rng_;
  std::uint32_t vmask_ = 0;
  std::vector<std::size_t> vvars_;
  std::map<Exponents, std::size_t> index_;
  std::vector<Polynomial> base_factors_;
  std::vector<Polynomial> factors_;
  std::vector<modp::Poly> factors_mod_;
  std::vector<std::vector<modp::Poly>> factor_derivs_;
  std::map<std::string, std::size_t> factor_ids_;
  std::vector<std::uint64_t> w_point_;
  std::vector<Sample> samples_;
  std::vector<std::vector<modp::Rational>> action_mod_;
  std::vector<Monomial> tmonos_;
  std::vector<RVector> tvectors_;
  std::vector<std::vector<modp::Rational>> tvectors_mod_;
};

}  // namespace

TelescopingResult ct_heuristic(const GroebnerBasis& ideal, const DeltaSpec& deltas,
                               const std::vector<std::string>& target, const HeuristicOptions& options) {
  return Heuristic(ideal, deltas, target, options).run();
}

// ---------------------------------------------------------------------------
// Relations over a smaller field

std::vector<OrePolynomial> find_relation(const GroebnerBasis& g, const RelationOptions& options) {
  const auto& alg = g.algebra();
  const auto& ctx = alg->field();
  std::uint32_t emask = 0;
  for (const auto& s : options.eliminate) {
    auto idx = ctx->index_of(s);
    if (!idx) continue;
    for (std::size_t k = 0; k < alg->generators().size(); ++k)
      if (alg->field_index(k) == idx) throw MathError("cannot eliminate " + s + ": a generator acts on it");
    emask |= 1u << *idx;
  }
  std::vector<std::string> vars, names;
  for (std::size_t i = 0; i < ctx->size(); ++i)
    if (!(emask >> i & 1)) vars.push_back(ctx->name(i));
  for (const auto& gen : alg->generators()) names.push_back(gen.name());
  AlgebraPtr small = alg->subalgebra(names, vars);
  Representation rep = Representation::from_gb(g);
  std::size_t r = rep.dim();
  RationalFunction one(ctx, 1);
  std::mt19937_64 rng(1);
  std::vector<std::uint64_t> point(ctx->size());
  for (auto& x : point) x = 1 + rng() % (modp::P - 1);

  // Relations with the given support; the last monomial must occur.
  auto solve = [&](const std::vector<Monomial>& support, bool need_last) {
    std::vector<RVector> vecs;
    for (const auto& m : support) vecs.push_back(rep.apply(OrePolynomial::monomial(alg, m, one), rep.start()));
    std::size_t n = support.size();
    RMatrix sys;
    for (std::size_t k = 0; k < r; ++k) {
      Polynomial l(ctx, 1);
      for (const auto& v : vecs)
        if (!v[k].is_zero()) l = lcm(l, v[k].den());
      std::map<Exponents, RVector> byv;
      for (std::size_t c = 0; c < n; ++c) {
        if (vecs[c][k].is_zero()) continue;
        Polynomial num = vecs[c][k].num() * *Polynomial::divide_exact(l, vecs[c][k].den());
        for (auto& [e, part] : num.coefficients_in(emask)) {
          auto& row = byv.try_emplace(e, n, RationalFunction(ctx)).first->second;
          row[c] += RationalFunction(part);
        }
      }
      for (auto& [e, row] : byv) sys.push_back(std::move(row));
    }
    std::vector<OrePolynomial> out;
    // A relation using the last monomial exists only if the last column is not
    // a pivot; checked at a random point first.
    if (need_last && !sys.empty()) {
      std::vector<std::vector<std::uint64_t>> mm;
      for (const auto& row : sys) {
        std::vector<std::uint64_t> v;
        for (const auto& a : row) {
          auto x = a.is_zero() ? std::optional<std::uint64_t>(0) : modp::Rational(a).evaluate(point);
          v.push_back(x ? *x : 0);
        }
        mm.push_back(std::move(v));
      }
      auto pivots = modp::rref(mm, n);
      if (!pivots.empty() && pivots.back() == n - 1) return out;
    }
    std::vector<RVector> ns;
    if (sys.empty()) {
      for (std::size_t c = 0; c < n; ++c) {
        RVector v(n, RationalFunction(ctx));
        v[c] = one;
        ns.push_back(v);
      }
    } else {
      ns = nullspace(sys, n, Execution::serial);
    }
    for (const auto& v : ns) {
      if (need_last && v[n - 1].is_zero()) continue;
      std::vector<OrePolynomial::Term> terms;
      for (std::size_t c = 0; c < n; ++c)
        if (!v[c].is_zero()) terms.push_back({support[c], v[c].embed(small->field())});
      out.push_back(OrePolynomial::from_terms(small, std::move(terms)).monic(default_order(*small)));
    }
    return out;
  };

  if (!options.support.empty()) {
    auto out = solve(options.support, false);
    if (out.empty()) throw MathError("no relation with the given support");
    return out;
  }
  MonomialOrder order = default_order(*small);
  MonomialLess less{&order};
  std::set<Monomial, MonomialLess> todo(less);
  todo.insert(Monomial{});
  std::vector<Monomial> failed, lms;
  std::vector<OrePolynomial> out;
  while (!todo.empty()) {
    Monomial m = *todo.begin();
    todo.erase(todo.begin());
    if (m.exps.degree() > options.max_degree) break;
    if (std::any_of(lms.begin(), lms.end(), [&](const Monomial& l) { return monomial_divides(l, m); })) continue;
    std::vector<Monomial> support = failed;
    support.push_back(m);
    auto found = solve(support, true);
    if (!found.empty()) {
      out.push_back(found[0]);
      lms.push_back(m);
      continue;
    }
    failed.push_back(m);
    for (std::size_t k = 0; k < alg->generators().size(); ++k) {
      Monomial n = m;
      ++n.exps.e[alg->generator_slot(k)];
      todo.insert(n);
    }
  }
  if (out.empty()) throw MathError("no relation within the support cap");
  return out;
}

// ---------------------------------------------------------------------------
// Boundary terms

BoundaryExpression assemble_boundary(const TelescopingResult& r, const ExprPtr& summand,
                                     const std::map<std::string, Bound>& bounds, bool natural) {
  BoundaryExpression b;
  b.summand = summand;
  b.natural = natural;
  const auto& alg = *r.algebra;
  // Bounds depending on w need correction terms, except a discrete upper bound.
  const auto& wnames = r.telescoper_algebra->field()->names();
  auto depends_on_w = [&](const ExprPtr& e) {
    for (const auto& s : free_symbols(e))
      if (std::find(wnames.begin(), wnames.end(), s) != wnames.end()) return true;
    return false;
  };
  for (const auto& [v, bd] : bounds) {
    auto g = alg.find_generator(v);
    bool discrete = g && alg.generators()[*g].kind != GeneratorKind::derivative;
    if (depends_on_w(bd.lower) || (!discrete && depends_on_w(bd.upper)))
      throw MathError("bounds of " + v + " depend on the telescoper variables");
  }
  for (std::size_t k = 0; k < r.telescopers.size(); ++k) {
    std::vector<BoundaryTerm> terms;
    if (k < r.certificates.size()) {
      for (std::size_t i = 0; i < r.deltas.variables.size(); ++i) {
        const auto& v = r.deltas.variables[i];
        auto it = bounds.find(v);
        if (it == bounds.end()) throw MathError("no bounds given for " + v);
        BoundaryTerm t;
        t.variable = v;
        t.certificate = r.certificates[k][i];
        t.at_lower = it->second.lower;
        t.at_upper = it->second.upper;
        auto g = alg.find_generator(v);
        if (g && alg.generators()[*g].kind != GeneratorKind::derivative)
          t.at_upper = make_binary(ExprKind::add, it->second.upper, make_number(1));
        for (const auto& [name, bd] : bounds)
          if (name != v) t.remaining[name] = bd;
        terms.push_back(std::move(t));
      }
    }
    b.terms.push_back(std::move(terms));
  }
  b.assumptions = r.assumptions;
  if (natural)
    for (const auto& v : r.deltas.variables) b.assumptions.push_back("natural boundaries in " + v);
  return b;
}

}  // namespace holo
