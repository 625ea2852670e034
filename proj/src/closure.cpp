#include "holo/closure.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "holo/error.hpp"

namespace holo {
namespace {

void require_standard(const OreAlgebra& alg) {
  if (!alg.elimination().empty()) throw MathError("closure operations need an algebra without elimination slots");
}

RationalFunction sigma(const OreAlgebra& alg, std::size_t g, const RationalFunction& c, int k = 1) {
  auto idx = alg.field_index(g);
  if (!idx || !c.depends_on(*idx)) return c;
  const auto& gen = alg.generators()[g];
  switch (gen.kind) {
    case GeneratorKind::shift:
      return c.shift(*idx, k);
    case GeneratorKind::qshift:
      return c.scale_variable(*idx, RationalFunction::variable(alg.field(), *alg.q_index(g)).pow(k));
    case GeneratorKind::derivative:
      return c;
  }
  return c;
}

RVector zero_vector(const ContextPtr& ctx, std::size_t n) { return RVector(n, RationalFunction(ctx)); }

RVector unit_vector(const ContextPtr& ctx, std::size_t n, std::size_t i) {
  RVector v = zero_vector(ctx, n);
  v[i] = RationalFunction(ctx, 1);
  return v;
}

bool is_zero_vector(const RVector& v) {
  return std::all_of(v.begin(), v.end(), [](const RationalFunction& c) { return c.is_zero(); });
}

RVector map_vector(const RVector& v, const std::vector<RationalFunction>& images, const ContextPtr& target) {
  RVector out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(compose(c, images, target));
  return out;
}

struct MonomialLess {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->compare(a, b) < 0; }
};

// Incremental echelon form used to detect linear dependencies in FGLM. Each
// stored row is a combination of the staircase vectors found so far.
class Echelon {
 public:
  Echelon(ContextPtr ctx, std::size_t dim) : ctx_(std::move(ctx)), dim_(dim) {}

  // Returns the coefficients beta with v = sum beta_s * staircase_s, or nullopt
  // after recording v as the next staircase vector.
  std::optional<RVector> insert(RVector v) {
    std::size_t s = count_;
    RVector beta = zero_vector(ctx_, s);
    for (const auto& row : rows_) {
      const RationalFunction a = v[row.pivot];
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!row.vec[j].is_zero()) v[j] -= a * row.vec[j];
      for (std::size_t j = 0; j < row.combo.size(); ++j)
        if (!row.combo[j].is_zero()) beta[j] += a * row.combo[j];
    }
    std::size_t pivot = 0;
    while (pivot < dim_ && v[pivot].is_zero()) ++pivot;
    if (pivot == dim_) return beta;
    RationalFunction inv = v[pivot].inverse();
    for (auto& c : v)
      if (!c.is_zero()) c *= inv;
    // v_new/p = (staircase_s - beta)/p
    RVector combo(s + 1, RationalFunction(ctx_));
    for (std::size_t j = 0; j < s; ++j)
      if (!beta[j].is_zero()) combo[j] = -(beta[j] * inv);
    combo[s] = inv;
    for (auto& r : rows_) r.combo.resize(s + 1, RationalFunction(ctx_));
    rows_.push_back({pivot, std::move(v), std::move(combo)});
    ++count_;
    return std::nullopt;
  }

 private:
  struct Row {
    std::size_t pivot;
    RVector vec;
    RVector combo;
  };
  ContextPtr ctx_;
  std::size_t dim_;
  std::size_t count_ = 0;
  std::vector<Row> rows_;
};

}  // namespace

QuotientBasis quotient_basis(const GroebnerBasis& g) {
  const auto& alg = *g.algebra();
  QuotientBasis q;
  if (g.is_unit_ideal()) return q;
  auto lms = g.leading_monomials();
  for (const auto& m : lms)
    if (m.position) throw MathError("quotient basis of a module is not supported");
  for (std::size_t s = 0; s < alg.slots(); ++s) {
    bool bounded = std::any_of(lms.begin(), lms.end(), [&](const Monomial& m) {
      for (std::size_t t = 0; t < alg.slots(); ++t)
        if ((t == s) != (m.exps.e[t] > 0)) return false;
      return true;
    });
    if (!bounded)
      throw NotDFiniteError("ideal has infinite rank: no leading monomial is a pure power of " + alg.slot_name(s));
  }
  MonomialLess less{&g.order()};
  std::set<Monomial, MonomialLess> seen(less);
  std::vector<Monomial> todo{Monomial{}};
  seen.insert(Monomial{});
  while (!todo.empty()) {
    Monomial m = todo.back();
    todo.pop_back();
    for (std::size_t s = 0; s < alg.slots(); ++s) {
      Monomial n = m;
      ++n.exps.e[s];
      if (seen.count(n)) continue;
      if (std::any_of(lms.begin(), lms.end(), [&](const Monomial& l) { return monomial_divides(l, n); })) continue;
      seen.insert(n);
      todo.push_back(n);
    }
  }
  q.staircase.assign(seen.begin(), seen.end());
  return q;
}

Representation::Representation(AlgebraPtr algebra, RVector start, std::vector<RMatrix> action)
    : algebra_(std::move(algebra)), start_(std::move(start)), action_(std::move(action)) {
  require_standard(*algebra_);
  if (action_.size() != algebra_->generators().size()) throw MathError("one action matrix per generator expected");
  for (const auto& m : action_)
    if (m.size() != start_.size()) throw MathError("action matrix has the wrong size");
  inverse_.resize(action_.size());
}

Representation Representation::from_gb(const GroebnerBasis& g) {
  const auto& alg = g.algebra();
  require_standard(*alg);
  auto q = quotient_basis(g);
  std::size_t r = q.rank();
  const auto& ctx = alg->field();
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < r; ++i) index[q.staircase[i].exps] = i;
  std::vector<RMatrix> action(alg->generators().size(), RMatrix(r, zero_vector(ctx, r)));
  RationalFunction one(ctx, 1);
  for (std::size_t gi = 0; gi < alg->generators().size(); ++gi) {
    OrePolynomial gen = OrePolynomial::generator(alg, gi);
    for (std::size_t i = 0; i < r; ++i) {
      OrePolynomial p = gen * OrePolynomial::monomial(alg, q.staircase[i], one);
      OrePolynomial nf = reduce(p, g);
      for (const auto& t : nf.terms()) action[gi][i][index.at(t.monomial.exps)] = t.coeff;
    }
  }
  RVector start = r ? unit_vector(ctx, r, 0) : RVector{};
  return Representation(alg, std::move(start), std::move(action));
}

Representation Representation::first_order(AlgebraPtr algebra, const std::vector<RationalFunction>& factors) {
  std::vector<RMatrix> action;
  for (const auto& f : factors) action.push_back(RMatrix{RVector{f.embed(algebra->field())}});
  RVector start{RationalFunction(algebra->field(), 1)};
  return Representation(std::move(algebra), std::move(start), std::move(action));
}

bool Representation::is_zero_function() const { return is_zero_vector(start_); }

RVector Representation::apply_generator(std::size_t g, const RVector& w) const {
  const auto& alg = *algebra_;
  const auto& m = action_[g];
  std::size_t n = dim();
  RVector out = zero_vector(alg.field(), n);
  bool derivative = alg.generators()[g].kind == GeneratorKind::derivative;
  auto idx = alg.field_index(g);
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i].is_zero()) continue;
    RationalFunction s = sigma(alg, g, w[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (!m[i][j].is_zero()) out[j] += s * m[i][j];
    if (derivative && idx) out[i] += w[i].derivative(*idx);
  }
  return out;
}

RVector Representation::apply_inverse(std::size_t g, const RVector& w) const {
  const auto& alg = *algebra_;
  if (alg.generators()[g].kind == GeneratorKind::derivative) throw MathError("a derivation has no inverse");
  if (!inverse_[g]) inverse_[g] = inverse(action_[g]);
  const auto& minv = *inverse_[g];
  std::size_t n = dim();
  RVector out = zero_vector(alg.field(), n);
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!minv[i][j].is_zero()) out[j] += w[i] * minv[i][j];
  }
  for (auto& c : out) c = sigma(alg, g, c, -1);
  return out;
}

RVector Representation::apply(const OrePolynomial& p, const RVector& w) const {
  OrePolynomial q = p.convert(algebra_);
  const auto& alg = *algebra_;
  std::map<Exponents, RVector> cache;
  cache.emplace(Exponents{}, w);
  auto power = [&](auto&& self, const Exponents& e) -> const RVector& {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    std::size_t g = 0;
    while (e.e[alg.generator_slot(g)] == 0) ++g;
    Exponents parent = e;
    --parent.e[alg.generator_slot(g)];
    RVector v = apply_generator(g, self(self, parent));
    return cache.emplace(e, std::move(v)).first->second;
  };
  RVector out = zero_vector(alg.field(), dim());
  for (const auto& t : q.terms()) {
    if (t.monomial.position) throw MathError("cannot apply a module element");
    const RVector& v = power(power, t.monomial.exps);
    for (std::size_t j = 0; j < dim(); ++j)
      if (!v[j].is_zero()) out[j] += t.coeff * v[j];
  }
  return out;
}

GroebnerBasis fglm(const Representation& r, const MonomialOrder& order) {
  const auto& alg = r.algebra();
  const auto& ctx = alg->field();
  RationalFunction one(ctx, 1);
  if (r.is_zero_function()) return GroebnerBasis(alg, order, {OrePolynomial(alg, one)});
  MonomialLess less{&order};
  std::vector<Monomial> staircase;
  std::map<Exponents, RVector> vectors;
  std::vector<OrePolynomial> elements;
  std::vector<Monomial> lms;
  Echelon echelon(ctx, r.dim());
  // candidate -> (parent, generator)
  std::map<Monomial, std::pair<Exponents, std::size_t>, MonomialLess> candidates(less);
  candidates.emplace(Monomial{}, std::make_pair(Exponents{}, std::size_t(-1)));
  while (!candidates.empty()) {
    auto [m, origin] = *candidates.begin();
    candidates.erase(candidates.begin());
    if (std::any_of(lms.begin(), lms.end(), [&](const Monomial& l) { return monomial_divides(l, m); })) continue;
    RVector v = origin.second == std::size_t(-1) ? r.start() : r.apply_generator(origin.second, vectors.at(origin.first));
    auto beta = echelon.insert(v);
    if (beta) {
      std::vector<OrePolynomial::Term> terms{{m, one}};
      for (std::size_t s = 0; s < beta->size(); ++s)
        if (!(*beta)[s].is_zero()) terms.push_back({staircase[s], -(*beta)[s]});
      elements.push_back(OrePolynomial::from_terms(alg, std::move(terms)));
      lms.push_back(m);
      continue;
    }
    staircase.push_back(m);
    vectors.emplace(m.exps, std::move(v));
    for (std::size_t g = 0; g < alg->generators().size(); ++g) {
      Monomial n = m;
      ++n.exps.e[alg->generator_slot(g)];
      candidates.emplace(n, std::make_pair(m.exps, g));
    }
  }
  return GroebnerBasis(alg, order, std::move(elements));
}

Representation minimize(const Representation& r) { return Representation::from_gb(fglm(r)); }

Representation plus(const Representation& a, const Representation& b) {
  if (!same_algebra(a.algebra(), b.algebra())) throw MathError("closure operands live in different algebras");
  const auto& ctx = a.algebra()->field();
  std::size_t n = a.dim(), m = b.dim();
  RVector start = a.start();
  start.insert(start.end(), b.start().begin(), b.start().end());
  std::vector<RMatrix> action;
  for (std::size_t g = 0; g < a.algebra()->generators().size(); ++g) {
    RMatrix mat(n + m, zero_vector(ctx, n + m));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mat[i][j] = a.action(g)[i][j];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) mat[n + i][n + j] = b.action(g)[i][j];
    action.push_back(std::move(mat));
  }
  return Representation(a.algebra(), std::move(start), std::move(action));
}

Representation times(const Representation& a, const Representation& b) {
  if (!same_algebra(a.algebra(), b.algebra())) throw MathError("closure operands live in different algebras");
  const auto& alg = *a.algebra();
  const auto& ctx = alg.field();
  std::size_t n = a.dim(), m = b.dim();
  RVector start = zero_vector(ctx, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!a.start()[i].is_zero() && !b.start()[j].is_zero()) start[i * m + j] = a.start()[i] * b.start()[j];
  std::vector<RMatrix> action;
  for (std::size_t g = 0; g < alg.generators().size(); ++g) {
    const auto& A = a.action(g);
    const auto& B = b.action(g);
    RMatrix mat(n * m, zero_vector(ctx, n * m));
    bool derivative = alg.generators()[g].kind == GeneratorKind::derivative;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        auto& row = mat[i * m + j];
        if (derivative) {
          // D(e_i x f_j) = D e_i x f_j + e_i x D f_j
          for (std::size_t k = 0; k < n; ++k)
            if (!A[i][k].is_zero()) row[k * m + j] += A[i][k];
          for (std::size_t l = 0; l < m; ++l)
            if (!B[j][l].is_zero()) row[i * m + l] += B[j][l];
        } else {
          for (std::size_t k = 0; k < n; ++k) {
            if (A[i][k].is_zero()) continue;
            for (std::size_t l = 0; l < m; ++l)
              if (!B[j][l].is_zero()) row[k * m + l] = A[i][k] * B[j][l];
          }
        }
      }
    action.push_back(std::move(mat));
  }
  return Representation(a.algebra(), std::move(start), std::move(action));
}

Representation apply_operator(const OrePolynomial& q, const Representation& r) {
  RVector start = r.apply(q, r.start());
  std::vector<RMatrix> action;
  for (std::size_t g = 0; g < r.algebra()->generators().size(); ++g) action.push_back(r.action(g));
  return Representation(r.algebra(), std::move(start), std::move(action));
}

Representation scale(const Representation& r, const RationalFunction& c) {
  RationalFunction e = c.embed(r.algebra()->field());
  RVector start = r.start();
  for (auto& s : start) s *= e;
  std::vector<RMatrix> action;
  for (std::size_t g = 0; g < r.algebra()->generators().size(); ++g) action.push_back(r.action(g));
  return Representation(r.algebra(), std::move(start), std::move(action));
}

RationalFunction compose(const RationalFunction& c, const std::vector<RationalFunction>& images,
                         const ContextPtr& target) {
  const auto& src = c.context();
  // Pure renaming keeps the computation on polynomials.
  std::vector<std::size_t> rename(src->size(), std::size_t(-1));
  bool renaming = true;
  std::uint32_t support = c.support_mask();
  for (std::size_t i = 0; i < src->size(); ++i) {
    if (!(support >> i & 1u)) continue;
    const auto& im = images[i];
    if (im.is_polynomial() && im.num().size() == 1 && im.num().leading_coeff() == 1 &&
        im.num().leading_term().exponents.degree() == 1) {
      const auto& e = im.num().leading_term().exponents;
      for (std::size_t j = 0; j < target->size(); ++j)
        if (e.e[j]) rename[i] = j;
    } else {
      renaming = false;
      break;
    }
  }
  auto map_poly = [&](const Polynomial& p) -> RationalFunction {
    if (renaming) {
      std::vector<Polynomial::Term> terms;
      for (const auto& t : p.terms()) {
        Exponents e;
        for (std::size_t i = 0; i < src->size(); ++i)
          if (t.exponents.e[i]) e.e[rename[i]] = static_cast<std::uint16_t>(e.e[rename[i]] + t.exponents.e[i]);
        terms.push_back({e, t.coeff});
      }
      return RationalFunction(Polynomial::from_terms(target, std::move(terms)));
    }
    std::map<std::pair<std::size_t, unsigned>, RationalFunction> powers;
    auto power = [&](std::size_t i, unsigned k) -> const RationalFunction& {
      auto it = powers.find({i, k});
      if (it != powers.end()) return it->second;
      return powers.emplace(std::make_pair(i, k), images[i].pow(int(k))).first->second;
    };
    bool polynomial_images = true;
    for (std::size_t i = 0; i < src->size(); ++i)
      if (p.support_mask() >> i & 1u) polynomial_images = polynomial_images && images[i].is_polynomial();
    if (polynomial_images) {
      Polynomial acc(target);
      for (const auto& t : p.terms()) {
        Polynomial term(target, t.coeff);
        for (std::size_t i = 0; i < src->size(); ++i)
          if (t.exponents.e[i]) term *= power(i, t.exponents.e[i]).num();
        acc += term;
      }
      return RationalFunction(acc);
    }
    RationalFunction acc(target);
    for (const auto& t : p.terms()) {
      RationalFunction term(target, t.coeff);
      for (std::size_t i = 0; i < src->size(); ++i)
        if (t.exponents.e[i]) term *= power(i, t.exponents.e[i]);
      acc += term;
    }
    return acc;
  };
  if (c.is_zero()) return RationalFunction(target);
  RationalFunction num = map_poly(c.num());
  if (c.den().is_one()) return num;
  return num / map_poly(c.den());
}

Representation substitute(const Representation& r, const AlgebraPtr& target,
                          const std::map<std::string, RationalFunction>& images_by_name) {
  require_standard(*target);
  const auto& src = *r.algebra();
  const auto& sctx = src.field();
  const auto& tctx = target->field();
  std::vector<RationalFunction> images;
  for (std::size_t i = 0; i < sctx->size(); ++i) {
    const auto& name = sctx->name(i);
    auto it = images_by_name.find(name);
    if (it != images_by_name.end()) {
      images.push_back(it->second.embed(tctx));
      continue;
    }
    auto j = tctx->index_of(name);
    if (!j) throw MathError("variable " + name + " has no image in " + target->declaration());
    images.push_back(RationalFunction::variable(tctx, *j));
  }
  auto phi = [&](const RVector& v) { return map_vector(v, images, tctx); };
  auto source_generator = [&](std::size_t u, GeneratorKind kind, const Generator& tgen) {
    auto g = src.find_generator(sctx->name(u));
    if (!g || src.generators()[*g].kind != kind)
      throw NotDFiniteError("function is not D-finite with respect to " + tgen.name() + " (argument " +
                            sctx->name(u) + ")");
    return *g;
  };

  std::size_t n = r.dim();
  std::vector<RMatrix> mapped(src.generators().size());
  auto mapped_action = [&](std::size_t g) -> const RMatrix& {
    if (mapped[g].empty() && n) {
      for (const auto& row : r.action(g)) mapped[g].push_back(phi(row));
    }
    return mapped[g];
  };

  std::vector<RMatrix> action;
  for (std::size_t t = 0; t < target->generators().size(); ++t) {
    const auto& tgen = target->generators()[t];
    std::size_t tv = *target->field_index(t);
    RMatrix mat(n, zero_vector(tctx, n));
    switch (tgen.kind) {
      case GeneratorKind::derivative: {
        for (std::size_t u = 0; u < sctx->size(); ++u) {
          RationalFunction d = images[u].derivative(tv);
          if (d.is_zero()) continue;
          std::size_t g = source_generator(u, GeneratorKind::derivative, tgen);
          const auto& m = mapped_action(g);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (!m[i][j].is_zero()) mat[i][j] += d * m[i][j];
        }
        break;
      }
      case GeneratorKind::shift:
      case GeneratorKind::qshift: {
        std::vector<std::pair<std::size_t, int>> steps;
        for (std::size_t u = 0; u < sctx->size(); ++u) {
          int k = 0;
          if (tgen.kind == GeneratorKind::shift) {
            RationalFunction d = images[u].shift(tv, 1) - images[u];
            if (d.is_zero()) continue;
            if (!d.is_constant() || d.constant_value().get_den() != 1)
              throw MathError("argument " + sctx->name(u) + " does not move by an integer under " + tgen.name());
            source_generator(u, GeneratorKind::shift, tgen);
            k = static_cast<int>(d.constant_value().get_num().get_si());
          } else {
            RationalFunction q = RationalFunction::variable(tctx, *tctx->index_of(tgen.q));
            RationalFunction ratio = images[u].scale_variable(tv, q) / images[u];
            if (ratio.is_one()) continue;
            std::size_t g = source_generator(u, GeneratorKind::qshift, tgen);
            if (!(images[*src.q_index(g)] == q))
              throw MathError("q-shift bases of " + tgen.name() + " and the argument " + sctx->name(u) + " differ");
            // ratio must be q^k
            RationalFunction probe = ratio;
            while (!probe.is_one() && std::abs(k) <= 64) {
              if (probe.num().depends_on(*tctx->index_of(tgen.q))) {
                probe = probe / q;
                ++k;
              } else {
                probe = probe * q;
                --k;
              }
            }
            if (!probe.is_one())
              throw MathError("argument " + sctx->name(u) + " is not moved by a power of " + tgen.q);
          }
          steps.emplace_back(*src.find_generator(sctx->name(u)), k);
        }
        for (std::size_t i = 0; i < n; ++i) {
          RVector v = unit_vector(sctx, n, i);
          for (auto [g, k] : steps) {
            for (int s = 0; s < k; ++s) v = r.apply_generator(g, v);
            for (int s = 0; s > k; --s) v = r.apply_inverse(g, v);
          }
          mat[i] = phi(v);
        }
        break;
      }
    }
    action.push_back(std::move(mat));
  }
  return Representation(target, phi(r.start()), std::move(action));
}

GroebnerBasis dfinite_plus(const GroebnerBasis& i, const GroebnerBasis& j) {
  return fglm(plus(Representation::from_gb(i), Representation::from_gb(j)), i.order());
}

GroebnerBasis dfinite_times(const GroebnerBasis& i, const GroebnerBasis& j) {
  return fglm(times(Representation::from_gb(i), Representation::from_gb(j)), i.order());
}

GroebnerBasis apply_operator(const OrePolynomial& q, const GroebnerBasis& i) {
  return fglm(apply_operator(q, Representation::from_gb(i)), i.order());
}

GroebnerBasis substitute_algebraic(const GroebnerBasis& i, const AlgebraPtr& target, const std::string& var,
                                   const RationalFunction& a) {
  RationalFunction e = a.embed(target->field());
  if (e.is_constant()) throw MathError("substituting a constant for " + var + " is degenerate");
  for (std::size_t v = 0; v < target->field()->size(); ++v) {
    if (!e.depends_on(v)) continue;
    auto g = target->find_generator(target->field()->name(v));
    if (g && target->generators()[*g].kind != GeneratorKind::derivative)
      throw MathError("algebraic substitution needs continuous variables, " + target->field()->name(v) + " is not");
  }
  auto src = i.algebra()->find_generator(var);
  if (!src || i.algebra()->generators()[*src].kind != GeneratorKind::derivative)
    throw MathError(var + " is not a continuous variable of " + i.algebra()->declaration());
  return fglm(substitute(Representation::from_gb(i), target, {{var, e}}));
}

GroebnerBasis substitute_integer_linear(const GroebnerBasis& i, const AlgebraPtr& target, const std::string& var,
                                        const RationalFunction& a) {
  RationalFunction e = a.embed(target->field());
  if (!e.is_polynomial() || e.num().total_degree() > 1)
    throw MathError("substitution for " + var + " must be linear with integer coefficients");
  for (const auto& t : e.num().terms())
    if (t.coeff.get_den() != 1) throw MathError("substitution for " + var + " must have integer coefficients");
  for (std::size_t v = 0; v < target->field()->size(); ++v) {
    if (!e.depends_on(v)) continue;
    auto g = target->find_generator(target->field()->name(v));
    if (!g || target->generators()[*g].kind != GeneratorKind::shift)
      throw MathError("integer-linear substitution needs discrete variables, " + target->field()->name(v) + " is not");
  }
  auto src = i.algebra()->find_generator(var);
  if (!src || i.algebra()->generators()[*src].kind != GeneratorKind::shift)
    throw MathError(var + " is not a discrete variable of " + i.algebra()->declaration());
  return fglm(substitute(Representation::from_gb(i), target, {{var, e}}));
}

}  // namespace holo
