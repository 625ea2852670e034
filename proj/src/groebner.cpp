#include "holo/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "holo/kernels.hpp"

namespace holo {
namespace {

struct OrderGreater {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
};

using Work = std::map<Monomial, RationalFunction, OrderGreater>;

// Pairs reduced together; fixed so that serial and parallel runs follow the same path.
constexpr std::size_t kBatchSize = 8;

void subtract_scaled(Work& w, const RationalFunction& f, const OrePolynomial& h) {
  for (const auto& t : h.terms()) {
    RationalFunction d = f * t.coeff;
    auto [it, inserted] = w.try_emplace(t.monomial, -d);
    if (!inserted) {
      it->second -= d;
      if (it->second.is_zero()) w.erase(it);
    }
  }
}

Monomial exponent_difference(const Monomial& big, const Monomial& small) {
  return Monomial{big.exps - small.exps, 0};
}

struct Reducer {
  const std::vector<OrePolynomial>& basis;
  std::vector<Monomial> lms;
  const MonomialOrder& order;

  Reducer(const std::vector<OrePolynomial>& b, const MonomialOrder& o) : basis(b), order(o) {
    for (const auto& g : basis) lms.push_back(g.leading_term(order).monomial);
  }

  std::optional<std::size_t> find_divisor(const Monomial& m) const {
    for (std::size_t k = 0; k < lms.size(); ++k)
      if (monomial_divides(lms[k], m)) return k;
    return std::nullopt;
  }

  // One reduction step of the term (m, c) by basis[k]; returns the factor f and
  // the multiplied element h such that the step is w -= f * h.
  std::pair<RationalFunction, OrePolynomial> step(const Monomial& m, const RationalFunction& c, std::size_t k) const {
    Monomial mu = exponent_difference(m, lms[k]);
    OrePolynomial h = basis[k].mul_term_left(RationalFunction(c.context(), 1), mu);
    RationalFunction lc = h.coefficient(m);
    return {c / lc, std::move(h)};
  }
};

OrePolynomial from_work(const AlgebraPtr& alg, std::vector<OrePolynomial::Term> rem) {
  return OrePolynomial::from_terms(alg, std::move(rem));
}

}  // namespace

bool monomial_divides(const Monomial& a, const Monomial& b) {
  return a.position == b.position && a.exps.divides(b.exps);
}

MonomialOrder default_order(const OreAlgebra&) { return MonomialOrder::deglex(); }

GroebnerBasis::GroebnerBasis(AlgebraPtr algebra, MonomialOrder order, std::vector<OrePolynomial> elements)
    : algebra_(std::move(algebra)), order_(std::move(order)), elements_(std::move(elements)) {}

bool GroebnerBasis::is_unit_ideal() const {
  for (const auto& e : elements_)
    if (e.is_scalar() && !e.is_zero()) return true;
  return false;
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& e : elements_) out.push_back(e.leading_term(order_).monomial);
  return out;
}

std::string GroebnerBasis::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) s += (i ? ", " : "") + elements_[i].to_string();
  return s + "}";
}

OrePolynomial reduce(const OrePolynomial& p, const std::vector<OrePolynomial>& basis, const MonomialOrder& order,
                     ReductionStrategy strategy) {
  if (p.is_zero() || basis.empty()) return p;
  Reducer red(basis, order);
  Work w(OrderGreater{&order});
  for (const auto& t : p.terms()) w.emplace(t.monomial, t.coeff);
  std::vector<OrePolynomial::Term> rem;
  if (strategy == ReductionStrategy::largest_first) {
    while (!w.empty()) {
      auto it = w.begin();
      auto k = red.find_divisor(it->first);
      if (!k) {
        rem.push_back({it->first, it->second});
        w.erase(it);
        continue;
      }
      auto [f, h] = red.step(it->first, it->second, *k);
      subtract_scaled(w, f, h);
    }
    return from_work(p.algebra(), std::move(rem));
  }
  // Smallest reducible term first; terms are never moved to the remainder
  // early, so this path visits the terms in a genuinely different order.
  for (;;) {
    auto found = w.end();
    std::size_t k = 0;
    for (auto it = w.end(); it != w.begin();) {
      --it;
      if (auto d = red.find_divisor(it->first)) {
        found = it;
        k = *d;
        break;
      }
    }
    if (found == w.end()) break;
    auto [f, h] = red.step(found->first, found->second, k);
    subtract_scaled(w, f, h);
  }
  for (auto& [m, c] : w) rem.push_back({m, c});
  return from_work(p.algebra(), std::move(rem));
}

OrePolynomial reduce(const OrePolynomial& p, const GroebnerBasis& g, ReductionStrategy strategy) {
  return reduce(p.convert(g.algebra()), g.elements(), g.order(), strategy);
}

TrackedReduction reduce_tracked(const OrePolynomial& p, const std::vector<OrePolynomial>& basis,
                                const MonomialOrder& order) {
  TrackedReduction out{OrePolynomial(p.algebra()), std::vector<OrePolynomial>(basis.size(), OrePolynomial(p.algebra()))};
  if (p.is_zero() || basis.empty()) {
    out.remainder = p;
    return out;
  }
  Reducer red(basis, order);
  Work w(OrderGreater{&order});
  for (const auto& t : p.terms()) w.emplace(t.monomial, t.coeff);
  std::vector<OrePolynomial::Term> rem;
  std::vector<std::vector<OrePolynomial::Term>> q(basis.size());
  while (!w.empty()) {
    auto it = w.begin();
    auto k = red.find_divisor(it->first);
    if (!k) {
      rem.push_back({it->first, it->second});
      w.erase(it);
      continue;
    }
    Monomial mu = exponent_difference(it->first, red.lms[*k]);
    auto [f, h] = red.step(it->first, it->second, *k);
    q[*k].push_back({mu, f});
    subtract_scaled(w, f, h);
  }
  out.remainder = from_work(p.algebra(), std::move(rem));
  for (std::size_t k = 0; k < basis.size(); ++k) out.quotients[k] = OrePolynomial::from_terms(p.algebra(), q[k]);
  return out;
}

namespace {

struct Element {
  OrePolynomial poly;
  Monomial lm;
  std::vector<OrePolynomial> cof;
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Engine {
 public:
  Engine(const std::vector<OrePolynomial>& gens, const MonomialOrder& order, const GroebnerOptions& opts, bool track)
      : order_(order), opts_(opts), track_(track), alg_(gens.at(0).algebra()), gens_count_(gens.size()) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (gens[g].is_zero()) continue;
      std::vector<OrePolynomial> cof;
      if (track_) {
        cof.assign(gens.size(), OrePolynomial(alg_));
        cof[g] = OrePolynomial(alg_, RationalFunction(alg_->field(), 1));
      }
      insert(gens[g], std::move(cof));
    }
  }

  void run() {
    while (!pairs_.empty() && !unit_) {
      std::sort(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        int c = order_.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
      });
      std::vector<Pair> batch;
      while (!pairs_.empty() && batch.size() < kBatchSize) {
        Pair p = pairs_.front();
        pairs_.erase(pairs_.begin());
        done_.insert({p.i, p.j});
        if (chain_criterion(p)) continue;
        batch.push_back(p);
      }
      if (batch.empty()) continue;
      reductions_ += batch.size();
      if (reductions_ > opts_.max_pair_reductions)
        throw CapExceededError("Groebner basis computation exceeded " + std::to_string(opts_.max_pair_reductions) +
                               " pair reductions");
      std::vector<Element> results(batch.size());
      std::vector<OrePolynomial> current;
      for (const auto& e : elems_) current.push_back(e.poly);
      kernels::for_each_index(
          batch.size(), [&](std::size_t b) { results[b] = reduce_element(spoly(batch[b]), current); }, opts_.exec);
      for (auto& r : results) {
        if (r.poly.is_zero()) continue;
        // Elements added earlier in this batch may reduce r further.
        if (elems_.size() > current.size()) {
          std::vector<OrePolynomial> now;
          for (const auto& e : elems_) now.push_back(e.poly);
          r = reduce_element(std::move(r), now);
          if (r.poly.is_zero()) continue;
        }
        insert(r.poly, std::move(r.cof));
        if (unit_) break;
      }
    }
  }

  ExtendedBasis finish() {
    std::vector<std::size_t> idx(elems_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      int c = order_.compare(elems_[a].lm, elems_[b].lm);
      return c != 0 ? c < 0 : a < b;
    });
    std::vector<std::size_t> kept;
    for (auto i : idx) {
      bool redundant = false;
      for (auto k : kept)
        if (monomial_divides(elems_[k].lm, elems_[i].lm)) {
          redundant = true;
          break;
        }
      if (!redundant) kept.push_back(i);
    }
    std::vector<Element> out(kept.size());
    kernels::for_each_index(
        kept.size(),
        [&](std::size_t a) {
          std::vector<OrePolynomial> others;
          std::vector<std::size_t> other_idx;
          for (std::size_t b = 0; b < kept.size(); ++b)
            if (b != a) {
              others.push_back(elems_[kept[b]].poly);
              other_idx.push_back(kept[b]);
            }
          Element e = elems_[kept[a]];
          if (track_) {
            auto tr = reduce_tracked(e.poly, others, order_);
            for (std::size_t b = 0; b < others.size(); ++b)
              if (!tr.quotients[b].is_zero())
                for (std::size_t g = 0; g < gens_count_; ++g)
                  e.cof[g] -= tr.quotients[b] * elems_[other_idx[b]].cof[g];
            e.poly = std::move(tr.remainder);
          } else {
            e.poly = reduce(e.poly, others, order_);
          }
          normalize(e);
          out[a] = std::move(e);
        },
        opts_.exec);
    ExtendedBasis result{GroebnerBasis(alg_, order_, {}), {}};
    std::vector<OrePolynomial> polys;
    for (auto& e : out) {
      polys.push_back(e.poly);
      result.cofactors.push_back(std::move(e.cof));
    }
    result.basis = GroebnerBasis(alg_, order_, std::move(polys));
    return result;
  }

 private:
  void normalize(Element& e) const {
    const auto& lc = e.poly.leading_term(order_).coeff;
    e.lm = e.poly.leading_term(order_).monomial;
    if (lc.is_one()) return;
    RationalFunction inv = lc.inverse();
    e.poly = e.poly.scale(inv);
    for (auto& c : e.cof) c = c.scale(inv);
  }

  void insert(const OrePolynomial& p, std::vector<OrePolynomial> cof) {
    Element e{p, Monomial{}, std::move(cof)};
    normalize(e);
    std::size_t n = elems_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (elems_[i].lm.position != e.lm.position) continue;
      Monomial l{exponent_lcm(elems_[i].lm.exps, e.lm.exps), e.lm.position};
      pairs_.push_back({i, n, l});
    }
    if (e.lm.exps.is_zero() && e.lm.position == 0 && e.poly.max_position() == 0) unit_ = true;
    elems_.push_back(std::move(e));
  }

  bool chain_criterion(const Pair& p) const {
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      if (k == p.i || k == p.j) continue;
      if (!monomial_divides(elems_[k].lm, p.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (done_.count(key(p.i, k)) && done_.count(key(p.j, k))) return true;
    }
    return false;
  }

  Element spoly(const Pair& p) const {
    const auto& a = elems_[p.i];
    const auto& b = elems_[p.j];
    RationalFunction one(alg_->field(), 1);
    OrePolynomial ha = a.poly.mul_term_left(one, exponent_difference(p.lcm, a.lm));
    OrePolynomial hb = b.poly.mul_term_left(one, exponent_difference(p.lcm, b.lm));
    RationalFunction fa = ha.coefficient(p.lcm).inverse(), fb = hb.coefficient(p.lcm).inverse();
    Element s{ha.scale(fa) - hb.scale(fb), Monomial{}, {}};
    if (track_) {
      OrePolynomial ma = OrePolynomial::monomial(alg_, exponent_difference(p.lcm, a.lm), fa);
      OrePolynomial mb = OrePolynomial::monomial(alg_, exponent_difference(p.lcm, b.lm), fb);
      s.cof.resize(gens_count_, OrePolynomial(alg_));
      for (std::size_t g = 0; g < gens_count_; ++g) s.cof[g] = ma * a.cof[g] - mb * b.cof[g];
    }
    return s;
  }

  Element reduce_element(Element e, const std::vector<OrePolynomial>& basis) const {
    if (!track_) {
      e.poly = reduce(e.poly, basis, order_);
      return e;
    }
    auto tr = reduce_tracked(e.poly, basis, order_);
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (!tr.quotients[k].is_zero())
        for (std::size_t g = 0; g < gens_count_; ++g) e.cof[g] -= tr.quotients[k] * elems_[k].cof[g];
    e.poly = std::move(tr.remainder);
    return e;
  }

  const MonomialOrder& order_;
  const GroebnerOptions& opts_;
  bool track_;
  AlgebraPtr alg_;
  std::size_t gens_count_;
  std::vector<Element> elems_;
  std::vector<Pair> pairs_;
  std::set<std::pair<std::size_t, std::size_t>> done_;
  std::size_t reductions_ = 0;
  bool unit_ = false;
};

bool all_zero(const std::vector<OrePolynomial>& gens) {
  return std::all_of(gens.begin(), gens.end(), [](const OrePolynomial& p) { return p.is_zero(); });
}

}  // namespace

GroebnerBasis buchberger(const std::vector<OrePolynomial>& generators, const MonomialOrder& order,
                         const GroebnerOptions& options) {
  if (generators.empty()) throw MathError("Groebner basis of an empty generator list");
  if (all_zero(generators)) return GroebnerBasis(generators[0].algebra(), order, {});
  Engine e(generators, order, options, false);
  e.run();
  return e.finish().basis;
}

ExtendedBasis buchberger_extended(const std::vector<OrePolynomial>& generators, const MonomialOrder& order,
                                  const GroebnerOptions& options) {
  if (generators.empty()) throw MathError("Groebner basis of an empty generator list");
  if (all_zero(generators)) return ExtendedBasis{GroebnerBasis(generators[0].algebra(), order, {}), {}};
  Engine e(generators, order, options, true);
  e.run();
  return e.finish();
}

std::vector<OrePolynomial> eliminate(const std::vector<OrePolynomial>& generators, std::uint32_t slot_mask,
                                     const GroebnerOptions& options) {
  GroebnerBasis g = buchberger(generators, MonomialOrder::block(slot_mask), options);
  std::vector<OrePolynomial> out;
  for (const auto& e : g.elements())
    if (!(e.slot_mask() & slot_mask)) out.push_back(e);
  return out;
}

GroebnerBasis module_gb(const std::vector<OrePolynomial>& rows, const MonomialOrder& inner,
                        const GroebnerOptions& options) {
  return buchberger(rows, inner.pot(), options);
}

}  // namespace holo
