#include "holo/annihilator.hpp"

#include <algorithm>

#include "holo/error.hpp"

namespace holo {

void KnowledgeBase::define(UserAtom atom) {
  if (FunctionTable::builtin().arity(atom.name)) throw MathError("cannot redefine built-in function " + atom.name);
  if (atom.system.empty()) throw MathError("atom " + atom.name + " needs a defining system");
  const auto& field = atom.system[0].algebra()->field();
  for (const auto& p : atom.parameters)
    if (!field->index_of(p)) throw MathError("parameter " + p + " is not a variable of the defining system");
  user_[atom.name] = std::move(atom);
}

const UserAtom* KnowledgeBase::find(const std::string& name) const {
  auto it = user_.find(name);
  return it == user_.end() ? nullptr : &it->second;
}

FunctionTable KnowledgeBase::functions() const {
  FunctionTable t = FunctionTable::builtin();
  for (const auto& [name, atom] : user_) t.add(name, atom.parameters.size());
  return t;
}

GroebnerBasis KnowledgeBase::family_system(const std::string& name) {
  std::vector<std::string> texts;
  AlgebraPtr alg;
  if (name == "chebyshevT") {
    alg = OreAlgebra::create(parse_generators("S[n], Der[z]"));
    texts = {"n*S[n] + (1-z^2)*Der[z] - n*z", "(z^2-1)*Der[z]^2 + z*Der[z] - n^2"};
  } else if (name == "legendreP") {
    alg = OreAlgebra::create(parse_generators("S[n], Der[z]"));
    texts = {"(n+1)*S[n] + (1-z^2)*Der[z] - (n+1)*z", "(1-z^2)*Der[z]^2 - 2*z*Der[z] + n^2 + n"};
  } else if (name == "laguerreL") {
    alg = OreAlgebra::create(parse_generators("S[n], S[a], Der[z]"));
    texts = {"S[a] + Der[z] - 1", "(n+1)*S[n] - z*Der[z] + (-a-n+z-1)", "z*Der[z]^2 + (a-z+1)*Der[z] + n"};
  } else {
    throw MathError("no defining system for " + name);
  }
  std::vector<OrePolynomial> gens;
  for (const auto& t : texts) gens.push_back(parse_operator(t, alg));
  return buchberger(gens);
}

namespace {

std::set<std::string> exponent_names(const std::vector<Generator>& gens) {
  std::set<std::string> out;
  for (const auto& g : gens)
    if (g.kind == GeneratorKind::qshift) out.insert(g.exponent);
  return out;
}

// prod_{i in [0, t)} f(i), or 1/prod_{i in [t, 0)} f(i) for negative t.
template <class F>
RationalFunction signed_product(const ContextPtr& ctx, long t, F f) {
  RationalFunction acc(ctx, 1);
  if (t >= 0) {
    for (long i = 0; i < t; ++i) acc *= f(i);
  } else {
    for (long i = t; i < 0; ++i) acc /= f(i);
  }
  return acc;
}

std::optional<long> integer_constant(const RationalFunction& r) {
  if (!r.is_constant()) return std::nullopt;
  mpq_class v = r.constant_value();
  if (v.get_den() != 1 || !v.get_num().fits_slong_p()) return std::nullopt;
  return v.get_num().get_si();
}

class Builder {
 public:
  Builder(AlgebraPtr alg, const KnowledgeBase& kb) : alg_(std::move(alg)), kb_(kb) {
    const auto& A = *alg_;
    if (!A.elimination().empty()) throw MathError("annihilators are built in algebras without elimination slots");
    field_ = A.field();
    std::vector<std::string> names = field_->names();
    for (std::size_t g = 0; g < A.generators().size(); ++g) {
      const auto& gen = A.generators()[g];
      if (gen.kind != GeneratorKind::qshift) continue;
      if (field_->index_of(gen.exponent)) throw MathError("exponent name " + gen.exponent + " clashes with a variable");
      if (!exponent_gen_.count(gen.exponent)) names.push_back(gen.exponent);
      exponent_gen_[gen.exponent] = g;
    }
    ext_ = make_context(names);
  }

  Representation build(const ExprPtr& e) {
    if (auto r = as_rational(e)) return from_rational(*r);
    switch (e->kind) {
      case ExprKind::add:
        return reduce_dim(plus(build(e->args[0]), build(e->args[1])));
      case ExprKind::sub:
        return reduce_dim(plus(build(e->args[0]), scale(build(e->args[1]), one(-1))));
      case ExprKind::neg:
        return scale(build(e->args[0]), one(-1));
      case ExprKind::mul: {
        auto a = as_rational(e->args[0]);
        auto b = as_rational(e->args[1]);
        if (a) return scale(build(e->args[1]), *a);
        if (b) return scale(build(e->args[0]), *b);
        return reduce_dim(times(build(e->args[0]), build(e->args[1])));
      }
      case ExprKind::div: {
        if (auto b = as_rational(e->args[1])) {
          if (b->is_zero()) fail(e, "division by zero");
          return scale(build(e->args[0]), b->inverse());
        }
        return reduce_dim(times(build(e->args[0]), invert(e->args[1], build(e->args[1]))));
      }
      case ExprKind::pow:
        return power_node(e);
      case ExprKind::call:
        return call(e);
      case ExprKind::symbol:
        fail(e, "exponent variable " + e->name + " used outside an exponent");
      case ExprKind::number:
        break;
    }
    fail(e, "unsupported expression");
  }

 private:
  [[noreturn]] static void fail(const ExprPtr& e, const std::string& msg) {
    throw MathError(msg + (e->line ? " (at " + std::to_string(e->line) + ":" + std::to_string(e->column) + ")" : ""));
  }
  [[noreturn]] static void not_dfinite(const ExprPtr& e, const std::string& msg) {
    throw NotDFiniteError(msg + (e->line ? " (at " + std::to_string(e->line) + ":" + std::to_string(e->column) + ")" : ""));
  }

  RationalFunction one(long v = 1) const { return RationalFunction(field_, v); }
  const OreAlgebra& A() const { return *alg_; }
  std::size_t ngens() const { return A().generators().size(); }

  Representation reduce_dim(Representation r) const { return r.dim() > 1 ? minimize(r) : r; }

  // Rational function over the field, or nullopt if e involves atoms or symbolic exponents.
  std::optional<RationalFunction> as_rational(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::number:
        return RationalFunction(field_, e->value);
      case ExprKind::symbol: {
        if (auto i = field_->index_of(e->name)) return RationalFunction::variable(field_, *i);
        if (exponent_gen_.count(e->name)) return std::nullopt;
        fail(e, "symbol " + e->name + " is not a variable of " + A().declaration());
      }
      case ExprKind::neg: {
        auto a = as_rational(e->args[0]);
        if (!a) return std::nullopt;
        return -*a;
      }
      case ExprKind::add:
      case ExprKind::sub:
      case ExprKind::mul:
      case ExprKind::div: {
        auto a = as_rational(e->args[0]);
        if (!a) return std::nullopt;
        auto b = as_rational(e->args[1]);
        if (!b) return std::nullopt;
        if (e->kind == ExprKind::add) return *a + *b;
        if (e->kind == ExprKind::sub) return *a - *b;
        if (e->kind == ExprKind::mul) return *a * *b;
        if (b->is_zero()) fail(e, "division by zero");
        return *a / *b;
      }
      case ExprKind::pow: {
        auto ex = as_exponent(e->args[1]);
        if (!ex) return std::nullopt;
        if (auto k = integer_constant(*ex)) {
          auto b = as_rational(e->args[0]);
          if (!b) return std::nullopt;
          if (b->is_zero() && *k < 0) fail(e, "division by zero");
          return b->pow(int(*k));
        }
        const auto& base = e->args[0];
        if (base->kind == ExprKind::symbol) return q_power(base->name, *ex);
        return std::nullopt;
      }
      case ExprKind::call:
        return std::nullopt;
    }
    return std::nullopt;
  }

  // Exponent expression over field variables and q-exponent names.
  std::optional<RationalFunction> as_exponent(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::number:
        return RationalFunction(ext_, e->value);
      case ExprKind::symbol: {
        if (auto i = ext_->index_of(e->name)) return RationalFunction::variable(ext_, *i);
        fail(e, "symbol " + e->name + " is not a variable of " + A().declaration());
      }
      case ExprKind::neg: {
        auto a = as_exponent(e->args[0]);
        if (!a) return std::nullopt;
        return -*a;
      }
      case ExprKind::add:
      case ExprKind::sub:
      case ExprKind::mul:
      case ExprKind::div: {
        auto a = as_exponent(e->args[0]);
        auto b = as_exponent(e->args[1]);
        if (!a || !b) return std::nullopt;
        if (e->kind == ExprKind::add) return *a + *b;
        if (e->kind == ExprKind::sub) return *a - *b;
        if (e->kind == ExprKind::mul) return *a * *b;
        if (b->is_zero()) fail(e, "division by zero");
        return *a / *b;
      }
      case ExprKind::pow: {
        auto a = as_exponent(e->args[0]);
        auto b = as_exponent(e->args[1]);
        if (!a || !b) return std::nullopt;
        auto k = integer_constant(*b);
        if (!k) return std::nullopt;
        return a->pow(int(*k));
      }
      case ExprKind::call:
        return std::nullopt;
    }
    return std::nullopt;
  }

  // base^ex as a field element when base is the q of q-shifts and ex is
  // integer-linear in their exponent names.
  std::optional<RationalFunction> q_power(const std::string& base, const RationalFunction& ex) {
    auto qi = field_->index_of(base);
    if (!qi || !ex.is_polynomial() || ex.num().total_degree() > 1) return std::nullopt;
    RationalFunction acc = one();
    for (const auto& t : ex.num().terms()) {
      if (t.coeff.get_den() != 1 || !t.coeff.get_num().fits_sint_p()) return std::nullopt;
      int c = int(t.coeff.get_num().get_si());
      if (t.exponents.is_zero()) {
        acc *= RationalFunction::variable(field_, *qi).pow(c);
        continue;
      }
      std::size_t var = 0;
      while (!t.exponents.e[var]) ++var;
      auto it = exponent_gen_.find(ext_->name(var));
      if (it == exponent_gen_.end()) return std::nullopt;
      std::size_t g = it->second;
      if (A().generators()[g].q != base) return std::nullopt;
      acc *= RationalFunction::variable(field_, *A().field_index(g)).pow(c);
    }
    return acc;
  }

  RationalFunction to_ext(const RationalFunction& r) const { return r.embed(ext_); }

  // Moves a generator's variable by one step inside an exponent expression.
  RationalFunction step(std::size_t g, const RationalFunction& ex) const {
    const auto& gen = A().generators()[g];
    std::string var = gen.kind == GeneratorKind::qshift ? gen.exponent : gen.variable;
    return ex.shift(*ext_->index_of(var), 1) - ex;
  }

  bool ext_depends(std::size_t g, const RationalFunction& ex) const {
    const auto& gen = A().generators()[g];
    std::string var = gen.kind == GeneratorKind::qshift ? gen.exponent : gen.variable;
    return ex.depends_on(*ext_->index_of(var)) || ex.depends_on(*ext_->index_of(gen.variable));
  }

  // c times the constant function 1.
  Representation from_rational(const RationalFunction& c) {
    if (c.is_zero()) return Representation(alg_, {}, std::vector<RMatrix>(ngens()));
    std::vector<RationalFunction> q;
    for (std::size_t g = 0; g < ngens(); ++g)
      q.push_back(one(A().generators()[g].kind == GeneratorKind::derivative ? 0 : 1));
    return scale(Representation::first_order(alg_, q), c);
  }

  Representation invert(const ExprPtr& e, const Representation& r) {
    if (r.is_zero_function()) fail(e, "division by zero");
    Representation m = reduce_dim(r);
    if (m.dim() != 1) not_dfinite(e, "reciprocal of a function that is not hypergeometric");
    std::vector<RationalFunction> q;
    for (std::size_t g = 0; g < ngens(); ++g) {
      const auto& a = m.action(g)[0][0];
      if (A().generators()[g].kind == GeneratorKind::derivative)
        q.push_back(-a);
      else
        q.push_back(a.inverse());
    }
    return scale(Representation::first_order(alg_, q), m.start()[0].inverse());
  }

  Representation power_node(const ExprPtr& e) {
    auto ex = as_exponent(e->args[1]);
    if (ex) {
      if (auto k = integer_constant(*ex)) {
        Representation base = build(e->args[0]);
        Representation b = *k < 0 ? invert(e->args[0], base) : base;
        Representation acc = from_rational(one());
        for (long i = 0; i < std::abs(*k); ++i) acc = reduce_dim(times(acc, b));
        return acc;
      }
    }
    auto base = as_rational(e->args[0]);
    if (!base) not_dfinite(e, "symbolic power of a non-rational expression");
    if (!ex) not_dfinite(e, "exponent is not a rational expression");
    return power_atom(e, *base, *ex);
  }

  Representation power_atom(const ExprPtr& e, const RationalFunction& base, const RationalFunction& ex) {
    if (base.is_zero()) fail(e, "zero raised to a symbolic power");
    std::vector<RationalFunction> q;
    RationalFunction ex_field(field_);
    bool ex_in_field = !(ex.support_mask() >> field_->size());
    if (ex_in_field) ex_field = ex.embed(field_);
    for (std::size_t g = 0; g < ngens(); ++g) {
      const auto& gen = A().generators()[g];
      std::size_t idx = *A().field_index(g);
      switch (gen.kind) {
        case GeneratorKind::derivative: {
          if (ex.depends_on(*ext_->index_of(gen.variable))) not_dfinite(e, "exponent depends on " + gen.variable);
          if (!base.depends_on(idx)) {
            q.push_back(one(0));
            break;
          }
          if (!ex_in_field) not_dfinite(e, "exponent mixes q-exponents and " + gen.variable);
          q.push_back(ex_field * base.derivative(idx) / base);
          break;
        }
        case GeneratorKind::shift:
        case GeneratorKind::qshift: {
          if (base.depends_on(idx)) not_dfinite(e, "base of a symbolic power depends on " + gen.variable);
          RationalFunction d = step(g, ex);
          if (d.is_zero()) {
            q.push_back(one());
            break;
          }
          if (auto c = integer_constant(d)) {
            q.push_back(base.pow(int(*c)));
            break;
          }
          std::optional<RationalFunction> qp;
          const auto& b = e->args[0];
          if (b->kind == ExprKind::symbol) qp = q_power(b->name, d);
          if (!qp) not_dfinite(e, "power is not hypergeometric in " + gen.variable);
          q.push_back(*qp);
          break;
        }
      }
    }
    return Representation::first_order(alg_, q);
  }

  struct GammaFactor {
    RationalFunction arg;
    int sign;
  };

  Representation gamma_atom(const ExprPtr& e, const std::vector<GammaFactor>& factors) {
    std::vector<RationalFunction> q;
    for (std::size_t g = 0; g < ngens(); ++g) {
      const auto& gen = A().generators()[g];
      std::size_t idx = *A().field_index(g);
      bool depends = std::any_of(factors.begin(), factors.end(), [&](const auto& f) { return f.arg.depends_on(idx); });
      if (gen.kind != GeneratorKind::shift) {
        if (depends) not_dfinite(e, e->name + " is not D-finite with respect to " + gen.name());
        q.push_back(one(gen.kind == GeneratorKind::derivative ? 0 : 1));
        continue;
      }
      RationalFunction acc = one();
      for (const auto& f : factors) {
        RationalFunction d = f.arg.shift(idx, 1) - f.arg;
        auto c = integer_constant(d);
        if (!c) fail(e, "argument of " + e->name + " is not integer-linear in " + gen.variable);
        RationalFunction gq = signed_product(field_, *c, [&](long i) { return f.arg + one(i); });
        acc *= f.sign > 0 ? gq : gq.inverse();
      }
      q.push_back(acc);
    }
    return Representation::first_order(alg_, q);
  }

  RationalFunction rational_arg(const ExprPtr& call, std::size_t i) {
    auto r = as_rational(call->args[i]);
    if (!r) fail(call->args[i], "argument " + std::to_string(i + 1) + " of " + call->name + " must be rational");
    return *r;
  }

  Representation qpochhammer(const ExprPtr& e) {
    RationalFunction x = rational_arg(e, 0);
    RationalFunction b = rational_arg(e, 1);
    auto n = as_exponent(e->args[2]);
    if (!n) fail(e->args[2], "length of qpochhammer must be a rational expression");
    std::vector<RationalFunction> q;
    for (std::size_t g = 0; g < ngens(); ++g) {
      const auto& gen = A().generators()[g];
      std::size_t idx = *A().field_index(g);
      if (gen.kind != GeneratorKind::qshift) {
        if (x.depends_on(idx) || b.depends_on(idx) || ext_depends(g, *n))
          not_dfinite(e, "qpochhammer is not D-finite with respect to " + gen.name());
        q.push_back(one(gen.kind == GeneratorKind::derivative ? 0 : 1));
        continue;
      }
      if (b.depends_on(idx)) not_dfinite(e, "base of qpochhammer depends on " + gen.variable);
      auto c = integer_constant(step(g, *n));
      if (!c) fail(e, "length of qpochhammer is not integer-linear in " + gen.exponent);
      RationalFunction qv = RationalFunction::variable(field_, *A().q_index(g));
      RationalFunction ratio = x.scale_variable(idx, qv) / x;
      long m = 0;
      if (!ratio.is_one()) {
        bool found = false;
        for (long t = 1; t <= 64 && !found; ++t) {
          if (b.pow(int(t)) == ratio) m = t, found = true;
          else if (b.pow(int(-t)) == ratio) m = -t, found = true;
        }
        if (!found) not_dfinite(e, "argument of qpochhammer does not move by a power of its base");
      }
      if (*c + m == 0 && m == 0) {
        q.push_back(one());
        continue;
      }
      // b^n in the field: b must be a power of the q parameter.
      RationalFunction bn = one();
      if (auto k = integer_constant(*n)) {
        bn = b.pow(int(*k));
      } else {
        std::optional<long> bexp;
        for (long t = 1; t <= 64 && !bexp; ++t) {
          if (qv.pow(int(t)) == b) bexp = t;
          else if (qv.pow(int(-t)) == b) bexp = -t;
        }
        std::optional<RationalFunction> p;
        if (bexp) p = q_power(gen.q, *n * RationalFunction(ext_, *bexp));
        if (!p) not_dfinite(e, "base of qpochhammer must be a power of " + gen.q);
        bn = *p;
      }
      RationalFunction upper = signed_product(field_, *c + m, [&](long i) { return one() - x * bn * b.pow(int(i)); });
      RationalFunction lower = signed_product(field_, m, [&](long i) { return one() - x * b.pow(int(i)); });
      q.push_back(upper / lower);
    }
    return Representation::first_order(alg_, q);
  }

  Representation system_atom(const ExprPtr& e, const GroebnerBasis& system, const std::vector<std::string>& params) {
    std::map<std::string, RationalFunction> images;
    for (std::size_t i = 0; i < params.size(); ++i) images.emplace(params[i], rational_arg(e, i));
    const auto& src = system.algebra()->field();
    for (std::size_t i = 0; i < src->size(); ++i)
      if (!images.count(src->name(i)) && !field_->index_of(src->name(i)))
        fail(e, "variable " + src->name(i) + " of " + e->name + " is not bound");
    try {
      return substitute(Representation::from_gb(system), alg_, images);
    } catch (const NotDFiniteError& err) {
      not_dfinite(e, e->name + ": " + err.what());
    }
  }

  Representation call(const ExprPtr& e) {
    const auto& n = e->name;
    if (n == "factorial") return gamma_atom(e, {{rational_arg(e, 0) + one(), 1}});
    if (n == "binomial") {
      RationalFunction a = rational_arg(e, 0), b = rational_arg(e, 1);
      return gamma_atom(e, {{a + one(), 1}, {b + one(), -1}, {a - b + one(), -1}});
    }
    if (n == "pochhammer") {
      RationalFunction a = rational_arg(e, 0), k = rational_arg(e, 1);
      return gamma_atom(e, {{a + k, 1}, {a, -1}});
    }
    if (n == "qpochhammer") return qpochhammer(e);
    if (n == "power") {
      auto base = as_rational(e->args[0]);
      auto ex = as_exponent(e->args[1]);
      if (!base || !ex) not_dfinite(e, "power needs rational base and exponent");
      if (auto k = integer_constant(*ex)) return from_rational(base->pow(int(*k)));
      return power_atom(e, *base, *ex);
    }
    if (n == "sqrt") return power_atom(e, rational_arg(e, 0), RationalFunction(ext_, mpq_class(1, 2)));
    if (n == "exp") {
      RationalFunction a = rational_arg(e, 0);
      std::vector<RationalFunction> q;
      for (std::size_t g = 0; g < ngens(); ++g) {
        const auto& gen = A().generators()[g];
        std::size_t idx = *A().field_index(g);
        if (gen.kind == GeneratorKind::derivative) {
          q.push_back(a.derivative(idx));
        } else {
          if (a.depends_on(idx)) not_dfinite(e, "exp is not hypergeometric in " + gen.variable);
          q.push_back(one());
        }
      }
      return Representation::first_order(alg_, q);
    }
    if (n == "chebyshevT" || n == "legendreP") return system_atom(e, KnowledgeBase::family_system(n), {"n", "z"});
    if (n == "laguerreL") return system_atom(e, KnowledgeBase::family_system(n), {"n", "a", "z"});
    if (n == "sum" || n == "integrate")
      fail(e, n + " needs creative telescoping; use the ct command or the telescoping module");
    if (const auto* atom = kb_.find(n)) return system_atom(e, buchberger(atom->system), atom->parameters);
    fail(e, "unknown function " + n);
  }

  AlgebraPtr alg_;
  const KnowledgeBase& kb_;
  ContextPtr field_;
  ContextPtr ext_;
  std::map<std::string, std::size_t> exponent_gen_;
};

}  // namespace

AlgebraPtr algebra_for(const ExprPtr& e, const std::vector<Generator>& generators,
                       const std::vector<std::string>& parameters) {
  auto skip = exponent_names(generators);
  std::vector<std::string> vars(parameters);
  for (const auto& s : free_symbols(e))
    if (!skip.count(s) && s != "inf") vars.push_back(s);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return OreAlgebra::create(generators, vars);
}

Representation annihilator_representation(const ExprPtr& e, const AlgebraPtr& algebra, const KnowledgeBase& kb) {
  return Builder(algebra, kb).build(e);
}

GroebnerBasis annihilator(const ExprPtr& e, const AlgebraPtr& algebra, const KnowledgeBase& kb) {
  return fglm(annihilator_representation(e, algebra, kb));
}

GroebnerBasis annihilator(std::string_view text, const AlgebraPtr& algebra, const KnowledgeBase& kb) {
  return annihilator(parse_expression(text, kb.functions()), algebra, kb);
}

}  // namespace holo
