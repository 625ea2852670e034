#include "holo/ore_algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "holo/lexer.hpp"

namespace holo {

std::string Generator::name() const {
  switch (kind) {
    case GeneratorKind::shift:
      return "S[" + variable + "]";
    case GeneratorKind::derivative:
      return "Der[" + variable + "]";
    case GeneratorKind::qshift:
      if (exponent == (variable.size() > 1 && variable[0] == 'q' ? variable.substr(1) : variable))
        return "QS[" + variable + "," + q + "]";
      return "QS[" + variable + "," + q + "," + exponent + "]";
  }
  return {};
}

Generator parse_generator(std::string_view name, std::string_view inner) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : inner) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  parts.push_back(cur);
  Generator g;
  if (name == "S" && parts.size() == 1) {
    g.kind = GeneratorKind::shift;
  } else if ((name == "Der" || name == "D") && parts.size() == 1) {
    g.kind = GeneratorKind::derivative;
  } else if (name == "QS" && (parts.size() == 2 || parts.size() == 3)) {
    g.kind = GeneratorKind::qshift;
    g.q = parts[1];
    if (parts.size() == 3) {
      g.exponent = parts[2];
    } else {
      g.exponent = parts[0].size() > 1 && parts[0][0] == 'q' ? parts[0].substr(1) : parts[0];
    }
  } else {
    throw MathError("unknown generator " + std::string(name) + "[" + std::string(inner) + "]");
  }
  g.variable = parts[0];
  if (g.variable.empty()) throw MathError("generator without a variable");
  return g;
}

std::vector<Generator> parse_generators(std::string_view text) {
  TokenStream ts(text);
  std::vector<Generator> out;
  while (!ts.at_end()) {
    const Token& t = ts.peek();
    if (t.kind != TokenKind::identifier) ts.fail("expected a generator such as S[n] or Der[x]");
    Token name = ts.next();
    ts.expect('[');
    std::string inner;
    while (!ts.is_symbol(']')) {
      if (ts.at_end()) ts.fail("expected ']'");
      inner += ts.next().text;
    }
    ts.next();
    try {
      out.push_back(parse_generator(name.text, inner));
    } catch (const MathError& e) {
      TokenStream::fail_at(name, e.what());
    }
    if (!ts.accept(',') && !ts.at_end()) ts.fail("expected ','");
  }
  return out;
}

AlgebraPtr OreAlgebra::create(std::vector<Generator> generators, std::vector<std::string> variables,
                              std::vector<std::string> elimination) {
  std::shared_ptr<OreAlgebra> a(new OreAlgebra());
  std::set<std::string> seen;
  for (const auto& g : generators) {
    if (!seen.insert(g.variable).second) throw MathError("variable '" + g.variable + "' has two generators");
    variables.push_back(g.variable);
    if (g.kind == GeneratorKind::qshift) variables.push_back(g.q);
  }
  std::sort(variables.begin(), variables.end());
  variables.erase(std::unique(variables.begin(), variables.end()), variables.end());
  for (const auto& v : elimination) {
    auto it = std::find_if(generators.begin(), generators.end(), [&](const Generator& g) { return g.variable == v; });
    if (it == generators.end()) throw MathError("cannot eliminate '" + v + "': no generator acts on it");
  }
  if (elimination.size() + generators.size() > kMaxVariables) throw MathError("too many generators");
  std::vector<std::string> field;
  for (const auto& v : variables)
    if (std::find(elimination.begin(), elimination.end(), v) == elimination.end()) field.push_back(v);
  for (const auto& g : generators)
    if (g.kind == GeneratorKind::qshift &&
        std::find(elimination.begin(), elimination.end(), g.q) != elimination.end())
      throw MathError("cannot eliminate the q parameter");
  a->generators_ = std::move(generators);
  a->elimination_ = std::move(elimination);
  a->field_ = make_context(field);
  std::vector<std::string> full = field;
  full.insert(full.end(), a->elimination_.begin(), a->elimination_.end());
  a->full_ = make_context(full);
  a->slot_generator_.resize(a->elimination_.size());
  for (std::size_t g = 0; g < a->generators_.size(); ++g) {
    const auto& gen = a->generators_[g];
    a->field_index_.push_back(a->field_->index_of(gen.variable));
    a->q_index_.push_back(gen.kind == GeneratorKind::qshift ? a->field_->index_of(gen.q) : std::nullopt);
    auto it = std::find(a->elimination_.begin(), a->elimination_.end(), gen.variable);
    if (it != a->elimination_.end()) {
      std::size_t s = std::size_t(it - a->elimination_.begin());
      a->elim_slot_.push_back(s);
      a->slot_generator_[s] = g;
    } else {
      a->elim_slot_.push_back(std::nullopt);
    }
  }
  return a;
}

std::optional<std::size_t> OreAlgebra::find_generator(std::string_view variable) const {
  for (std::size_t g = 0; g < generators_.size(); ++g)
    if (generators_[g].variable == variable) return g;
  return std::nullopt;
}

std::optional<std::size_t> OreAlgebra::find_generator_by_name(std::string_view name) const {
  for (std::size_t g = 0; g < generators_.size(); ++g)
    if (generators_[g].name() == name) return g;
  return std::nullopt;
}

std::string OreAlgebra::slot_name(std::size_t s) const {
  return s < elimination_.size() ? elimination_[s] : generators_[s - elimination_.size()].name();
}

AlgebraPtr OreAlgebra::with_elimination(std::vector<std::string> vars) const {
  return create(generators_, full_->names(), std::move(vars));
}

AlgebraPtr OreAlgebra::subalgebra(const std::vector<std::string>& generator_names,
                                  std::vector<std::string> variables) const {
  std::vector<Generator> gens;
  for (const auto& n : generator_names) {
    auto g = find_generator_by_name(n);
    if (!g) throw MathError("unknown generator " + n);
    gens.push_back(generators_[*g]);
  }
  return create(std::move(gens), std::move(variables));
}

std::string OreAlgebra::declaration() const {
  std::string s;
  for (const auto& g : generators_) {
    if (!s.empty()) s += ",";
    s += g.name();
  }
  return s;
}

bool OreAlgebra::same_as(const OreAlgebra& o) const {
  return generators_ == o.generators_ && elimination_ == o.elimination_ && field_->names() == o.field_->names();
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || (a && b && a->same_as(*b)); }

namespace {

std::vector<std::size_t> default_precedence(std::vector<std::size_t> p) {
  std::vector<bool> used(kMaxVariables, false);
  for (auto s : p) used[s] = true;
  for (std::size_t s = 0; s < kMaxVariables; ++s)
    if (!used[s]) p.push_back(s);
  return p;
}

}  // namespace

MonomialOrder MonomialOrder::deglex(std::vector<std::size_t> precedence) {
  MonomialOrder o;
  o.kind_ = Kind::deglex;
  o.precedence_ = default_precedence(std::move(precedence));
  return o;
}

MonomialOrder MonomialOrder::lex(std::vector<std::size_t> precedence) {
  MonomialOrder o;
  o.kind_ = Kind::lex;
  o.precedence_ = default_precedence(std::move(precedence));
  return o;
}

MonomialOrder MonomialOrder::block(std::uint32_t block_mask, std::vector<std::size_t> precedence) {
  MonomialOrder o;
  o.kind_ = Kind::block;
  o.block_mask_ = block_mask;
  o.precedence_ = default_precedence(std::move(precedence));
  return o;
}

MonomialOrder MonomialOrder::pot() const {
  MonomialOrder o = *this;
  o.pot_ = true;
  return o;
}

int MonomialOrder::lex_part(const Exponents& a, const Exponents& b, std::uint32_t mask) const {
  for (auto s : precedence_) {
    if (!(mask & (1u << s))) continue;
    if (a.e[s] != b.e[s]) return a.e[s] < b.e[s] ? -1 : 1;
  }
  return 0;
}

int MonomialOrder::deglex_part(const Exponents& a, const Exponents& b, std::uint32_t mask) const {
  std::uint32_t da = 0, db = 0;
  for (std::size_t s = 0; s < kMaxVariables; ++s)
    if (mask & (1u << s)) {
      da += a.e[s];
      db += b.e[s];
    }
  if (da != db) return da < db ? -1 : 1;
  return lex_part(a, b, mask);
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (pot_ && a.position != b.position) return a.position < b.position ? -1 : 1;
  int c = 0;
  constexpr std::uint32_t all = 0xffffffffu;
  switch (kind_) {
    case Kind::deglex:
      c = deglex_part(a.exps, b.exps, all);
      break;
    case Kind::lex:
      c = lex_part(a.exps, b.exps, all);
      break;
    case Kind::block:
      c = deglex_part(a.exps, b.exps, block_mask_);
      if (c == 0) c = deglex_part(a.exps, b.exps, ~block_mask_);
      break;
  }
  if (c == 0 && a.position != b.position) return a.position < b.position ? -1 : 1;
  return c;
}

std::string MonomialOrder::describe() const {
  std::ostringstream os;
  os << (kind_ == Kind::deglex ? "deglex" : kind_ == Kind::lex ? "lex" : "block");
  if (kind_ == Kind::block) os << ":" << block_mask_;
  os << ":";
  for (std::size_t i = 0; i < precedence_.size(); ++i) os << (i ? "," : "") << precedence_[i];
  if (pot_) os << ":pot";
  return os.str();
}

MonomialOrder MonomialOrder::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.empty()) throw MathError("empty order descriptor");
  bool pot = !parts.empty() && parts.back() == "pot";
  if (pot) parts.pop_back();
  auto read_list = [](const std::string& s) {
    std::vector<std::size_t> v;
    std::string num;
    for (char c : s + ",") {
      if (c == ',') {
        if (!num.empty()) v.push_back(std::stoul(num));
        num.clear();
      } else {
        num += c;
      }
    }
    return v;
  };
  MonomialOrder o;
  try {
    if (parts[0] == "deglex") {
      o = deglex(parts.size() > 1 ? read_list(parts[1]) : std::vector<std::size_t>{});
    } else if (parts[0] == "lex") {
      o = lex(parts.size() > 1 ? read_list(parts[1]) : std::vector<std::size_t>{});
    } else if (parts[0] == "block" && parts.size() >= 2) {
      o = block(std::uint32_t(std::stoul(parts[1])), parts.size() > 2 ? read_list(parts[2]) : std::vector<std::size_t>{});
    } else {
      throw MathError("unknown order '" + std::string(text) + "'");
    }
  } catch (const std::invalid_argument&) {
    throw MathError("malformed order '" + std::string(text) + "'");
  }
  return pot ? o.pot() : o;
}

}  // namespace holo
