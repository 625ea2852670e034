#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "holo/annihilator.hpp"
#include "holo/arith_parser.hpp"
#include "holo/error.hpp"
#include "holo/oracle.hpp"
#include "holo/serialize.hpp"
#include "holo/telescoping.hpp"

namespace holo::cli {
namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

// Splits at sep outside of brackets and parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Config {
  GroebnerOptions groebner;
  HeuristicOptions heuristic;
  TakayamaOptions takayama;
  unsigned relation_max_degree = 6;

  void set(const std::string& key, const std::string& value) {
    auto num = [&]() -> unsigned long {
      try {
        std::size_t used = 0;
        unsigned long v = std::stoul(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw UsageError("config value for " + key + " is not a nonnegative integer: " + value);
      }
    };
    if (key == "groebner.max_pair_reductions") {
      groebner.max_pair_reductions = num();
    } else if (key == "execution") {
      if (value != "serial" && value != "parallel") throw UsageError("execution must be serial or parallel");
      groebner.exec = value == "serial" ? Execution::serial : Execution::parallel;
    } else if (key == "heuristic.max_order") {
      heuristic.max_order = static_cast<unsigned>(num());
    } else if (key == "heuristic.max_numerator_degree") {
      heuristic.max_numerator_degree = static_cast<unsigned>(num());
    } else if (key == "heuristic.max_factors") {
      heuristic.max_factors = static_cast<unsigned>(num());
    } else if (key == "heuristic.max_unknowns") {
      heuristic.max_unknowns = num();
    } else if (key == "heuristic.seed") {
      heuristic.seed = num();
    } else if (key == "heuristic.max_telescopers") {
      heuristic.max_telescopers = num();
    } else if (key == "takayama.max_degree") {
      takayama.max_degree = static_cast<unsigned>(num());
    } else if (key == "takayama.expected_rank") {
      takayama.expected_rank = num();
    } else if (key == "relation.max_degree") {
      relation_max_degree = static_cast<unsigned>(num());
    } else {
      throw UsageError("unknown config key " + key);
    }
    takayama.groebner = groebner;
  }
};

struct Options {
  std::string config_file;
  std::vector<std::string> settings;
  std::string format = "both";
  std::string output;

  std::string expr, expr2, algebra, params, ops, ops_file, ideal, ideal2, order;
  std::string op;
  std::string deltas, target, algo = "heuristic", bounds;
  bool natural = false;
  std::string eliminate;
  std::string closure_op, operator_text, var, value, target_algebra;
  std::string grid, ct_file, summand, closed_form;
  std::vector<std::string> atom_files;
};

std::vector<std::string> names(const std::string& text) {
  std::vector<std::string> out;
  for (auto& s : split_top(text, ','))
    if (!s.empty()) out.push_back(s);
  return out;
}

KnowledgeBase knowledge(const Options& o) {
  KnowledgeBase kb;
  for (const auto& path : o.atom_files) {
    json j = json::parse(slurp(path));
    auto alg = algebra_from_json(j.at("algebra"));
    UserAtom atom{j.at("name").get<std::string>(), j.at("parameters").get<std::vector<std::string>>(), {}};
    for (const auto& t : j.at("system")) atom.system.push_back(operator_from_json(t, alg));
    kb.define(std::move(atom));
  }
  return kb;
}

ExprPtr expression(const std::string& text, const KnowledgeBase& kb) { return parse_expression(text, kb.functions()); }

AlgebraPtr algebra_for_expr(const ExprPtr& e, const Options& o) {
  if (o.algebra.empty()) throw UsageError("--algebra is required with --expr");
  return algebra_for(e, parse_generators(o.algebra), names(o.params));
}

std::vector<OrePolynomial> operator_list(const std::string& text, const AlgebraPtr& alg) {
  std::vector<OrePolynomial> out;
  for (const auto& line : split_top(text, ';'))
    if (!line.empty()) out.push_back(parse_operator(line, alg));
  return out;
}

std::string ops_text(const Options& o) {
  if (!o.ops_file.empty()) {
    std::string s = slurp(o.ops_file);
    std::replace(s.begin(), s.end(), '\n', ';');
    return s;
  }
  return o.ops;
}

// The ideal given by --ideal (a basis or a telescoping result), --expr or --ops,
// in that order.
GroebnerBasis load_ideal(const Options& o, const Config& cfg, const std::string& file, const std::string& expr) {
  if (!file.empty()) {
    json j = json::parse(slurp(file));
    // A telescoping result stands for its telescoper ideal.
    if (j.contains("telescopers")) return telescoping_from_json(j).telescoper_basis();
    return gb_from_json(j);
  }
  if (!expr.empty()) {
    auto kb = knowledge(o);
    auto e = expression(expr, kb);
    return annihilator(e, algebra_for_expr(e, o), kb);
  }
  std::string text = ops_text(o);
  if (!text.empty()) {
    if (o.algebra.empty()) throw UsageError("--algebra is required with --ops");
    auto alg = OreAlgebra::create(parse_generators(o.algebra), names(o.params));
    auto ops = operator_list(text, alg);
    if (ops.empty()) throw UsageError("no operators given");
    auto order = o.order.empty() ? default_order(*alg) : MonomialOrder::parse(o.order);
    return buchberger(ops, order, cfg.groebner);
  }
  throw UsageError("an ideal is required (--ideal, --expr or --ops)");
}

class Printer {
 public:
  Printer(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  std::ostream& text() { return o_.format == "json" ? null_ : out_; }

  void emit(const json& j) {
    if (!o_.output.empty()) {
      std::ofstream f(o_.output);
      if (!f) throw UsageError("cannot write " + o_.output);
      f << j.dump(2) << "\n";
    } else if (o_.format != "text") {
      out_ << j.dump(2) << "\n";
    }
  }

 private:
  const Options& o_;
  std::ostream& out_;
  std::ostringstream null_;
};

void print_ops(std::ostream& os, const std::vector<OrePolynomial>& ops) {
  for (const auto& p : ops) os << "  " << p.to_string() << "\n";
}

int cmd_annihilator(const Options& o, const Config& cfg, Printer& pr) {
  if (o.expr.empty()) throw UsageError("--expr is required");
  auto g = load_ideal(o, cfg, "", o.expr);
  pr.text() << "annihilating ideal in " << g.algebra()->declaration() << ":\n";
  print_ops(pr.text(), g.elements());
  pr.emit(gb_to_json(g));
  return ok;
}

int cmd_gb(const Options& o, const Config& cfg, Printer& pr) {
  auto g = load_ideal(o, cfg, o.ideal, o.expr);
  pr.text() << "Groebner basis (" << g.order().describe() << "):\n";
  print_ops(pr.text(), g.elements());
  pr.emit(gb_to_json(g));
  return ok;
}

int cmd_reduce(const Options& o, const Config& cfg, Printer& pr) {
  if (o.op.empty()) throw UsageError("--op is required");
  auto g = load_ideal(o, cfg, o.ideal, o.expr);
  auto nf = reduce(parse_operator(o.op, g.algebra()), g);
  pr.text() << nf.to_string() << "\n";
  pr.emit({{"normal_form", operator_to_json(nf)}, {"zero", nf.is_zero()}});
  return nf.is_zero() ? ok : verification_failed;
}

// Generators other than the deltas, by name.
std::vector<std::string> default_target(const OreAlgebra& alg, const DeltaSpec& d) {
  std::vector<std::string> t;
  for (const auto& g : alg.generators())
    if (std::find(d.variables.begin(), d.variables.end(), g.variable) == d.variables.end()) t.push_back(g.name());
  return t;
}

TelescopingResult telescope(const std::string& algo, const GroebnerBasis& g, const DeltaSpec& d,
                            const std::vector<std::string>& target, const Config& cfg) {
  if (algo == "slow") return ct_slow(g, d, target, cfg.groebner);
  if (algo == "heuristic") return ct_heuristic(g, d, target, cfg.heuristic);
  if (algo == "takayama") return ct_takayama(g, d, cfg.takayama);
  throw UsageError("unknown algorithm " + algo + " (slow, heuristic, takayama)");
}

std::map<std::string, Bound> parse_bounds(const std::string& text, const KnowledgeBase& kb) {
  std::map<std::string, Bound> out;
  for (const auto& item : split_top(text, ';')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    auto dots = item.find("..");
    if (eq == std::string::npos || dots == std::string::npos || dots < eq)
      throw UsageError("bounds must look like k=0..n: " + item);
    out[trim(item.substr(0, eq))] = {expression(item.substr(eq + 1, dots - eq - 1), kb), expression(item.substr(dots + 2), kb)};
  }
  return out;
}

json boundary_json(const BoundaryExpression& b) {
  json per = json::array();
  for (const auto& terms : b.terms) {
    json list = json::array();
    for (const auto& t : terms) {
      json rest = json::object();
      for (const auto& [v, bd] : t.remaining) rest[v] = {to_string(bd.lower), to_string(bd.upper)};
      list.push_back({{"variable", t.variable},
                      {"certificate", operator_to_json(t.certificate)},
                      {"at_lower", to_string(t.at_lower)},
                      {"at_upper", to_string(t.at_upper)},
                      {"remaining", rest}});
    }
    per.push_back(list);
  }
  return {{"summand", to_string(b.summand)}, {"natural", b.natural}, {"assumptions", b.assumptions}, {"brackets", per}};
}

void print_result(std::ostream& os, const TelescopingResult& r) {
  os << "telescopers:\n";
  print_ops(os, r.telescopers);
  for (std::size_t k = 0; k < r.certificates.size(); ++k) {
    os << "certificates of telescoper " << k + 1 << ":\n";
    print_ops(os, r.certificates[k]);
  }
  for (const auto& a : r.assumptions) os << "assumption: " << a << "\n";
  if (r.algorithm == "takayama")
    os << "certificate identity: not computed\n";
  else
    os << "certificate identity: " << (r.verified ? "verified" : "FAILED") << "\n";
}

int cmd_ct(const Options& o, const Config& cfg, Printer& pr) {
  auto kb = knowledge(o);
  std::vector<std::string> target = names(o.target);
  if (!o.expr.empty() && is_quantifier(expression(o.expr, kb))) {
    // Nested quantifiers are handled one at a time, innermost first, each
    // level assuming natural boundaries.
    if (!o.deltas.empty()) throw UsageError("--deltas cannot be combined with a quantified expression");
    ExprPtr e = expression(o.expr, kb);
    std::vector<ExprPtr> levels;
    while (is_quantifier(e)) {
      levels.push_back(e);
      e = e->args[0];
    }
    auto g = annihilator(e, algebra_for_expr(e, o), kb);
    json steps = json::array();
    TelescopingResult r;
    bool verified = true;
    std::vector<std::string> assumptions;
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
      const auto& q = *it;
      DeltaSpec d{{q->args[1]->name}};
      if (!g.algebra()->find_generator(d.variables[0]))
        throw UsageError("the algebra has no generator for " + d.variables[0]);
      bool outermost = std::next(it) == levels.rend();
      auto t = outermost && !target.empty() ? target : default_target(*g.algebra(), d);
      r = telescope(o.algo, g, d, t, cfg);
      verified = verified && (r.verified || r.algorithm == "takayama");
      assumptions.push_back("natural boundaries for " + q->name + " over " + d.variables[0] + " from " +
                            to_string(q->args[2]) + " to " + to_string(q->args[3]));
      steps.push_back(telescoping_to_json(r));
      g = r.telescoper_basis();
    }
    r.assumptions.insert(r.assumptions.end(), assumptions.begin(), assumptions.end());
    print_result(pr.text(), r);
    json j = telescoping_to_json(r);
    j["levels"] = steps;
    pr.emit(j);
    return verified ? ok : verification_failed;
  }
  if (o.deltas.empty()) throw UsageError("--deltas is required unless the expression is a sum or integral");
  auto g = load_ideal(o, cfg, o.ideal, o.expr);
  DeltaSpec d = parse_deltas(o.deltas);
  if (target.empty()) target = default_target(*g.algebra(), d);
  auto r = telescope(o.algo, g, d, target, cfg);
  json j = telescoping_to_json(r);
  if (!o.bounds.empty()) {
    if (o.expr.empty()) throw UsageError("--bounds needs the summand as --expr");
    auto b = assemble_boundary(r, expression(o.expr, kb), parse_bounds(o.bounds, kb), o.natural);
    r.assumptions.insert(r.assumptions.end(), b.assumptions.begin(), b.assumptions.end());
    j["assumptions"] = r.assumptions;
    j["boundary"] = boundary_json(b);
  }
  print_result(pr.text(), r);
  pr.emit(j);
  return r.verified || r.algorithm == "takayama" ? ok : verification_failed;
}

int cmd_find_relation(const Options& o, const Config& cfg, Printer& pr) {
  auto g = load_ideal(o, cfg, o.ideal, o.expr);
  RelationOptions ro;
  ro.eliminate = names(o.eliminate);
  ro.max_degree = cfg.relation_max_degree;
  auto rel = find_relation(g, ro);
  if (rel.empty()) throw CapExceededError("no relation found up to degree " + std::to_string(ro.max_degree));
  pr.text() << "relations:\n";
  print_ops(pr.text(), rel);
  json ops = json::array();
  for (const auto& p : rel) ops.push_back(operator_to_json(p));
  pr.emit({{"algebra", algebra_to_json(*rel[0].algebra())}, {"operators", ops}});
  return ok;
}

int cmd_closure(const Options& o, const Config& cfg, Printer& pr) {
  auto a = load_ideal(o, cfg, o.ideal, o.expr);
  GroebnerBasis g = a;
  if (o.closure_op == "plus" || o.closure_op == "times") {
    Options second = o;
    second.ops.clear();
    second.ops_file.clear();
    auto b = load_ideal(second, cfg, o.ideal2, o.expr2);
    g = o.closure_op == "plus" ? dfinite_plus(a, b) : dfinite_times(a, b);
  } else if (o.closure_op == "apply") {
    if (o.operator_text.empty()) throw UsageError("--operator is required for apply");
    g = apply_operator(parse_operator(o.operator_text, a.algebra()), a);
  } else if (o.closure_op == "subst") {
    if (o.var.empty() || o.value.empty() || o.target_algebra.empty())
      throw UsageError("subst needs --var, --value and --target-algebra");
    auto target = OreAlgebra::create(parse_generators(o.target_algebra), names(o.params));
    auto value = parse_rational_function(o.value, target->field());
    auto gen = a.algebra()->find_generator(o.var);
    if (!gen) throw UsageError("no generator acts on " + o.var);
    g = a.algebra()->generators()[*gen].kind == GeneratorKind::derivative
            ? substitute_algebraic(a, target, o.var, value)
            : substitute_integer_linear(a, target, o.var, value);
  } else {
    throw UsageError("--op must be plus, times, apply or subst");
  }
  pr.text() << o.closure_op << " closure in " << g.algebra()->declaration() << ":\n";
  print_ops(pr.text(), g.elements());
  pr.emit(gb_to_json(g));
  return ok;
}

SampleGrid parse_grid(const std::string& text) {
  std::map<std::string, std::vector<mpq_class>> axes;
  for (const auto& item : split_top(text, ';')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("grid axes must look like n=0..4 or x=1/2,2: " + item);
    auto& values = axes[trim(item.substr(0, eq))];
    for (const auto& v : split_top(item.substr(eq + 1), ',')) {
      auto parse = [&](const std::string& s) {
        mpq_class q;
        if (q.set_str(trim(s), 10) != 0) throw UsageError("not a rational number: " + s);
        q.canonicalize();
        return q;
      };
      if (auto dots = v.find(".."); dots != std::string::npos) {
        mpq_class lo = parse(v.substr(0, dots)), hi = parse(v.substr(dots + 2));
        if (lo.get_den() != 1 || hi.get_den() != 1) throw UsageError("ranges need integer ends: " + v);
        for (mpz_class k = lo.get_num(); k <= hi.get_num(); ++k) values.push_back(mpq_class(k));
      } else {
        values.push_back(parse(v));
      }
    }
  }
  if (axes.empty()) throw UsageError("--grid is required");
  return SampleGrid::product(axes);
}

int cmd_verify(const Options& o, const Config& cfg, Printer& pr) {
  auto kb = knowledge(o);
  SampleGrid grid = parse_grid(o.grid);
  Execution exec = cfg.groebner.exec;
  OracleReport rep;
  if (!o.ct_file.empty()) {
    if (o.summand.empty() || o.bounds.empty()) throw UsageError("verify --ct needs --summand and --bounds");
    auto r = telescoping_from_json(json::parse(slurp(o.ct_file)));
    ExprPtr f = expression(o.summand, kb);
    std::vector<SumBound> sb;
    for (const auto& [v, b] : parse_bounds(o.bounds, kb)) sb.push_back({v, b.lower, b.upper});
    for (std::size_t k = 0; k < r.telescopers.size(); ++k) {
      auto one = check_sum_identity(r.telescopers[k], f, sb, grid, {}, exec);
      rep.checked = one.checked;
      rep.skipped = one.skipped;
      for (auto x : one.failures) rep.failures.push_back({k, x.point, x.residue});
      if (!one.degenerate.empty()) rep.degenerate.push_back(k);
    }
    if (!o.closed_form.empty()) {
      // The brute-force sum against a closed form, reported as one more operator.
      ExprPtr diff = make_binary(ExprKind::sub, nested_sum(f, sb), expression(o.closed_form, kb));
      auto idx = r.telescopers.size();
      auto one = check_annihilator({OrePolynomial(r.telescoper_algebra, RationalFunction(r.telescoper_algebra->field(), 1))},
                                   diff, grid, exec);
      for (auto x : one.failures) rep.failures.push_back({idx, x.point, x.residue});
    }
  } else {
    if (o.expr.empty()) throw UsageError("verify needs --expr (or --ct with --summand)");
    auto g = load_ideal(o, cfg, o.ideal, o.ideal.empty() && ops_text(o).empty() ? o.expr : "");
    rep = check_annihilator(g.elements(), expression(o.expr, kb), grid, exec);
  }
  pr.text() << "checked " << rep.checked << " points, skipped " << rep.skipped.size() << ", failures "
            << rep.failures.size() << "\n";
  for (const auto& f : rep.failures) {
    pr.text() << "  operator " << f.op << " at";
    for (const auto& [k, v] : f.point) pr.text() << " " << k << "=" << v.get_str();
    pr.text() << ": residue " << f.residue.get_str() << "\n";
  }
  for (auto k : rep.degenerate) pr.text() << "  operator " << k << " is zero\n";
  pr.emit(report_to_json(rep));
  return rep.ok() ? ok : verification_failed;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(no) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Holonomic functions: annihilators, Groebner bases and creative telescoping", "holo"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config_file, "key=value config file");
  app.add_option("--set", o.settings, "config override key=value (repeatable)");
  app.add_option("--format", o.format, "text, json or both")->check(CLI::IsMember({"text", "json", "both"}));
  app.add_option("--output", o.output, "write the JSON result to this file");
  app.add_option("--atom", o.atom_files, "JSON file defining a user atom by its system (repeatable)");

  auto ideal_options = [&](CLI::App* c) {
    c->add_option("--expr", o.expr, "closed-form expression");
    c->add_option("--algebra", o.algebra, "generators, e.g. \"S[n],S[a],Der[x]\"");
    c->add_option("--params", o.params, "extra field parameters, comma separated");
    c->add_option("--ideal", o.ideal, "Groebner basis JSON file");
    c->add_option("--ops", o.ops, "operators separated by ';'");
    c->add_option("--ops-file", o.ops_file, "file with one operator per line");
    c->add_option("--order", o.order, "monomial order for --ops");
  };

  auto* ann = app.add_subcommand("annihilator", "annihilating ideal of an expression");
  ideal_options(ann);
  auto* gb = app.add_subcommand("gb", "Groebner basis of an ideal");
  ideal_options(gb);
  auto* red = app.add_subcommand("reduce", "normal form of an operator; exit 0 iff it is zero");
  ideal_options(red);
  red->add_option("--op", o.op, "operator to reduce")->required();
  auto* ct = app.add_subcommand("ct", "creative telescoping");
  ideal_options(ct);
  ct->add_option("--deltas", o.deltas, "e.g. \"S[i]-1,S[j]-1\" or \"Der[x]\"");
  ct->add_option("--target", o.target, "telescoper generators, e.g. \"S[n]\"");
  ct->add_option("--algo", o.algo, "slow, heuristic or takayama")->check(CLI::IsMember({"slow", "heuristic", "takayama"}));
  ct->add_option("--bounds", o.bounds, "summation bounds, e.g. \"k=0..n\"");
  ct->add_flag("--natural", o.natural, "declare the boundary brackets zero");
  auto* fr = app.add_subcommand("find-relation", "operators of the ideal free of given symbols");
  ideal_options(fr);
  fr->add_option("--eliminate", o.eliminate, "symbols to eliminate, comma separated");
  auto* cl = app.add_subcommand("closure", "closure properties: plus, times, apply, subst");
  ideal_options(cl);
  cl->add_option("--op", o.closure_op, "plus, times, apply or subst")->required();
  cl->add_option("--expr2", o.expr2, "second expression for plus and times");
  cl->add_option("--ideal2", o.ideal2, "second Groebner basis JSON for plus and times");
  cl->add_option("--operator", o.operator_text, "operator for apply");
  cl->add_option("--var", o.var, "variable to substitute");
  cl->add_option("--value", o.value, "rational function substituted for --var");
  cl->add_option("--target-algebra", o.target_algebra, "generators of the algebra after substitution");
  auto* ver = app.add_subcommand("verify", "exact oracle checks on a sample grid");
  ideal_options(ver);
  ver->add_option("--grid", o.grid, "e.g. \"n=0..4;x=1/2,2\"")->required();
  ver->add_option("--ct", o.ct_file, "telescoping result JSON to check against brute-force sums");
  ver->add_option("--summand", o.summand, "summand for --ct");
  ver->add_option("--bounds", o.bounds, "summation bounds for --ct, e.g. \"k=0..n\"");
  ver->add_option("--closed-form", o.closed_form, "also compare the brute-force sum with this expression");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return ok;
    }
    report_error(err, "usage", e.what());
    return usage;
  }

  try {
    Config cfg;
    if (!o.config_file.empty())
      for (const auto& [k, v] : read_config(o.config_file)) cfg.set(k, v);
    for (const auto& s : o.settings) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects key=value: " + s);
      cfg.set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
    Printer pr(o, out);
    if (ann->parsed()) return cmd_annihilator(o, cfg, pr);
    if (gb->parsed()) return cmd_gb(o, cfg, pr);
    if (red->parsed()) return cmd_reduce(o, cfg, pr);
    if (ct->parsed()) return cmd_ct(o, cfg, pr);
    if (fr->parsed()) return cmd_find_relation(o, cfg, pr);
    if (cl->parsed()) return cmd_closure(o, cfg, pr);
    if (ver->parsed()) return cmd_verify(o, cfg, pr);
    return usage;
  } catch (const UsageError& e) {
    report_error(err, "usage", e.what());
    return usage;
  } catch (const ParseError& e) {
    report_error(err, "parse", e.what());
    return usage;
  } catch (const NotDFiniteError& e) {
    report_error(err, "not_dfinite", e.what());
    return usage;
  } catch (const CapExceededError& e) {
    report_error(err, "cap_exceeded", e.what());
    return cap_exceeded;
  } catch (const MathError& e) {
    report_error(err, "math", e.what());
    return usage;
  } catch (const json::exception& e) {
    report_error(err, "json", e.what());
    return usage;
  }
}

}  // namespace holo::cli
