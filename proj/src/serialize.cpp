#include "holo/serialize.hpp"

#include "holo/error.hpp"

namespace holo {

json algebra_to_json(const OreAlgebra& algebra) {
  return {{"generators", algebra.declaration()},
          {"variables", algebra.field()->names()},
          {"elimination", algebra.elimination()}};
}

AlgebraPtr algebra_from_json(const json& j) {
  return OreAlgebra::create(parse_generators(j.at("generators").get<std::string>()),
                            j.value("variables", std::vector<std::string>{}),
                            j.value("elimination", std::vector<std::string>{}));
}

json operator_to_json(const OrePolynomial& p) {
  std::uint32_t top = p.max_position();
  if (top == 0) return p.to_string();
  json parts = json::array();
  for (std::uint32_t i = 0; i <= top; ++i) parts.push_back(p.component(i).to_string());
  return parts;
}

OrePolynomial operator_from_json(const json& j, const AlgebraPtr& algebra) {
  if (j.is_string()) return parse_operator(j.get<std::string>(), algebra);
  OrePolynomial p(algebra);
  for (std::uint32_t i = 0; i < j.size(); ++i)
    p += parse_operator(j.at(i).get<std::string>(), algebra).at_position(i);
  return p;
}

namespace {

json operators_to_json(const std::vector<OrePolynomial>& ops) {
  json a = json::array();
  for (const auto& p : ops) a.push_back(operator_to_json(p));
  return a;
}

std::vector<OrePolynomial> operators_from_json(const json& j, const AlgebraPtr& algebra) {
  std::vector<OrePolynomial> ops;
  for (const auto& x : j) ops.push_back(operator_from_json(x, algebra));
  return ops;
}

mpq_class rational(const json& j) {
  mpq_class v;
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (v.set_str(j.get<std::string>(), 10) != 0) throw ParseError("not a rational number: " + j.dump(), 1, 1);
  v.canonicalize();
  return v;
}

}  // namespace

json gb_to_json(const GroebnerBasis& g) {
  return {{"algebra", algebra_to_json(*g.algebra())},
          {"order", g.order().describe()},
          {"operators", operators_to_json(g.elements())}};
}

GroebnerBasis gb_from_json(const json& j) {
  auto alg = algebra_from_json(j.at("algebra"));
  auto order = j.contains("order") ? MonomialOrder::parse(j.at("order").get<std::string>()) : default_order(*alg);
  return GroebnerBasis(alg, order, operators_from_json(j.at("operators"), alg));
}

json telescoping_to_json(const TelescopingResult& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(operators_to_json(c));
  return {{"algorithm", r.algorithm},
          {"algebra", algebra_to_json(*r.algebra)},
          {"telescoper_algebra", algebra_to_json(*r.telescoper_algebra)},
          {"deltas", r.deltas.variables},
          {"telescopers", operators_to_json(r.telescopers)},
          {"certificates", certs},
          {"assumptions", r.assumptions},
          {"certificate_identity", r.verified ? "verified" : "unverified"}};
}

TelescopingResult telescoping_from_json(const json& j) {
  TelescopingResult r;
  r.algorithm = j.at("algorithm").get<std::string>();
  r.algebra = algebra_from_json(j.at("algebra"));
  r.telescoper_algebra = algebra_from_json(j.at("telescoper_algebra"));
  r.deltas.variables = j.at("deltas").get<std::vector<std::string>>();
  r.telescopers = operators_from_json(j.at("telescopers"), r.telescoper_algebra);
  for (const auto& c : j.at("certificates")) r.certificates.push_back(operators_from_json(c, r.algebra));
  r.assumptions = j.value("assumptions", std::vector<std::string>{});
  r.verified = j.value("certificate_identity", std::string()) == "verified";
  return r;
}

json point_to_json(const Point& p) {
  json o = json::object();
  for (const auto& [k, v] : p) o[k] = v.get_str();
  return o;
}

Point point_from_json(const json& j) {
  Point p;
  for (const auto& [k, v] : j.items()) p[k] = rational(v);
  return p;
}

json residues_to_json(const std::vector<Residue>& r) {
  json a = json::array();
  for (const auto& x : r) a.push_back({{"operator", x.op}, {"point", point_to_json(x.point)}, {"residue", x.residue.get_str()}});
  return a;
}

std::vector<Residue> residues_from_json(const json& j) {
  std::vector<Residue> r;
  for (const auto& x : j) r.push_back({x.at("operator").get<std::size_t>(), point_from_json(x.at("point")), rational(x.at("residue"))});
  return r;
}

json report_to_json(const OracleReport& r) {
  json skipped = json::array();
  for (const auto& p : r.skipped) skipped.push_back(point_to_json(p));
  return {{"checked", r.checked}, {"failures", residues_to_json(r.failures)}, {"skipped", skipped}, {"degenerate", r.degenerate}};
}

OracleReport report_from_json(const json& j) {
  OracleReport r;
  r.checked = j.at("checked").get<std::size_t>();
  r.failures = residues_from_json(j.at("failures"));
  for (const auto& p : j.at("skipped")) r.skipped.push_back(point_from_json(p));
  r.degenerate = j.at("degenerate").get<std::vector<std::size_t>>();
  return r;
}

}  // namespace holo
