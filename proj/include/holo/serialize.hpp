#pragma once

#include "json.hpp"

#include "holo/groebner.hpp"
#include "holo/oracle.hpp"
#include "holo/telescoping.hpp"

namespace holo {

using nlohmann::json;

/// {"generators": "S[n],Der[x]", "variables": [...], "elimination": [...]}
json algebra_to_json(const OreAlgebra& algebra);
AlgebraPtr algebra_from_json(const json& j);

/// Operators are stored in the operator text format. Module elements are
/// lists of component texts indexed by position.
json operator_to_json(const OrePolynomial& p);
OrePolynomial operator_from_json(const json& j, const AlgebraPtr& algebra);

/// {"algebra", "order", "operators"}
json gb_to_json(const GroebnerBasis& g);
GroebnerBasis gb_from_json(const json& j);

/// {"algorithm", "algebra", "telescoper_algebra", "deltas", "telescopers",
///  "certificates", "assumptions", "certificate_identity"}
json telescoping_to_json(const TelescopingResult& r);
TelescopingResult telescoping_from_json(const json& j);

/// Point values are rational texts such as "-3/4".
json point_to_json(const Point& p);
Point point_from_json(const json& j);

/// The failure list [{"operator", "point", "residue"}, ...].
json residues_to_json(const std::vector<Residue>& r);
std::vector<Residue> residues_from_json(const json& j);

/// {"checked", "failures", "skipped", "degenerate"}
json report_to_json(const OracleReport& r);
OracleReport report_from_json(const json& j);

}  // namespace holo
