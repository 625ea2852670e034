#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holo/closure.hpp"
#include "holo/expression.hpp"

namespace holo {

/// Summation and integration variables in order. The kind of Delta_v follows
/// the generator of v in the algebra: S_v - 1 for shifts, QS_v - 1 for q-shifts
/// and D_v for derivations.
struct DeltaSpec {
  std::vector<std::string> variables;
};

/// Accepts "S[i]-1, S[j]-1", "Der[x]", "QS[qk,q]-1" or bare variable names.
DeltaSpec parse_deltas(std::string_view text);

/// Delta_v as an element of the algebra.
OrePolynomial delta_operator(const AlgebraPtr& algebra, const std::string& variable);

struct Split {
  OrePolynomial telescoper;
  std::vector<OrePolynomial> certificates;
};

/// P = T + sum_i Delta_i * C_i with T free of the Delta generators. The
/// coefficients of P must not depend on the delta variables.
Split split_delta(const OrePolynomial& p, const DeltaSpec& deltas);

struct TelescopingResult {
  std::string algorithm;
  AlgebraPtr algebra;
  /// K(w)<d_w>: the target generators over the field without the delta variables.
  AlgebraPtr telescoper_algebra;
  DeltaSpec deltas;
  std::vector<OrePolynomial> telescopers;
  /// One list C_1..C_j per telescoper; empty when certificates are not computed.
  std::vector<std::vector<OrePolynomial>> certificates;
  std::vector<std::string> assumptions;
  /// The certificate identity was checked and holds for every telescoper.
  bool verified = false;

  GroebnerBasis telescoper_basis() const;
};

/// T + sum_i Delta_i * C_i for telescoper k, over the input algebra.
OrePolynomial certificate_identity(const TelescopingResult& r, std::size_t k);
/// True when every certificate identity reduces to zero modulo i.
bool verify_certificates(const TelescopingResult& r, const GroebnerBasis& i);

/// Elimination of the delta variables followed by split_delta.
TelescopingResult ct_slow(const GroebnerBasis& i, const DeltaSpec& deltas, const std::vector<std::string>& target,
                          const GroebnerOptions& options = {});

struct TakayamaOptions {
  unsigned max_degree = 10;
  /// Stop once the telescoper ideal has at most this rank; otherwise stop at
  /// the first ideal of finite rank.
  std::optional<std::size_t> expected_rank;
  GroebnerOptions groebner;
};

/// Telescopers for sums and integrals with natural boundaries; no certificates.
/// The target generators are all generators that are not deltas.
TelescopingResult ct_takayama(const GroebnerBasis& i, const DeltaSpec& deltas, const TakayamaOptions& options = {});

struct HeuristicOptions {
  /// Largest total degree of a telescoper leading monomial.
  unsigned max_order = 6;
  unsigned max_numerator_degree = 20;
  /// Denominator candidates are products of at most this many factors before
  /// the full factor set and its square are tried.
  unsigned max_factors = 4;
  std::size_t max_unknowns = 200;
  std::uint64_t seed = 1;
  /// Stop after this many telescopers (0 = until the staircase closes).
  std::size_t max_telescopers = 0;
};

/// Ansatz with unknown telescoper coefficients in K(w) and certificates over
/// the staircase of i with rational coefficients of prescribed denominators.
TelescopingResult ct_heuristic(const GroebnerBasis& i, const DeltaSpec& deltas, const std::vector<std::string>& target,
                               const HeuristicOptions& options = {});

struct RelationOptions {
  /// Field symbols that must not occur in the coefficients.
  std::vector<std::string> eliminate;
  /// Fixed support; when empty, supports grow along the monomial order.
  std::vector<Monomial> support;
  unsigned max_degree = 6;
};

/// Operators in the ideal of g whose coefficients avoid the eliminated symbols,
/// with minimal supports. They live in the algebra of g over the smaller field.
std::vector<OrePolynomial> find_relation(const GroebnerBasis& g, const RelationOptions& options);

struct Bound {
  ExprPtr lower;
  ExprPtr upper;
};

/// One bracket -[C_i f] between the bounds of v_i, still summed or integrated
/// over the remaining variables. For discrete v the upper evaluation point is
/// upper + 1.
struct BoundaryTerm {
  std::string variable;
  OrePolynomial certificate;
  ExprPtr at_lower;
  ExprPtr at_upper;
  std::map<std::string, Bound> remaining;
};

/// The inhomogeneous part of T applied to the sum or integral, per telescoper.
struct BoundaryExpression {
  ExprPtr summand;
  std::vector<std::vector<BoundaryTerm>> terms;
  /// Set when the brackets are declared zero.
  bool natural = false;
  std::vector<std::string> assumptions;
};

BoundaryExpression assemble_boundary(const TelescopingResult& r, const ExprPtr& summand,
                                     const std::map<std::string, Bound>& bounds, bool natural = false);

}  // namespace holo
