#pragma once

#include <map>
#include <string>
#include <vector>

#include "holo/closure.hpp"
#include "holo/expression.hpp"

namespace holo {

/// A function given only by its defining system: the system lives in its own
/// algebra and parameters name the field variables bound to the call
/// arguments, in order.
struct UserAtom {
  std::string name;
  std::vector<std::string> parameters;
  std::vector<OrePolynomial> system;
};

/// Atoms known to the annihilator beyond the built-in families.
class KnowledgeBase {
 public:
  void define(UserAtom atom);
  const UserAtom* find(const std::string& name) const;
  /// Built-in functions plus the user atoms, for the parser.
  FunctionTable functions() const;

  /// Defining system of a built-in special function family (chebyshevT,
  /// legendreP, laguerreL) over its own algebra with variables n, (a,) z.
  static GroebnerBasis family_system(const std::string& name);

 private:
  std::map<std::string, UserAtom> user_;
};

/// Algebra with the given generators over all free symbols of e (exponent
/// names of q-shifts excluded) plus extra parameters.
AlgebraPtr algebra_for(const ExprPtr& e, const std::vector<Generator>& generators,
                       const std::vector<std::string>& parameters = {});

Representation annihilator_representation(const ExprPtr& e, const AlgebraPtr& algebra,
                                          const KnowledgeBase& kb = {});
/// Reduced Groebner basis of an annihilating ideal of e in the algebra.
GroebnerBasis annihilator(const ExprPtr& e, const AlgebraPtr& algebra, const KnowledgeBase& kb = {});
GroebnerBasis annihilator(std::string_view text, const AlgebraPtr& algebra, const KnowledgeBase& kb = {});

}  // namespace holo
