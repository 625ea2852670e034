#pragma once

#include <memory>
#include <string>
#include <vector>

#include "holo/rational_function.hpp"

namespace holo {

enum class GeneratorKind { shift, derivative, qshift };

/// One generator of the algebra. For qshift, `variable` is the symbol standing
/// for q^v, `q` the base parameter and `exponent` the name v used in powers.
struct Generator {
  GeneratorKind kind = GeneratorKind::shift;
  std::string variable;
  std::string q;
  std::string exponent;

  std::string name() const;
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Parses `S[n], S[a], Der[x]` or `QS[qk,q]` (optionally `QS[qk,q,k]`).
std::vector<Generator> parse_generators(std::string_view text);
Generator parse_generator(std::string_view name, std::string_view inner);

class OreAlgebra;
using AlgebraPtr = std::shared_ptr<const OreAlgebra>;

/// An Ore algebra F<d_1..d_m> over F = Q(field variables). In elimination mode
/// some variables acted on by generators are promoted to commuting monomial
/// slots placed before the generator slots.
class OreAlgebra {
 public:
  /// variables: extra coefficient variables (parameters and free symbols).
  /// Generator variables are added automatically. Field variables are sorted.
  static AlgebraPtr create(std::vector<Generator> generators, std::vector<std::string> variables = {},
                           std::vector<std::string> elimination = {});

  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<std::string>& elimination() const { return elimination_; }
  /// Coefficient field (excludes elimination variables).
  const ContextPtr& field() const { return field_; }
  /// Field plus elimination variables; used to act on functions.
  const ContextPtr& full() const { return full_; }

  std::size_t slots() const { return elimination_.size() + generators_.size(); }
  std::size_t generator_slot(std::size_t g) const { return elimination_.size() + g; }
  bool is_elimination_slot(std::size_t s) const { return s < elimination_.size(); }
  std::optional<std::size_t> find_generator(std::string_view variable) const;
  std::optional<std::size_t> find_generator_by_name(std::string_view name) const;
  /// Index in field() of the variable acted on by generator g, or nullopt when eliminated.
  std::optional<std::size_t> field_index(std::size_t g) const { return field_index_[g]; }
  std::optional<std::size_t> q_index(std::size_t g) const { return q_index_[g]; }
  /// Elimination slot of generator g's variable, if eliminated.
  std::optional<std::size_t> elimination_slot(std::size_t g) const { return elim_slot_[g]; }
  /// Generator acting on elimination slot s.
  std::size_t generator_of_slot(std::size_t s) const { return slot_generator_[s]; }
  std::string slot_name(std::size_t s) const;

  /// Same generators with a different elimination set (and the same field names).
  AlgebraPtr with_elimination(std::vector<std::string> vars) const;
  /// The algebra restricted to a subset of generators, over the given field variables.
  AlgebraPtr subalgebra(const std::vector<std::string>& generator_names, std::vector<std::string> variables) const;

  std::string declaration() const;
  bool same_as(const OreAlgebra& o) const;

 private:
  OreAlgebra() = default;

  std::vector<Generator> generators_;
  std::vector<std::string> elimination_;
  ContextPtr field_;
  ContextPtr full_;
  std::vector<std::optional<std::size_t>> field_index_;
  std::vector<std::optional<std::size_t>> q_index_;
  std::vector<std::optional<std::size_t>> elim_slot_;
  std::vector<std::size_t> slot_generator_;
};

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

/// Power product over the algebra slots plus a module position (0 for ideals).
struct Monomial {
  Exponents exps;
  std::uint32_t position = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical storage order: position ascending, then deglex descending.
struct CanonicalOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.position != b.position) return a.position < b.position;
    return deglex_compare(a.exps, b.exps) > 0;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = m.position;
    for (auto e : m.exps.e) h = h * 1000003u + e;
    return h;
  }
};

/// Monomial orders used by the Groebner engine.
class MonomialOrder {
 public:
  enum class Kind { deglex, lex, block };

  MonomialOrder() = default;
  /// precedence lists slots from most to least significant; empty = slot order.
  static MonomialOrder deglex(std::vector<std::size_t> precedence = {});
  static MonomialOrder lex(std::vector<std::size_t> precedence = {});
  /// Slots in block_mask are compared first (deglex), then the rest (deglex).
  static MonomialOrder block(std::uint32_t block_mask, std::vector<std::size_t> precedence = {});
  /// Position over term on top of this order.
  MonomialOrder pot() const;

  Kind kind() const { return kind_; }
  bool is_pot() const { return pot_; }
  std::uint32_t block_mask() const { return block_mask_; }
  const std::vector<std::size_t>& precedence() const { return precedence_; }

  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string describe() const;
  static MonomialOrder parse(std::string_view text);
  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  int lex_part(const Exponents& a, const Exponents& b, std::uint32_t mask) const;
  int deglex_part(const Exponents& a, const Exponents& b, std::uint32_t mask) const;

  Kind kind_ = Kind::deglex;
  bool pot_ = false;
  std::uint32_t block_mask_ = 0;
  std::vector<std::size_t> precedence_;
};

}  // namespace holo
