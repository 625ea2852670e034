#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace holo {

enum class ExprKind { number, symbol, add, sub, mul, div, neg, pow, call };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Node of a closed-form expression. Function atoms, sums and integrals are
/// call nodes: sum(body, k, lo, hi) and integrate(body, x, lo, hi).
struct Expr {
  ExprKind kind = ExprKind::number;
  mpq_class value;
  std::string name;
  std::vector<ExprPtr> args;
  std::size_t line = 0;
  std::size_t column = 0;
};

ExprPtr make_number(const mpq_class& v);
ExprPtr make_symbol(std::string name);
ExprPtr make_unary(ExprKind kind, ExprPtr a);
ExprPtr make_binary(ExprKind kind, ExprPtr a, ExprPtr b);
ExprPtr make_call(std::string name, std::vector<ExprPtr> args);

/// Function names accepted by the parser with their arity.
class FunctionTable {
 public:
  /// The built-in atoms plus sum and integrate.
  static FunctionTable builtin();
  void add(const std::string& name, std::size_t arity) { arity_[name] = arity; }
  std::optional<std::size_t> arity(const std::string& name) const;

 private:
  std::map<std::string, std::size_t> arity_;
};

/// Parses the expression grammar. Throws ParseError with line and column.
ExprPtr parse_expression(std::string_view text, const FunctionTable& functions = FunctionTable::builtin());

/// Canonical text; parse_expression(to_string(e)) rebuilds the same tree.
std::string to_string(const ExprPtr& e);
bool equal(const ExprPtr& a, const ExprPtr& b);

/// Symbols occurring free (bound variables of sum/integrate excluded).
std::set<std::string> free_symbols(const ExprPtr& e);
bool is_quantifier(const ExprPtr& e);

/// Replaces free occurrences of a symbol.
ExprPtr substitute(const ExprPtr& e, const std::string& symbol, const ExprPtr& value);

}  // namespace holo
