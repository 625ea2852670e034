#include "holo/expression.hpp"

#include "holo/lexer.hpp"

namespace holo {

ExprPtr make_number(const mpq_class& v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::number;
  e->value = v;
  return e;
}

ExprPtr make_symbol(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::symbol;
  e->name = std::move(name);
  return e;
}

ExprPtr make_unary(ExprKind kind, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->args = {std::move(a)};
  return e;
}

ExprPtr make_binary(ExprKind kind, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->args = {std::move(a), std::move(b)};
  return e;
}

ExprPtr make_call(std::string name, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::call;
  e->name = std::move(name);
  e->args = std::move(args);
  return e;
}

FunctionTable FunctionTable::builtin() {
  FunctionTable t;
  for (auto [name, arity] : std::initializer_list<std::pair<const char*, std::size_t>>{
           {"factorial", 1},
           {"binomial", 2},
           {"pochhammer", 2},
           {"qpochhammer", 3},
           {"power", 2},
           {"exp", 1},
           {"sqrt", 1},
           {"chebyshevT", 2},
           {"legendreP", 2},
           {"laguerreL", 3},
           {"sum", 4},
           {"integrate", 4}})
    t.add(name, arity);
  return t;
}

std::optional<std::size_t> FunctionTable::arity(const std::string& name) const {
  auto it = arity_.find(name);
  if (it == arity_.end()) return std::nullopt;
  return it->second;
}

bool is_quantifier(const ExprPtr& e) {
  return e->kind == ExprKind::call && (e->name == "sum" || e->name == "integrate");
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const FunctionTable& functions) : ts_(text), functions_(functions) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (!ts_.at_end()) ts_.fail("unexpected token");
    return e;
  }

 private:
  static ExprPtr located(ExprPtr e, const Token& t) {
    auto m = std::const_pointer_cast<Expr>(e);
    m->line = t.line;
    m->column = t.column;
    return m;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      Token t = ts_.peek();
      if (ts_.accept('+'))
        e = located(make_binary(ExprKind::add, e, term()), t);
      else if (ts_.accept('-'))
        e = located(make_binary(ExprKind::sub, e, term()), t);
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      Token t = ts_.peek();
      if (ts_.accept('*'))
        e = located(make_binary(ExprKind::mul, e, unary()), t);
      else if (ts_.accept('/'))
        e = located(make_binary(ExprKind::div, e, unary()), t);
      else
        return e;
    }
  }

  ExprPtr unary() {
    Token t = ts_.peek();
    if (ts_.accept('-')) return located(make_unary(ExprKind::neg, unary()), t);
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    Token t = ts_.peek();
    if (!ts_.accept('^')) return base;
    return located(make_binary(ExprKind::pow, base, unary()), t);
  }

  ExprPtr atom() {
    Token t = ts_.peek();
    if (t.kind == TokenKind::number) {
      ts_.next();
      return located(make_number(mpq_class(mpz_class(t.text))), t);
    }
    if (t.kind == TokenKind::identifier) {
      ts_.next();
      if (!ts_.is_symbol('(')) return located(make_symbol(t.text), t);
      auto arity = functions_.arity(t.text);
      if (!arity) TokenStream::fail_at(t, "unknown function '" + t.text + "'");
      ts_.next();
      std::vector<ExprPtr> args;
      if (!ts_.is_symbol(')')) {
        args.push_back(expr());
        while (!ts_.is_symbol(')')) {
          if (!ts_.accept(',')) ts_.fail("expected ',' or ')'");
          args.push_back(expr());
        }
      }
      ts_.next();
      if (args.size() != *arity)
        TokenStream::fail_at(t, t.text + " takes " + std::to_string(*arity) + " arguments, got " +
                                    std::to_string(args.size()));
      ExprPtr call = located(make_call(t.text, std::move(args)), t);
      if (is_quantifier(call)) check_quantifier(call, t);
      return call;
    }
    if (ts_.accept('(')) {
      ExprPtr e = expr();
      ts_.expect(')');
      return e;
    }
    ts_.fail("expected a number, a name or '('");
  }

  static void check_quantifier(const ExprPtr& call, const Token& t) {
    const auto& var = call->args[1];
    if (var->kind != ExprKind::symbol) TokenStream::fail_at(t, call->name + " needs a variable as second argument");
    for (std::size_t i = 2; i < 4; ++i)
      if (free_symbols(call->args[i]).count(var->name))
        TokenStream::fail_at(t, "bound variable " + var->name + " occurs in a bound");
  }

  TokenStream ts_;
  const FunctionTable& functions_;
};

int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::add:
    case ExprKind::sub:
      return 1;
    case ExprKind::mul:
    case ExprKind::div:
      return 2;
    case ExprKind::neg:
      return 3;
    case ExprKind::pow:
      return 4;
    case ExprKind::number:
      if (sgn(e->value) < 0) return 3;
      return e->value.get_den() == 1 ? 5 : 2;
    default:
      return 5;
  }
}

std::string wrap(const ExprPtr& e, bool parens) { return parens ? "(" + to_string(e) + ")" : to_string(e); }

}  // namespace

ExprPtr parse_expression(std::string_view text, const FunctionTable& functions) {
  return Parser(text, functions).parse();
}

std::string to_string(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::number:
      return e->value.get_str();
    case ExprKind::symbol:
      return e->name;
    case ExprKind::neg:
      return "-" + wrap(e->args[0], precedence(e->args[0]) < 3);
    case ExprKind::call: {
      std::string s = e->name + "(";
      for (std::size_t i = 0; i < e->args.size(); ++i) s += (i ? ", " : "") + to_string(e->args[i]);
      return s + ")";
    }
    default:
      break;
  }
  static const char* ops[] = {"", "", "+", "-", "*", "/", "", "^"};
  int p = precedence(e);
  const auto& a = e->args[0];
  const auto& b = e->args[1];
  if (e->kind == ExprKind::pow) return wrap(a, precedence(a) <= p) + "^" + wrap(b, precedence(b) < 5);
  return wrap(a, precedence(a) < p) + ops[int(e->kind)] + wrap(b, precedence(b) <= p);
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind || a->args.size() != b->args.size()) return false;
  if (a->kind == ExprKind::number && a->value != b->value) return false;
  if ((a->kind == ExprKind::symbol || a->kind == ExprKind::call) && a->name != b->name) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

std::set<std::string> free_symbols(const ExprPtr& e) {
  std::set<std::string> out;
  if (e->kind == ExprKind::symbol) {
    out.insert(e->name);
    return out;
  }
  if (is_quantifier(e)) {
    out = free_symbols(e->args[0]);
    out.erase(e->args[1]->name);
    for (std::size_t i = 2; i < 4; ++i) {
      auto s = free_symbols(e->args[i]);
      out.insert(s.begin(), s.end());
    }
    return out;
  }
  for (const auto& a : e->args) {
    auto s = free_symbols(a);
    out.insert(s.begin(), s.end());
  }
  return out;
}

ExprPtr substitute(const ExprPtr& e, const std::string& symbol, const ExprPtr& value) {
  if (e->kind == ExprKind::symbol) return e->name == symbol ? value : e;
  if (e->args.empty()) return e;
  if (is_quantifier(e) && e->args[1]->name == symbol) {
    auto out = std::make_shared<Expr>(*e);
    for (std::size_t i = 2; i < 4; ++i) out->args[i] = substitute(e->args[i], symbol, value);
    return out;
  }
  auto out = std::make_shared<Expr>(*e);
  for (auto& a : out->args) a = substitute(a, symbol, value);
  return out;
}

}  // namespace holo
