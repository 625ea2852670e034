#pragma once

#include <functional>

#include "holo/lexer.hpp"
#include "holo/rational_function.hpp"

namespace holo {

/// Recursive-descent parser for `+ - * / ^`, parentheses, integer literals,
/// identifiers and bracketed names such as `S[n]`. Value must provide the
/// arithmetic operators and pow(int).
template <class Value>
class ArithParser {
 public:
  struct Hooks {
    std::function<Value(const mpq_class&)> number;
    std::function<Value(const Token&)> identifier;
    /// name and the raw text between the brackets; may be empty.
    std::function<Value(const Token&, const std::string&)> bracketed;
  };

  ArithParser(std::string_view text, Hooks hooks) : ts_(text), hooks_(std::move(hooks)) {}

  Value parse() {
    Value v = expr();
    if (!ts_.at_end()) ts_.fail("unexpected token");
    return v;
  }

 private:
  Value expr() {
    Value v = term();
    for (;;) {
      if (ts_.accept('+'))
        v = v + term();
      else if (ts_.accept('-'))
        v = v - term();
      else
        return v;
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (ts_.accept('*')) {
        v = v * unary();
      } else if (ts_.is_symbol('/')) {
        Token t = ts_.next();
        Value d = unary();
        try {
          v = v / d;
        } catch (const MathError& e) {
          TokenStream::fail_at(t, e.what());
        }
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (ts_.accept('-')) return hooks_.number(-1) * unary();
    if (ts_.accept('+')) return unary();
    return power();
  }

  Value power() {
    Value base = atom();
    if (!ts_.accept('^')) return base;
    Token at = ts_.peek();
    int k = exponent();
    try {
      return base.pow(k);
    } catch (const MathError& e) {
      TokenStream::fail_at(at, e.what());
    }
  }

  int exponent() {
    bool paren = ts_.accept('(');
    bool neg = false;
    if (paren && ts_.accept('-')) neg = true;
    const Token& t = ts_.peek();
    if (t.kind != TokenKind::number) ts_.fail("expected an integer exponent");
    if (t.text.size() > 6) ts_.fail("exponent too large");
    int k = std::stoi(t.text);
    ts_.next();
    if (paren) ts_.expect(')');
    return neg ? -k : k;
  }

  Value atom() {
    const Token& t = ts_.peek();
    if (t.kind == TokenKind::number) {
      ts_.next();
      return hooks_.number(mpq_class(mpz_class(t.text)));
    }
    if (t.kind == TokenKind::identifier) {
      Token id = ts_.next();
      if (ts_.is_symbol('[')) {
        ts_.next();
        std::string inner;
        while (!ts_.is_symbol(']')) {
          if (ts_.at_end()) ts_.fail("expected ']'");
          inner += ts_.next().text;
        }
        ts_.next();
        return hooks_.bracketed(id, inner);
      }
      if (ts_.is_symbol('(')) ts_.fail("function calls are not allowed here");
      return hooks_.identifier(id);
    }
    if (ts_.accept('(')) {
      Value v = expr();
      ts_.expect(')');
      return v;
    }
    ts_.fail("expected a number, a name or '('");
  }

  TokenStream ts_;
  Hooks hooks_;
};

/// Parses a rational function over ctx; unknown identifiers are errors.
RationalFunction parse_rational_function(std::string_view text, const ContextPtr& ctx);

}  // namespace holo
