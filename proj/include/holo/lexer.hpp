#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "holo/error.hpp"

namespace holo {

enum class TokenKind { number, identifier, symbol, end };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// Splits text into integer literals, identifiers and single-character symbols.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token list with error reporting at the current token.
class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : tokens_(tokenize(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == TokenKind::end; }
  bool is_symbol(char c, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == TokenKind::symbol && t.text[0] == c;
  }
  bool accept(char c) {
    if (!is_symbol(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& message) const { fail_at(peek(), message); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& message) {
    std::string found = t.kind == TokenKind::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(message + ", found " + found, t.line, t.column);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace holo
