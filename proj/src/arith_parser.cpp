#include "holo/arith_parser.hpp"

#include <cctype>

namespace holo {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    std::size_t j = i;
    if (std::isdigit(c)) {
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({TokenKind::number, std::string(text.substr(i, j - i)), line, col});
    } else if (std::isalpha(c) || c == '_') {
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({TokenKind::identifier, std::string(text.substr(i, j - i)), line, col});
    } else if (std::string_view("+-*/^()[],;=:").find(char(c)) != std::string_view::npos) {
      j = i + 1;
      out.push_back({TokenKind::symbol, std::string(1, char(c)), line, col});
    } else {
      throw ParseError(std::string("unexpected character '") + char(c) + "'", line, col);
    }
    advance(j - i);
  }
  out.push_back({TokenKind::end, "", line, col});
  return out;
}

RationalFunction parse_rational_function(std::string_view text, const ContextPtr& ctx) {
  ArithParser<RationalFunction>::Hooks hooks;
  hooks.number = [&](const mpq_class& q) { return RationalFunction(ctx, q); };
  hooks.identifier = [&](const Token& t) {
    auto idx = ctx->index_of(t.text);
    if (!idx) TokenStream::fail_at(t, "unknown variable '" + t.text + "'");
    return RationalFunction::variable(ctx, *idx);
  };
  hooks.bracketed = [&](const Token& t, const std::string&) -> RationalFunction {
    TokenStream::fail_at(t, "operator '" + t.text + "[...]' in a rational function");
  };
  return ArithParser<RationalFunction>(text, std::move(hooks)).parse();
}

}  // namespace holo
