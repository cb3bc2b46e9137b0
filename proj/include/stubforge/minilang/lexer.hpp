#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stubforge/minilang/ast.hpp"

namespace stubforge::ml {

enum class TokenKind : std::uint8_t {
  Identifier,
  Keyword,
  IntLiteral,
  RealLiteral,
  StrLiteral,
  Punct,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;   // identifier / keyword / punctuation spelling; decoded contents for strings
  Value literal;      // Int, Real, Str literals (and true/false/null keywords)
  SourceLoc loc;
};

/// Splits minilang source into tokens; throws SyntaxError on malformed input.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);

/// Escapes a string for use as a minilang string literal (including the quotes).
std::string quote_string(std::string_view raw);

}  // namespace stubforge::ml
