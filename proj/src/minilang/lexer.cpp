#include "stubforge/minilang/lexer.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "stubforge/minilang/errors.hpp"

namespace stubforge::ml {

namespace {

constexpr std::array<std::string_view, 33> kKeywords = {
    "record", "exception", "interface", "class",  "fn",         "new",        "field",
    "let",    "if",        "else",      "while",  "return",     "throw",      "try",
    "catch",  "break",     "continue",  "true",   "false",      "null",       "self",
    "test",   "mock",      "stub",      "act",    "assert",     "when",       "thenReturn",
    "thenThrow", "any",    "verify",    "Void",   "Int",
};

// Multi-character punctuation first so the longest match wins.
constexpr std::array<std::string_view, 27> kPunct = {
    "->", "==", "!=", "<=", ">=", "&&", "||", "+", "-", "*", "/", "%", "<", ">",
    "=",  "!",  ".",  ",",  ";",  ":",  "(",  ")", "{", "}", "[", "]", "?",
};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token tok;
      tok.loc = here();
      if (pos_ >= src_.size()) {
        tok.kind = TokenKind::End;
        out.push_back(std::move(tok));
        return out;
      }
      const char c = src_[pos_];
      if (ident_start(c)) {
        lex_word(tok);
      } else if (digit(c)) {
        lex_number(tok);
      } else if (c == '"') {
        lex_string(tok);
      } else {
        lex_punct(tok);
      }
      out.push_back(std::move(tok));
    }
  }

 private:
  SourceLoc here() const { return {line_, col_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        const SourceLoc start = here();
        advance();
        advance();
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= src_.size()) throw SyntaxError(start, "unterminated comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  void lex_word(Token& tok) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
    tok.text = std::string(src_.substr(start, pos_ - start));
    if (tok.text == "true" || tok.text == "false") {
      tok.kind = TokenKind::Keyword;
      tok.literal = Value::boolean(tok.text == "true");
    } else if (is_keyword(tok.text)) {
      tok.kind = TokenKind::Keyword;
    } else {
      tok.kind = TokenKind::Identifier;
    }
  }

  void lex_number(Token& tok) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && digit(src_[pos_])) advance();
    bool real = false;
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' && digit(src_[pos_ + 1])) {
      real = true;
      advance();
      while (pos_ < src_.size() && digit(src_[pos_])) advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && digit(src_[look])) {
        real = true;
        while (pos_ < look) advance();
        while (pos_ < src_.size() && digit(src_[pos_])) advance();
      }
    }
    if (pos_ < src_.size() && ident_start(src_[pos_]))
      throw SyntaxError(here(), "malformed number");
    tok.text = std::string(src_.substr(start, pos_ - start));
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    if (real) {
      double v = 0;
      auto [p, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || p != last) throw SyntaxError(tok.loc, "bad real literal");
      tok.kind = TokenKind::RealLiteral;
      tok.literal = Value::real(v);
    } else {
      std::int64_t v = 0;
      auto [p, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || p != last) throw SyntaxError(tok.loc, "integer literal out of range");
      tok.kind = TokenKind::IntLiteral;
      tok.literal = Value::integer(v);
    }
  }

  void lex_string(Token& tok) {
    advance();  // opening quote
    std::string out;
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n')
        throw SyntaxError(tok.loc, "unterminated string literal");
      const char c = src_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c != '\\') {
        out.push_back(c);
        advance();
        continue;
      }
      advance();
      if (pos_ >= src_.size()) throw SyntaxError(tok.loc, "unterminated string literal");
      const char e = src_[pos_];
      advance();
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case 'u': {
          if (pos_ + 4 > src_.size()) throw SyntaxError(here(), "bad \\u escape");
          std::uint32_t cp = 0;
          auto [p, ec] = std::from_chars(src_.data() + pos_, src_.data() + pos_ + 4, cp, 16);
          if (ec != std::errc() || p != src_.data() + pos_ + 4)
            throw SyntaxError(here(), "bad \\u escape");
          for (int i = 0; i < 4; ++i) advance();
          append_utf8(out, cp);
          break;
        }
        default:
          throw SyntaxError(here(), std::string("unknown escape \\") + e);
      }
    }
    tok.kind = TokenKind::StrLiteral;
    tok.text = out;
    tok.literal = Value::string(std::move(out));
  }

  void lex_punct(Token& tok) {
    for (std::string_view p : kPunct) {
      if (src_.substr(pos_, p.size()) == p) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        tok.kind = TokenKind::Punct;
        tok.text = std::string(p);
        return;
      }
    }
    throw SyntaxError(here(), std::string("unexpected character '") + src_[pos_] + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (std::string_view k : kKeywords)
    if (k == word) return true;
  return word == "Real" || word == "Bool" || word == "Str";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

std::string quote_string(std::string_view raw) {
  std::string out = "\"";
  for (char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace stubforge::ml
