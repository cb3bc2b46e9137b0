#pragma once

#include <stdexcept>
#include <string>

#include "stubforge/minilang/ast.hpp"

namespace stubforge::ml {

/// Diagnostic carrying a source position; `what()` is prefixed with `line:column`.
class LangError : public std::runtime_error {
 public:
  LangError(const std::string& kind, SourceLoc loc, const std::string& message)
      : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
                           kind + ": " + message),
        loc_(loc),
        message_(message) {}

  SourceLoc loc() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  SourceLoc loc_;
  std::string message_;
};

class SyntaxError : public LangError {
 public:
  SyntaxError(SourceLoc loc, const std::string& message) : LangError("syntax error", loc, message) {}
};

class TypeError : public LangError {
 public:
  TypeError(SourceLoc loc, const std::string& message) : LangError("type error", loc, message) {}
};

}  // namespace stubforge::ml
