#include "stubforge/evolve/symbol_pool.hpp"

#include <set>

#include "stubforge/minilang/builtins.hpp"
#include "stubforge/minilang/errors.hpp"
#include "stubforge/minilang/lexer.hpp"

namespace stubforge::evolve {

namespace {

bool literal_kind(const Value& v) {
  switch (v.kind()) {
    case ml::ValueKind::Int:
    case ml::ValueKind::Real:
    case ml::ValueKind::Bool:
    case ml::ValueKind::Str:
      return true;
    default:
      return false;
  }
}

// Tokens up to the first lexical error; a broken stub is only mined, never parsed.
std::vector<ml::Token> tokens_of(std::string_view source) {
  try {
    return ml::tokenize(source);
  } catch (const ml::LangError&) {
  }
  std::size_t good = 0;
  std::vector<ml::Token> best;
  for (std::size_t cut = source.size(); cut > good; --cut) {
    try {
      best = ml::tokenize(source.substr(0, cut));
      break;
    } catch (const ml::LangError&) {
    }
  }
  return best;
}

}  // namespace

std::vector<Value> SymbolPool::literals_of(const Type& t) const {
  std::vector<Value> out;
  for (const auto& v : literals) {
    const bool match = (t.kind() == ml::TypeKind::Int && v.kind() == ml::ValueKind::Int) ||
                       (t.kind() == ml::TypeKind::Real && v.kind() == ml::ValueKind::Real) ||
                       (t.kind() == ml::TypeKind::Bool && v.kind() == ml::ValueKind::Bool) ||
                       (t.kind() == ml::TypeKind::Str && v.kind() == ml::ValueKind::Str);
    if (match) out.push_back(v);
  }
  return out;
}

std::vector<ApiSymbolPtr> SymbolPool::producers_of(const Type& t) const {
  std::vector<ApiSymbolPtr> out;
  for (const auto& s : symbols)
    if (s->ret == t) out.push_back(s);
  return out;
}

bool SymbolPool::mockable(const Type& t) const {
  if (t.kind() != ml::TypeKind::Interface) return false;
  for (const auto& i : interfaces)
    if (i == t.name()) return true;
  return false;
}

SymbolPool construct_symbol_pool(const ml::TestCase& test, const ml::Program& program,
                                 std::optional<std::string_view> broken) {
  SymbolPool pool;
  std::set<std::string> identifiers;

  auto harvest = [&](std::string_view source) {
    for (const auto& tok : tokens_of(source)) {
      if (tok.kind == ml::TokenKind::Identifier) identifiers.insert(tok.text);
      const bool lit = tok.kind == ml::TokenKind::IntLiteral || tok.kind == ml::TokenKind::RealLiteral ||
                       tok.kind == ml::TokenKind::StrLiteral ||
                       (tok.kind == ml::TokenKind::Keyword && (tok.text == "true" || tok.text == "false"));
      if (!lit || !literal_kind(tok.literal)) continue;
      bool seen = false;
      for (const auto& v : pool.literals)
        if (v.kind() == tok.literal.kind() && ml::deep_equal(v, tok.literal)) seen = true;
      if (!seen) pool.literals.push_back(tok.literal);
    }
  };
  harvest(test.source);
  harvest(program.source);
  if (broken) harvest(*broken);

  for (auto& s : stubir::api_symbols(program)) {
    const bool builtin = s->kind == stubir::ApiKind::Function && program.find_function(s->name) < 0 &&
                         ml::find_builtin(s->name) >= 0;
    if (builtin && !identifiers.count(s->name)) continue;
    pool.symbols.push_back(std::move(s));
  }

  for (const auto& m : test.mocks)
    if (m.type.kind() == ml::TypeKind::Interface) {
      bool seen = false;
      for (const auto& i : pool.interfaces) seen = seen || i == m.type.name();
      if (!seen) pool.interfaces.push_back(m.type.name());
    }
  for (const auto& i : program.interfaces) {
    bool seen = false;
    for (const auto& n : pool.interfaces) seen = seen || n == i.name;
    if (!seen) pool.interfaces.push_back(i.name);
  }
  return pool;
}

}  // namespace stubforge::evolve
