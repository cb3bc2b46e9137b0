#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stubforge/stubir/stubir.hpp"

namespace stubforge::evolve {

using ml::Type;
using ml::Value;
using stubir::ApiSymbolPtr;

/// Literals and API symbols the search draws from.
struct SymbolPool {
  std::vector<Value> literals;          // Int, Real, Bool and Str; first appearance order
  std::vector<ApiSymbolPtr> symbols;    // declared API plus builtins named in the sources
  std::vector<std::string> interfaces;  // mockable types: the test's mocks first, then declared

  /// Literals of the scalar type `t`.
  std::vector<Value> literals_of(const Type& t) const;
  /// Symbols whose result type is exactly `t`.
  std::vector<ApiSymbolPtr> producers_of(const Type& t) const;
  bool mockable(const Type& t) const;
};

/// Harvests literals lexically from the test, the CUT and (when given) the broken stub, which
/// only needs to tokenize. `null` is not harvested.
SymbolPool construct_symbol_pool(const ml::TestCase& test, const ml::Program& program,
                                 std::optional<std::string_view> broken = std::nullopt);

}  // namespace stubforge::evolve
