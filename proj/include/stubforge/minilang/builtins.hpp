#pragma once

#include <string_view>
#include <vector>

#include "stubforge/minilang/types.hpp"

namespace stubforge::ml {

enum class BuiltinId : std::uint8_t {
  Len,
  Str,
  Sha1Hex,
  Substr,
  StartsWith,
  EndsWith,
  Contains,
  Abs,
  Size,  // generic over arrays
  Push,  // generic over arrays
};

struct Builtin {
  BuiltinId id;
  std::string_view name;
  std::vector<Type> params;  // empty for generic builtins
  Type ret;
  bool generic = false;
};

const std::vector<Builtin>& builtins();
/// Index into builtins(), or -1.
int find_builtin(std::string_view name);

}  // namespace stubforge::ml
