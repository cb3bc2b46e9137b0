#include "stubforge/minilang/builtins.hpp"

namespace stubforge::ml {

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> table = [] {
    const Type i = Type::int_type();
    const Type s = Type::str_type();
    const Type b = Type::bool_type();
    return std::vector<Builtin>{
        {BuiltinId::Len, "len", {s}, i},
        {BuiltinId::Str, "str", {i}, s},
        {BuiltinId::Sha1Hex, "sha1Hex", {s}, s},
        {BuiltinId::Substr, "substr", {s, i, i}, s},
        {BuiltinId::StartsWith, "startsWith", {s, s}, b},
        {BuiltinId::EndsWith, "endsWith", {s, s}, b},
        {BuiltinId::Contains, "contains", {s, s}, b},
        {BuiltinId::Abs, "abs", {i}, i},
        {BuiltinId::Size, "size", {}, i, true},
        {BuiltinId::Push, "push", {}, Type::void_type(), true},
    };
  }();
  return table;
}

int find_builtin(std::string_view name) {
  const auto& table = builtins();
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i].name == name) return static_cast<int>(i);
  return -1;
}

}  // namespace stubforge::ml
