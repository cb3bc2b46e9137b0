#include "stubforge/minilang/types.hpp"

namespace stubforge::ml {

Type Type::array_of(Type element) {
  Type t(TypeKind::Array);
  t.element_ = std::make_shared<const Type>(std::move(element));
  return t;
}

std::string Type::str() const {
  switch (kind_) {
    case TypeKind::Void: return "Void";
    case TypeKind::Null: return "Null";
    case TypeKind::Int: return "Int";
    case TypeKind::Real: return "Real";
    case TypeKind::Bool: return "Bool";
    case TypeKind::Str: return "Str";
    case TypeKind::Array: return "[" + element_->str() + "]";
    default: return name_;
  }
}

bool operator==(const Type& a, const Type& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == TypeKind::Array) return *a.element_ == *b.element_;
  return a.name_ == b.name_;
}

bool assignable(const Type& to, const Type& from) {
  if (to == from) return true;
  return from.kind() == TypeKind::Null && to.is_reference();
}

}  // namespace stubforge::ml
