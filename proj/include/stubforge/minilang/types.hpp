#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace stubforge::ml {

enum class TypeKind : std::uint8_t {
  Void,
  Null,
  Int,
  Real,
  Bool,
  Str,
  Array,
  Named,  // unresolved name straight out of the parser
  Record,
  Class,
  Interface,
  Exception,
};

/// Static type of a minilang expression or declaration.
class Type {
 public:
  Type() = default;

  static Type void_type() { return Type(TypeKind::Void); }
  static Type null_type() { return Type(TypeKind::Null); }
  static Type int_type() { return Type(TypeKind::Int); }
  static Type real_type() { return Type(TypeKind::Real); }
  static Type bool_type() { return Type(TypeKind::Bool); }
  static Type str_type() { return Type(TypeKind::Str); }
  static Type array_of(Type element);
  static Type named(std::string name) { return Type(TypeKind::Named, std::move(name)); }
  static Type declared(TypeKind kind, std::string name) { return Type(kind, std::move(name)); }

  TypeKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Type& element() const { return *element_; }

  bool is_void() const { return kind_ == TypeKind::Void; }
  bool is_numeric() const { return kind_ == TypeKind::Int || kind_ == TypeKind::Real; }
  bool is_scalar() const {
    return kind_ == TypeKind::Int || kind_ == TypeKind::Real || kind_ == TypeKind::Bool ||
           kind_ == TypeKind::Str;
  }
  /// Reference types admit `null`.
  bool is_reference() const {
    return kind_ == TypeKind::Array || kind_ == TypeKind::Record || kind_ == TypeKind::Class ||
           kind_ == TypeKind::Interface || kind_ == TypeKind::Exception;
  }

  std::string str() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator<(const Type& a, const Type& b) { return a.str() < b.str(); }

 private:
  explicit Type(TypeKind kind, std::string name = {}) : kind_(kind), name_(std::move(name)) {}

  TypeKind kind_ = TypeKind::Void;
  std::string name_;
  std::shared_ptr<const Type> element_;
};

/// `from` may be stored where `to` is expected (exact match, or null into a reference type).
bool assignable(const Type& to, const Type& from);

}  // namespace stubforge::ml
