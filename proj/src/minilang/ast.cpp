#include "stubforge/minilang/ast.hpp"

namespace stubforge::ml {

namespace {

template <typename Items>
int index_of(const Items& items, std::string_view name) {
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i].name == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

const char* op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

const char* assertion_name(AssertionKind kind) {
  switch (kind) {
    case AssertionKind::Equals: return "assertEquals";
    case AssertionKind::True: return "assertTrue";
    case AssertionKind::NotNull: return "assertNotNull";
    case AssertionKind::Same: return "assertSame";
    case AssertionKind::Throws: return "assertThrows";
    case AssertionKind::Verify: return "verify";
  }
  return "?";
}

int InterfaceDecl::find_method(std::string_view method) const { return index_of(methods, method); }
int ClassDecl::find_method(std::string_view method) const { return index_of(methods, method); }
int ClassDecl::find_field(std::string_view field) const { return index_of(fields, field); }

int Program::find_record(std::string_view name) const { return index_of(records, name); }
int Program::find_exception(std::string_view name) const { return index_of(exceptions, name); }
int Program::find_interface(std::string_view name) const { return index_of(interfaces, name); }
int Program::find_class(std::string_view name) const { return index_of(classes, name); }
int Program::find_function(std::string_view name) const { return index_of(functions, name); }

TypeKind Program::kind_of(std::string_view name) const {
  if (find_record(name) >= 0) return TypeKind::Record;
  if (find_exception(name) >= 0) return TypeKind::Exception;
  if (find_interface(name) >= 0) return TypeKind::Interface;
  if (find_class(name) >= 0) return TypeKind::Class;
  return TypeKind::Void;
}

const ScopeVar* TestCase::find_scope_var(std::string_view name) const {
  for (const auto& v : scope)
    if (v.name == name) return &v;
  return nullptr;
}

}  // namespace stubforge::ml
