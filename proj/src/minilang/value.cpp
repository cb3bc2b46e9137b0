#include "stubforge/minilang/value.hpp"

#include <map>
#include <set>

namespace stubforge::ml {

std::string_view kind_name(ValueKind kind) {
  switch (kind) {
    case ValueKind::Null: return "Null";
    case ValueKind::Int: return "Int";
    case ValueKind::Real: return "Real";
    case ValueKind::Bool: return "Bool";
    case ValueKind::Str: return "Str";
    case ValueKind::Array: return "Array";
    case ValueKind::Record: return "Record";
    case ValueKind::Exception: return "Exception";
    case ValueKind::Mock: return "Mock";
  }
  return "?";
}

Value Value::array(std::vector<Value> items) {
  auto obj = std::make_shared<ArrayObject>();
  obj->items = std::move(items);
  return from_array(std::move(obj));
}

Value Value::record(std::string type, std::vector<std::pair<std::string, Value>> fields) {
  auto obj = std::make_shared<RecordObject>();
  obj->type = std::move(type);
  obj->fields = std::move(fields);
  return from_record(std::move(obj));
}

double Value::as_number() const {
  if (kind() == ValueKind::Int) return static_cast<double>(as_int());
  return as_real();
}

Value* RecordObject::field(std::string_view name) {
  for (auto& [n, v] : fields)
    if (n == name) return &v;
  return nullptr;
}

const Value* RecordObject::field(std::string_view name) const {
  for (const auto& [n, v] : fields)
    if (n == name) return &v;
  return nullptr;
}

namespace {

using PairSet = std::set<std::pair<const void*, const void*>>;

bool deep_equal_impl(const Value& a, const Value& b, PairSet& assumed) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ValueKind::Array: {
      const auto& x = a.as_array();
      const auto& y = b.as_array();
      if (x == y) return true;
      if (!assumed.emplace(x.get(), y.get()).second) return true;
      if (x->items.size() != y->items.size()) return false;
      for (std::size_t i = 0; i < x->items.size(); ++i)
        if (!deep_equal_impl(x->items[i], y->items[i], assumed)) return false;
      return true;
    }
    case ValueKind::Record: {
      const auto& x = a.as_record();
      const auto& y = b.as_record();
      if (x == y) return true;
      if (!assumed.emplace(x.get(), y.get()).second) return true;
      if (x->type != y->type || x->fields.size() != y->fields.size()) return false;
      for (std::size_t i = 0; i < x->fields.size(); ++i) {
        if (x->fields[i].first != y->fields[i].first) return false;
        if (!deep_equal_impl(x->fields[i].second, y->fields[i].second, assumed)) return false;
      }
      return true;
    }
    default:
      return a.storage() == b.storage();
  }
}

Value deep_copy_impl(const Value& v, std::map<const void*, Value>& copies) {
  switch (v.kind()) {
    case ValueKind::Array: {
      const auto& src = v.as_array();
      if (auto it = copies.find(src.get()); it != copies.end()) return it->second;
      auto obj = std::make_shared<ArrayObject>();
      Value out = Value::from_array(obj);
      copies.emplace(src.get(), out);
      obj->items.reserve(src->items.size());
      for (const auto& item : src->items) obj->items.push_back(deep_copy_impl(item, copies));
      return out;
    }
    case ValueKind::Record: {
      const auto& src = v.as_record();
      if (auto it = copies.find(src.get()); it != copies.end()) return it->second;
      auto obj = std::make_shared<RecordObject>();
      obj->type = src->type;
      Value out = Value::from_record(obj);
      copies.emplace(src.get(), out);
      obj->fields.reserve(src->fields.size());
      for (const auto& [name, field] : src->fields)
        obj->fields.emplace_back(name, deep_copy_impl(field, copies));
      return out;
    }
    default:
      return v;
  }
}

}  // namespace

bool deep_equal(const Value& a, const Value& b) {
  PairSet assumed;
  return deep_equal_impl(a, b, assumed);
}

bool same(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ValueKind::Array: return a.as_array() == b.as_array();
    case ValueKind::Record: return a.as_record() == b.as_record();
    case ValueKind::Mock: return a.as_mock().handle == b.as_mock().handle;
    default: return a.storage() == b.storage();
  }
}

bool loose_equal(const Value& a, const Value& b) {
  if (a.is_numeric() && b.is_numeric()) {
    if (a.kind() == ValueKind::Int && b.kind() == ValueKind::Int) return a.as_int() == b.as_int();
    return a.as_number() == b.as_number();
  }
  return same(a, b);
}

Value deep_copy(const Value& v) {
  std::map<const void*, Value> copies;
  return deep_copy_impl(v, copies);
}

}  // namespace stubforge::ml
