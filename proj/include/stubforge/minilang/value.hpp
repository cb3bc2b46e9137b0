#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace stubforge::ml {

struct ArrayObject;
struct RecordObject;

struct NullValue {
  friend bool operator==(NullValue, NullValue) { return true; }
};

struct ExceptionValue {
  std::string type;
  std::string message;
  friend bool operator==(const ExceptionValue&, const ExceptionValue&) = default;
};

struct MockRef {
  std::uint32_t handle = 0;
  std::string interface;
  friend bool operator==(const MockRef&, const MockRef&) = default;
};

enum class ValueKind : std::uint8_t { Null, Int, Real, Bool, Str, Array, Record, Exception, Mock };

std::string_view kind_name(ValueKind kind);

/// A runtime value. Arrays and records are shared handles; everything else is held by value.
class Value {
 public:
  using Storage = std::variant<NullValue, std::int64_t, double, bool, std::string,
                               std::shared_ptr<ArrayObject>, std::shared_ptr<RecordObject>,
                               ExceptionValue, MockRef>;

  Value() = default;

  static Value integer(std::int64_t v) { return Value(Storage(v)); }
  static Value real(double v) { return Value(Storage(v)); }
  static Value boolean(bool v) { return Value(Storage(v)); }
  static Value string(std::string v) { return Value(Storage(std::move(v))); }
  static Value array(std::vector<Value> items);
  static Value record(std::string type, std::vector<std::pair<std::string, Value>> fields);
  static Value exception(std::string type, std::string message) {
    return Value(Storage(ExceptionValue{std::move(type), std::move(message)}));
  }
  static Value mock(std::uint32_t handle, std::string interface) {
    return Value(Storage(MockRef{handle, std::move(interface)}));
  }
  static Value from_array(std::shared_ptr<ArrayObject> obj) { return Value(Storage(std::move(obj))); }
  static Value from_record(std::shared_ptr<RecordObject> obj) {
    return Value(Storage(std::move(obj)));
  }

  ValueKind kind() const { return static_cast<ValueKind>(storage_.index()); }
  bool is_null() const { return kind() == ValueKind::Null; }
  bool is_numeric() const { return kind() == ValueKind::Int || kind() == ValueKind::Real; }

  std::int64_t as_int() const { return std::get<std::int64_t>(storage_); }
  double as_real() const { return std::get<double>(storage_); }
  /// Int or Real widened to double.
  double as_number() const;
  bool as_bool() const { return std::get<bool>(storage_); }
  const std::string& as_str() const { return std::get<std::string>(storage_); }
  const std::shared_ptr<ArrayObject>& as_array() const {
    return std::get<std::shared_ptr<ArrayObject>>(storage_);
  }
  const std::shared_ptr<RecordObject>& as_record() const {
    return std::get<std::shared_ptr<RecordObject>>(storage_);
  }
  const ExceptionValue& as_exception() const { return std::get<ExceptionValue>(storage_); }
  const MockRef& as_mock() const { return std::get<MockRef>(storage_); }

  const Storage& storage() const { return storage_; }

 private:
  explicit Value(Storage s) : storage_(std::move(s)) {}
  Storage storage_;
};

struct ArrayObject {
  std::vector<Value> items;
};

/// Record or class instance. Fields stay in declaration order.
struct RecordObject {
  std::string type;
  std::vector<std::pair<std::string, Value>> fields;

  Value* field(std::string_view name);
  const Value* field(std::string_view name) const;
};

/// Structural equality (AssertEquals, Eq matchers). Cycles compare equal when their shapes agree.
bool deep_equal(const Value& a, const Value& b);

/// Handle identity for arrays, records and mocks; value equality for everything else (AssertSame).
bool same(const Value& a, const Value& b);

/// The language's `==`: numeric comparison across Int/Real, otherwise `same`.
bool loose_equal(const Value& a, const Value& b);

/// Copy that shares nothing mutable with the source; cycles are reproduced, not unrolled.
Value deep_copy(const Value& v);

}  // namespace stubforge::ml
