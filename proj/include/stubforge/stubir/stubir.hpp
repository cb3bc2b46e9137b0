#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stubforge/minilang/ast.hpp"

namespace stubforge::stubir {

using ml::Type;
using ml::Value;

inline constexpr std::size_t kDefaultLengthLimit = 50;

/// A variable reference: a stub-local definition (by var id) or a variable of the test's
/// scope at the stub site (index into TestCase::scope).
struct VarRef {
  enum class Scope : std::uint8_t { Local, Test };
  Scope scope = Scope::Local;
  int id = 0;

  static VarRef local(int id) { return {Scope::Local, id}; }
  static VarRef test(int index) { return {Scope::Test, index}; }
  bool is_local() const { return scope == Scope::Local; }
  friend bool operator==(const VarRef&, const VarRef&) = default;
};

enum class ApiKind : std::uint8_t { Constructor, Method, FieldAccess, Function };

/// A callable producing a value: `new T(..)`, `recv.m(..)`, `obj.f` or `f(..)`.
/// For methods and field accesses the receiver is the first parameter.
struct ApiSymbol {
  ApiKind kind = ApiKind::Function;
  std::string owner;  // declaring type; empty for functions
  std::string name;
  std::vector<Type> params;
  Type ret;

  std::string str() const;
  friend bool operator==(const ApiSymbol& a, const ApiSymbol& b) {
    return a.kind == b.kind && a.owner == b.owner && a.name == b.name && a.params == b.params &&
           a.ret == b.ret;
  }
};
using ApiSymbolPtr = std::shared_ptr<const ApiSymbol>;

struct Literal {
  Value value;  // Int, Real, Bool, Str or Null
};
struct ArrayOf {
  std::vector<VarRef> items;
};
struct ApiCall {
  ApiSymbolPtr symbol;
  std::vector<VarRef> args;
};
struct MockCreate {
  std::string interface;
};
using Expr = std::variant<Literal, ArrayOf, ApiCall, MockCreate>;

struct VarDef {
  int var = 0;
  Type type;
  Expr expr;
};

struct ArgMatcher {
  bool any = true;
  VarRef var;  // eq(var)

  static ArgMatcher anything() { return {}; }
  static ArgMatcher eq(VarRef v) { return {false, v}; }
};

struct Reaction {
  bool is_throw = false;
  VarRef var;
};

struct StubCall {
  VarRef mock;
  std::string method;
  std::vector<ArgMatcher> matchers;
  Reaction reaction;
};

using Element = std::variant<VarDef, StubCall>;

/// The genome: an ordered sequence of variable definitions and stub calls.
struct StubProgram {
  std::vector<Element> elements;

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
  std::size_t stub_call_count() const;
};

bool is_def(const Element& e);
bool is_stub_call(const Element& e);

/// Variables an element reads.
std::vector<VarRef> uses(const Element& e);

struct Violation {
  std::size_t element = 0;  // == size() for whole-program violations
  std::string message;
};

/// Def-before-use, unique var ids, types, arities and the length limit.
std::vector<Violation> validate(const StubProgram& sp, const ml::TestCase& test,
                                const ml::Program& program,
                                std::size_t length_limit = kDefaultLengthLimit);

/// Renumbers local vars to their definition order (0, 1, ...).
StubProgram canonicalize(const StubProgram& sp);

/// The arrange block for the test's stub site, one element per line. Local vars are `v<N>`
/// with N the definition ordinal, so equal programs render identically.
std::string render(const StubProgram& sp, const ml::TestCase& test);

/// Element `index` and every definition it transitively depends on, in original order.
StubProgram backward_slice(const StubProgram& sp, std::size_t index);

class StubParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lowers an arrange block (rendered or hand-written) into a StubProgram. Nested expressions
/// and inline literals become their own definitions; `let a = b;` aliases b. Throws
/// ml::LangError when the block does not check, StubParseError for forms outside the grammar.
StubProgram parse_stub(const ml::Program& program, const ml::TestCase& test, std::string_view text);

/// All declared API symbols: record and class constructors, user exception constructors,
/// non-Void class methods, record/class field reads, non-Void functions and the
/// non-generic builtins.
std::vector<ApiSymbolPtr> api_symbols(const ml::Program& program);

/// Type of a reference within `sp` (local definitions) or the test scope.
Type var_type(const StubProgram& sp, const ml::TestCase& test, VarRef v);

}  // namespace stubforge::stubir
