#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stubforge/minilang/ast.hpp"
#include "stubforge/minilang/value.hpp"

namespace stubforge::mock {

using ml::Value;

enum class Phase : std::uint8_t { Arrange, Act, Assert };

const char* phase_name(Phase p);

/// `any` or `eq(v)`; eq values are snapshots taken when the stub is registered.
struct Matcher {
  bool any = true;
  Value value;

  static Matcher anything() { return {}; }
  static Matcher eq(Value v) { return {false, std::move(v)}; }

  bool matches(const Value& arg) const;
};

struct Reaction {
  bool is_throw = false;
  Value value;  // returned value, or the ExceptionValue to raise
};

struct StubEntry {
  std::uint32_t mock = 0;
  std::string method;
  std::vector<Matcher> matchers;
  Reaction reaction;
  std::size_t index = 0;      // registration order
  std::size_t use_count = 0;  // all dispatches
  std::size_t act_uses = 0;   // dispatches during the Act phase
};

struct Invocation {
  std::uint32_t mock = 0;
  std::string method;
  std::vector<Value> args;
  std::uint64_t seq = 0;  // global order within one execution
  Phase phase = Phase::Arrange;
};

class UnknownMethod : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ArityMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DeadMock : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mock objects of one execution: stub entries, dispatch and the invocation log.
class MockRuntime {
 public:
  /// `itf` must outlive the runtime.
  std::uint32_t create_mock(const ml::InterfaceDecl& itf);
  const ml::InterfaceDecl& interface_of(std::uint32_t mock) const;
  std::size_t mock_count() const { return mocks_.size(); }

  /// Returns the entry's registration index.
  std::size_t register_stub(std::uint32_t mock, const std::string& method,
                            std::vector<Matcher> matchers, Reaction reaction);

  /// k-th call with the same set of matching entries takes entry min(k, |L|) of that set;
  /// no match yields the return type's default value.
  Reaction dispatch(std::uint32_t mock, const std::string& method, const std::vector<Value>& args);

  /// Exact count of logged invocations of `method` on `mock` whose arguments match.
  bool verify(std::uint32_t mock, const std::string& method, const std::vector<Matcher>& matchers,
              std::size_t times) const;
  std::size_t count_matching(std::uint32_t mock, const std::string& method,
                             const std::vector<Matcher>& matchers) const;

  /// Distinct entries used at least once during the Act phase.
  std::size_t used_count() const;

  void set_phase(Phase p) { phase_ = p; }
  Phase phase() const { return phase_; }

  const std::vector<StubEntry>& entries() const { return entries_; }
  const std::vector<Invocation>& log() const { return log_; }

 private:
  const ml::MethodSig& signature(std::uint32_t mock, const std::string& method) const;

  std::vector<const ml::InterfaceDecl*> mocks_;
  std::vector<StubEntry> entries_;
  std::vector<Invocation> log_;
  std::map<std::vector<std::size_t>, std::size_t> match_counts_;
  Phase phase_ = Phase::Arrange;
};

}  // namespace stubforge::mock
