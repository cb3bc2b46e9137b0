#include "stubforge/mockrt/mock_runtime.hpp"

#include <algorithm>

#include "stubforge/minilang/minilang.hpp"

namespace stubforge::mock {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Arrange: return "arrange";
    case Phase::Act: return "act";
    case Phase::Assert: return "assert";
  }
  return "?";
}

bool Matcher::matches(const Value& arg) const { return any || ml::deep_equal(value, arg); }

std::uint32_t MockRuntime::create_mock(const ml::InterfaceDecl& itf) {
  mocks_.push_back(&itf);
  return static_cast<std::uint32_t>(mocks_.size() - 1);
}

const ml::InterfaceDecl& MockRuntime::interface_of(std::uint32_t mock) const {
  if (mock >= mocks_.size()) throw DeadMock("no mock with handle " + std::to_string(mock));
  return *mocks_[mock];
}

const ml::MethodSig& MockRuntime::signature(std::uint32_t mock, const std::string& method) const {
  const ml::InterfaceDecl& itf = interface_of(mock);
  const int m = itf.find_method(method);
  if (m < 0) throw UnknownMethod("interface " + itf.name + " has no method " + method);
  return itf.methods[m];
}

std::size_t MockRuntime::register_stub(std::uint32_t mock, const std::string& method,
                                       std::vector<Matcher> matchers, Reaction reaction) {
  const ml::MethodSig& sig = signature(mock, method);
  if (matchers.size() != sig.params.size())
    throw ArityMismatch(method + " takes " + std::to_string(sig.params.size()) + " argument(s), " +
                        std::to_string(matchers.size()) + " matcher(s) given");
  for (auto& m : matchers)
    if (!m.any) m.value = ml::deep_copy(m.value);
  StubEntry e;
  e.mock = mock;
  e.method = method;
  e.matchers = std::move(matchers);
  e.reaction = std::move(reaction);
  e.index = entries_.size();
  entries_.push_back(std::move(e));
  return entries_.back().index;
}

namespace {

bool all_match(const std::vector<Matcher>& matchers, const std::vector<Value>& args) {
  if (matchers.size() != args.size()) return false;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!matchers[i].matches(args[i])) return false;
  return true;
}

}  // namespace

Reaction MockRuntime::dispatch(std::uint32_t mock, const std::string& method,
                               const std::vector<Value>& args) {
  const ml::MethodSig& sig = signature(mock, method);
  log_.push_back({mock, method, args, log_.size(), phase_});

  std::vector<std::size_t> matching;
  for (const auto& e : entries_)
    if (e.mock == mock && e.method == method && all_match(e.matchers, args))
      matching.push_back(e.index);
  if (matching.empty()) return {false, ml::default_value(sig.ret)};

  const std::size_t k = ++match_counts_[matching];
  StubEntry& chosen = entries_[matching[std::min(k, matching.size()) - 1]];
  ++chosen.use_count;
  if (phase_ == Phase::Act) ++chosen.act_uses;
  return chosen.reaction;
}

std::size_t MockRuntime::count_matching(std::uint32_t mock, const std::string& method,
                                        const std::vector<Matcher>& matchers) const {
  return static_cast<std::size_t>(std::count_if(log_.begin(), log_.end(), [&](const Invocation& inv) {
    return inv.mock == mock && inv.method == method && all_match(matchers, inv.args);
  }));
}

bool MockRuntime::verify(std::uint32_t mock, const std::string& method,
                         const std::vector<Matcher>& matchers, std::size_t times) const {
  return count_matching(mock, method, matchers) == times;
}

std::size_t MockRuntime::used_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const StubEntry& e) { return e.act_uses > 0; }));
}

}  // namespace stubforge::mock
