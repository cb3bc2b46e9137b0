#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "stubforge/evolve/rng.hpp"
#include "stubforge/evolve/symbol_pool.hpp"

namespace stubforge::evolve {

using stubir::StubProgram;
using stubir::VarRef;

enum class Operator : std::uint8_t { Insert, AlterParams, AlterLiteral, Swap, Drop };
inline constexpr int kOperatorCount = 5;
const char* operator_name(Operator op);

class NoGenerator : public std::runtime_error {
 public:
  explicit NoGenerator(const Type& t) : std::runtime_error("no way to produce a value of type " + t.str()) {}
};

/// Values outside this range are clamped by AlterLiteral so they stay printable as literals.
inline constexpr std::int64_t kIntLiteralBound = std::int64_t{1} << 62;

struct GeneratorOptions {
  std::size_t length_limit = stubir::kDefaultLengthLimit;
  int max_depth = 2;            // nesting of API calls built for one argument
  double reuse_probability = 0.5;
  double eq_matcher_probability = 0.5;
  double throw_probability = 0.25;
};

/// Type II mocking decision for a reference type: MockCreate or an API producer, each with
/// probability 1/2 when both exist. ApiCall arguments are left empty for the caller.
stubir::Expr mock_or_real(const Type& t, const SymbolPool& pool, Rng& rng);

/// Builds and edits StubPrograms for one test. Every returned program is canonical and
/// validates against the program, the test and the length limit.
class Generator {
 public:
  Generator(const ml::Program& program, const ml::TestCase& test, const SymbolPool& pool,
            GeneratorOptions options = {});

  /// `lo..hi` stub calls (uniform) per mock of the test.
  StubProgram random_program(Rng& rng, int lo = 0, int hi = 5) const;

  /// Applies exactly one operator drawn uniformly, re-drawing among the remaining ones while
  /// the drawn operator is inapplicable. Returns the input unchanged if none applies.
  StubProgram mutate(const StubProgram& sp, Rng& rng, Operator* applied = nullptr) const;

  /// The single operator, or nullopt when it does not apply to `sp`.
  std::optional<StubProgram> apply(Operator op, const StubProgram& sp, Rng& rng) const;

  /// Slicing crossover: each stub call of either parent goes to each offspring with
  /// probability 1/2 together with its backward slice.
  std::pair<StubProgram, StubProgram> crossover(const StubProgram& p1, const StubProgram& p2,
                                                Rng& rng) const;

  const SymbolPool& pool() const { return pool_; }
  const GeneratorOptions& options() const { return options_; }

 private:
  struct Builder;

  std::optional<StubProgram> insert(const StubProgram& sp, Rng& rng) const;
  /// A new stub call on `target` plus the definitions it needs, placed at or after `from`.
  std::optional<StubProgram> stub_target(const StubProgram& sp, VarRef target, std::size_t from,
                                         Rng& rng) const;
  std::optional<StubProgram> alter_params(const StubProgram& sp, Rng& rng) const;
  std::optional<StubProgram> alter_literal(const StubProgram& sp, Rng& rng) const;
  std::optional<StubProgram> swap(const StubProgram& sp, Rng& rng) const;
  std::optional<StubProgram> drop(const StubProgram& sp, Rng& rng) const;

  /// References visible before element `pos` whose type is exactly `t`.
  std::vector<VarRef> visible(const StubProgram& sp, std::size_t pos, const Type& t) const;
  /// Mock objects visible before `pos`: the test's mocks and local MockCreate results.
  std::vector<VarRef> mock_targets(const StubProgram& sp, std::size_t pos) const;

  const ml::Program& program_;
  const ml::TestCase& test_;
  const SymbolPool& pool_;
  GeneratorOptions options_;
  /// Half of the characters a string edit inserts come from the pool's string literals.
  char32_t random_char(Rng& rng) const;

  std::vector<ApiSymbolPtr> exception_makers_;
  std::u32string alphabet_;
};

/// Moves definitions forward so that every element follows the definitions it reads,
/// keeping the relative order otherwise.
StubProgram repair_order(const StubProgram& sp);

}  // namespace stubforge::evolve
