#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stubforge/minilang/ast.hpp"
#include "stubforge/mockrt/mock_runtime.hpp"

namespace stubforge::ml {

using mock::Phase;

struct ExecLimits {
  std::uint64_t step_budget = 1'000'000;
  std::uint64_t loop_iterations = 10'000;  // per loop execution
  int call_depth = 200;
};

/// A single seeded fault, applied by the interpreter at one site instead of rewriting the AST.
enum class MutationKind : std::uint8_t { ReplaceOperator, NegateCondition, ShiftConstant };

struct Mutation {
  MutationKind kind = MutationKind::ReplaceOperator;
  InstructionId site = kNoInstruction;  // binary expression or if/while statement
  BinaryOp replacement = BinaryOp::Add;
  int constant_index = -1;  // ShiftConstant
  std::int64_t delta = 0;
};

struct ExecOptions {
  ExecLimits limits;
  bool record_trace = false;
  const Mutation* mutation = nullptr;
};

enum class Outcome : std::uint8_t { Completed, UncaughtException, BudgetExceeded };
const char* outcome_name(Outcome o);

enum class AssertionStatus : std::uint8_t { Satisfied, Failed, FailedNonEquals, NotExecuted };
const char* status_name(AssertionStatus s);

struct AssertionOutcome {
  AssertionKind kind = AssertionKind::Equals;
  AssertionStatus status = AssertionStatus::NotExecuted;
  Value expected;  // Failed assertEquals: the compared values
  Value actual;
  std::string detail;
};

struct ExecutionReport {
  Outcome outcome = Outcome::Completed;
  Value exception;  // UncaughtException
  Phase exception_phase = Phase::Arrange;
  std::string budget_reason;

  std::vector<InstructionId> trace;  // completion order; only with record_trace
  std::vector<Phase> trace_phase;    // parallel to trace
  std::vector<InstructionId> executed_in_E;

  std::vector<AssertionOutcome> assertions;
  std::vector<mock::StubEntry> stub_entries;
  std::vector<mock::Invocation> invocations;
  std::size_t used_count = 0;
  std::uint64_t steps = 0;

  /// Keeps the execution's heap alive; releasing the last copy breaks reference cycles.
  std::shared_ptr<void> heap;

  bool all_satisfied() const;
  /// Completed with every assertion satisfied.
  bool passed() const { return outcome == Outcome::Completed && all_satisfied(); }
};

/// Runs arrange (prelude + stub), act and assert. Never throws for runtime failures; those
/// become the report's outcome.
ExecutionReport execute(const Program& program, const TestCase& test, const StubBlock& stub,
                        const ExecOptions& options = {});

/// Parses and checks `stub_source` first; throws LangError if it does not type-check.
ExecutionReport execute(const Program& program, const TestCase& test, std::string_view stub_source,
                        const ExecOptions& options = {});

/// Calls a top-level function outside of any test. Throws std::runtime_error when the call
/// ends in an uncaught exception or exceeds a budget.
Value call_function(const Program& program, std::string_view name, std::vector<Value> args,
                    const ExecLimits& limits = {});

}  // namespace stubforge::ml
