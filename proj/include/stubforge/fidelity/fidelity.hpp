#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stubforge/minilang/interpreter.hpp"

namespace stubforge::fidelity {

using ml::InstructionId;

class BothEmpty : public std::invalid_argument {
 public:
  BothEmpty() : std::invalid_argument("path similarity of two empty paths") {}
};

class BaselineFails : public std::runtime_error {
 public:
  explicit BaselineFails(const std::string& what) : std::runtime_error(what) {}
};

/// |a ∩ b| / |a ∪ b|; 1 when both are empty.
double jaccard(const std::set<InstructionId>& a, const std::set<InstructionId>& b);
double jaccard(const std::set<int>& a, const std::set<int>& b);

std::size_t path_distance(const std::vector<InstructionId>& p, const std::vector<InstructionId>& q);

/// 1 - DLev(p, q) / (|p| + |q|).
double path_similarity(const std::vector<InstructionId>& p, const std::vector<InstructionId>& q);

/// CUT instructions completed during act and assert, as a set and in order.
struct Trace {
  std::set<InstructionId> instructions;
  std::vector<InstructionId> path;
};

Trace trace(const ml::Program& program, const ml::TestCase& test, std::string_view stub,
            const ml::ExecLimits& limits = {});

struct Mutant {
  int id = 0;
  ml::Mutation mutation;
  std::string description;  // e.g. "12:18 + -> -"
};

/// One mutant per applicable site in the methods and constructor of `cut_class`:
/// `+`/`-` and `*`/`/` on numbers, `<`/`<=`, `>`/`>=`, `==`/`!=`, negated if/while
/// conditions, and Int constants shifted by +1 and -1.
std::vector<Mutant> generate_mutants(const ml::Program& program, std::string_view cut_class);

struct KillSet {
  std::set<int> killed;
  std::set<int> by_budget;  // subset of killed that ran out of budget
};

/// Mutants on which the test fails with this stub. Throws BaselineFails unless the test
/// passes on the original program.
KillSet killed(const ml::Program& program, const ml::TestCase& test, std::string_view stub,
               const std::vector<Mutant>& mutants, const ml::ExecLimits& limits = {});

struct FidelityReport {
  std::set<InstructionId> instructions_synth;
  std::set<InstructionId> instructions_truth;
  double instruction_jaccard = 0.0;

  std::vector<InstructionId> path_synth;
  std::vector<InstructionId> path_truth;
  std::size_t path_distance = 0;
  double path_similarity = 0.0;

  std::size_t mutant_count = 0;
  KillSet killed_synth;
  KillSet killed_truth;
  double killed_jaccard = 0.0;
};

/// Compares a passing synthesized stub against the ground truth on one test.
FidelityReport measure(const ml::Program& program, const ml::TestCase& test, std::string_view cut_class,
                       std::string_view synthesized, std::string_view truth,
                       const ml::ExecLimits& limits = {});

}  // namespace stubforge::fidelity
