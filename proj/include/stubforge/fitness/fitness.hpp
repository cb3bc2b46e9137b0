#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "stubforge/minilang/interpreter.hpp"

namespace stubforge::fitness {

using ml::Value;

inline constexpr double kDefaultC = 10.0;

struct FitnessTriple {
  double su = 0.0;
  double ec = 0.0;
  double as = 0.0;
  bool pass = false;

  friend bool operator==(const FitnessTriple&, const FitnessTriple&) = default;
};

class EmptyActBlock : public std::invalid_argument {
 public:
  EmptyActBlock() : std::invalid_argument("the act block has no instructions") {}
};
class EmptyOracle : public std::invalid_argument {
 public:
  EmptyOracle() : std::invalid_argument("the test has no assertions") {}
};

/// tanh(used / C).
double stub_utilization(std::size_t used, double c = kDefaultC);

/// executed / total over the act block's instructions.
double exercise_coverage(std::size_t executed, std::size_t total);

/// Distance of the actual value `y` from the expected value `x`, in [0, 1).
double distance(const Value& x, const Value& y);

/// String distance tanh(Lev(x, y) / len(x)) over code points.
double string_distance(const std::string& x, const std::string& y);

/// Canonical deep text of a value. Back-edges of cyclic structures print as `<cycle>`.
std::string serialize_deep(const Value& v);

double assertion_score(const ml::AssertionOutcome& outcome);

/// Mean of the per-assertion scores.
double assertion_status(const std::vector<double>& scores);

/// Strict lexicographic order on (AS, EC, SU).
bool dominates(const FitnessTriple& a, const FitnessTriple& b);

/// SU + 2 EC + 4 AS.
double weighted_sum(const FitnessTriple& f);

FitnessTriple evaluate(const ml::ExecutionReport& report, const ml::TestCase& test,
                       double c = kDefaultC);

}  // namespace stubforge::fitness
