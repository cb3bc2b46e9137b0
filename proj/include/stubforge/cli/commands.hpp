#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stubforge/cli/report.hpp"

namespace stubforge::cli {

class MissingBrokenStub : public std::runtime_error {
 public:
  explicit MissingBrokenStub(const std::string& entry)
      : std::runtime_error("entry " + entry + " has no broken stub to repair") {}
};

class NoGroundTruth : public std::runtime_error {
 public:
  explicit NoGroundTruth(const std::string& entry)
      : std::runtime_error("entry " + entry + " has no ground-truth stub") {}
};

/// Generation ignores the broken stub; repair adds its literals and builtins to the pool.
RunReport cmd_generate(const CorpusEntry& entry, evolve::EngineConfig config);
RunReport cmd_repair(const CorpusEntry& entry, evolve::EngineConfig config);
RunReport cmd_run(const CorpusEntry& entry, const evolve::EngineConfig& config);

struct FidelityOutcome {
  fidelity::FidelityReport report;
  std::vector<fidelity::Mutant> mutants;
};

/// Fidelity of `synthesized` against the entry's ground truth.
FidelityOutcome cmd_fidelity(const CorpusEntry& entry, const std::string& synthesized,
                             const ml::ExecLimits& limits = {});

/// The first ten primes from 1000.
const std::vector<std::uint64_t>& default_seeds();

struct BenchPlan {
  std::vector<evolve::Strategy> strategies{evolve::Strategy::Dominance};
  std::vector<evolve::Mode> modes{evolve::Mode::Generate};
  std::vector<std::uint64_t> seeds = default_seeds();
  evolve::EngineConfig base;
};

/// Every entry x mode x strategy x seed, in that nesting order. Repair cells are skipped
/// for entries without a broken stub.
std::vector<RunReport> cmd_bench(const std::vector<CorpusEntry>& entries, const BenchPlan& plan,
                                 const std::function<void(const RunReport&)>& on_report = {});

struct BenchRow {
  std::string entry;
  std::string mode;
  std::string strategy;
  int runs = 0;
  int successes = 0;
  std::optional<double> median_generations;  // over successful runs
  std::optional<double> median_seconds;
  std::optional<double> median_size;
  std::vector<std::pair<int, double>> success_by_budget;  // (generation budget, success rate)
};

/// Groups reports by (entry, mode, strategy) in first-appearance order.
std::vector<BenchRow> summarize(const std::vector<RunReport>& reports);
std::string format_summary(const std::vector<BenchRow>& rows);
json to_json(const std::vector<BenchRow>& rows);

std::optional<double> median(std::vector<double> xs);

}  // namespace stubforge::cli
