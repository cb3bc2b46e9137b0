#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "stubforge/cli/corpus.hpp"
#include "stubforge/evolve/engine.hpp"
#include "stubforge/fidelity/fidelity.hpp"

namespace stubforge::cli {

using nlohmann::json;

struct GenerationPoint {
  int generation = 0;
  double as = 0.0;
  double ec = 0.0;
  double su = 0.0;
  bool pass = false;
};

/// One engine run. The program and test sources are embedded so that a report can be
/// re-checked without the corpus.
struct RunReport {
  std::string entry;
  std::string mode;
  std::string strategy;
  std::uint64_t seed = 0;
  int population = 0;
  int max_generations = 0;
  std::string status;  // "passed" | "exhausted"
  int generations = 0;
  std::uint64_t evaluations = 0;
  double wall_seconds = 0.0;
  std::size_t stub_size = 0;  // |S|, elements of the reported stub
  std::string stub;
  std::vector<GenerationPoint> series;  // best individual per generation
  std::string program_source;
  std::string test_source;

  bool passed() const { return status == "passed"; }
};

RunReport make_report(const CorpusEntry& entry, const evolve::EngineConfig& config,
                      const evolve::RunResult& result);

json to_json(const RunReport& r);
RunReport report_from_json(const json& j);

/// Single-line JSON without the wall-clock field; equal for equal runs.
std::string canonical(const RunReport& r);

struct Verification {
  bool ok = false;
  std::string message;
};

/// For a passed report: parses the embedded sources, lowers and re-renders the stub (which
/// must reproduce the stored text) and re-executes the test, which must pass.
Verification verify_report(const RunReport& r);

json to_json(const fidelity::FidelityReport& f, const std::vector<fidelity::Mutant>& mutants);

}  // namespace stubforge::cli
