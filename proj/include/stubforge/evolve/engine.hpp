#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stubforge/evolve/operators.hpp"
#include "stubforge/fitness/fitness.hpp"

namespace stubforge::evolve {

using fitness::FitnessTriple;

enum class Strategy : std::uint8_t { Dominance, WeightedSum, Unguided };
enum class Mode : std::uint8_t { Generate, Repair };

const char* strategy_name(Strategy s);
const char* mode_name(Mode m);
std::optional<Strategy> parse_strategy(std::string_view text);
std::optional<Mode> parse_mode(std::string_view text);

struct EngineConfig {
  int population = 200;
  int max_generations = 400;
  double elite_fraction = 0.01;
  int tournament_size = 2;
  double c = fitness::kDefaultC;
  std::size_t length_limit = stubir::kDefaultLengthLimit;
  Strategy strategy = Strategy::Dominance;
  Mode mode = Mode::Generate;
  std::uint64_t seed = 0;
  ml::ExecLimits limits;
  int initial_min = 0;  // stub calls per mock in the initial population
  int initial_max = 5;
  unsigned threads = 0;  // evaluation workers; 0 = hardware concurrency

  /// max(1, floor(elite_fraction * population)).
  int elite_count() const;
  /// Throws std::invalid_argument when N < 2, K < 2 or the ranges are inconsistent.
  void check() const;
};

struct Individual {
  StubProgram genome;
  std::string text;  // rendered stub; also the cache key
  FitnessTriple fitness;
  std::size_t used = 0;
  ml::Outcome outcome = ml::Outcome::Completed;
};

struct GenerationStats {
  int generation = 0;
  FitnessTriple best;
  bool pass = false;
  std::uint64_t evaluations = 0;  // cumulative distinct executions
};

enum class RunStatus : std::uint8_t { Passed, Exhausted };
const char* status_name(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::Exhausted;
  Individual best;  // the passing individual, or the best one found
  int generations = 0;
  std::uint64_t evaluations = 0;
  double wall_seconds = 0.0;
  std::vector<GenerationStats> stats;
  std::uint64_t selection_fitness_reads = 0;  // fitness lookups made by parent selection
};

/// Parent selection over an evaluated population. `fitness_reads` counts every fitness
/// value the strategy looks at.
std::size_t tournament(const std::vector<Individual>& pop, Strategy strategy, int k, Rng& rng,
                       std::uint64_t& fitness_reads);
std::pair<std::size_t, std::size_t> select_parents(const std::vector<Individual>& pop,
                                                   Strategy strategy, int k, Rng& rng,
                                                   std::uint64_t& fitness_reads);

/// True when `a` ranks strictly above `b` for elitism and reporting. Unguided runs rank
/// by dominance; their selection never looks at fitness.
bool better(const FitnessTriple& a, const FitnessTriple& b, Strategy strategy);

using ProgressFn = std::function<void(const GenerationStats&)>;

/// One search: evaluate P0, then per generation carry the elite over and fill the rest
/// with selected, crossed and mutated offspring until an individual passes or the
/// generation budget is spent.
///
/// Random draws happen on one generator in a fixed order: the initial population in
/// index order, then per generation, for each offspring pair, the two tournaments, the
/// crossover and the mutation of each child. Evaluation happens afterwards, so the worker
/// count does not affect the result.
RunResult run(const ml::Program& program, const ml::TestCase& test, const SymbolPool& pool,
              const EngineConfig& config, const ProgressFn& progress = {});

/// Execution and scoring of one rendered stub.
Individual evaluate_stub(const ml::Program& program, const ml::TestCase& test, StubProgram genome,
                         const EngineConfig& config);

}  // namespace stubforge::evolve
