#include "stubforge/evolve/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace stubforge::evolve {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Dominance: return "dominance";
    case Strategy::WeightedSum: return "weighted";
    case Strategy::Unguided: return "unguided";
  }
  return "?";
}

const char* mode_name(Mode m) { return m == Mode::Generate ? "generate" : "repair"; }

std::optional<Strategy> parse_strategy(std::string_view text) {
  if (text == "dominance") return Strategy::Dominance;
  if (text == "weighted" || text == "weighted_sum" || text == "weighted-sum") return Strategy::WeightedSum;
  if (text == "unguided") return Strategy::Unguided;
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "generate") return Mode::Generate;
  if (text == "repair") return Mode::Repair;
  return std::nullopt;
}

const char* status_name(RunStatus s) { return s == RunStatus::Passed ? "passed" : "exhausted"; }

int EngineConfig::elite_count() const {
  return std::max(1, static_cast<int>(std::floor(elite_fraction * population)));
}

void EngineConfig::check() const {
  if (population < 2) throw std::invalid_argument("population size must be at least 2");
  if (tournament_size < 2) throw std::invalid_argument("tournament size must be at least 2");
  if (max_generations < 0) throw std::invalid_argument("generation budget must not be negative");
  if (elite_fraction < 0 || elite_count() >= population)
    throw std::invalid_argument("elite count must be below the population size");
  if (initial_min < 0 || initial_max < initial_min)
    throw std::invalid_argument("bad initial element range");
  if (length_limit == 0) throw std::invalid_argument("length limit must be positive");
}

bool better(const FitnessTriple& a, const FitnessTriple& b, Strategy strategy) {
  if (strategy == Strategy::WeightedSum) return fitness::weighted_sum(a) > fitness::weighted_sum(b);
  return fitness::dominates(a, b);
}

std::size_t tournament(const std::vector<Individual>& pop, Strategy strategy, int k, Rng& rng,
                       std::uint64_t& fitness_reads) {
  if (strategy == Strategy::Unguided) return rng.index(pop.size());
  std::size_t winner = rng.index(pop.size());
  for (int i = 1; i < k; ++i) {
    const std::size_t other = rng.index(pop.size());
    fitness_reads += 2;
    const auto& a = pop[winner].fitness;
    const auto& b = pop[other].fitness;
    if (better(b, a, strategy)) winner = other;
    else if (!better(a, b, strategy) && rng.coin()) winner = other;
  }
  return winner;
}

std::pair<std::size_t, std::size_t> select_parents(const std::vector<Individual>& pop,
                                                   Strategy strategy, int k, Rng& rng,
                                                   std::uint64_t& fitness_reads) {
  const std::size_t a = tournament(pop, strategy, k, rng, fitness_reads);
  const std::size_t b = tournament(pop, strategy, k, rng, fitness_reads);
  return {a, b};
}

Individual evaluate_stub(const ml::Program& program, const ml::TestCase& test, StubProgram genome,
                         const EngineConfig& config) {
  Individual ind;
  ind.text = stubir::render(genome, test);
  ind.genome = std::move(genome);
  ml::ExecOptions opts;
  opts.limits = config.limits;
  const auto report = ml::execute(program, test, std::string_view(ind.text), opts);
  ind.fitness = fitness::evaluate(report, test, config.c);
  ind.used = report.used_count;
  ind.outcome = report.outcome;
  return ind;
}

namespace {

class Evaluator {
 public:
  Evaluator(const ml::Program& program, const ml::TestCase& test, const EngineConfig& config)
      : program_(program), test_(test), config_(config) {
    workers_ = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  }

  std::uint64_t evaluations() const { return evaluations_; }

  // Renders every genome, executes the texts not seen before and fills in the scores.
  std::vector<Individual> score(std::vector<StubProgram> genomes) {
    std::vector<Individual> out(genomes.size());
    std::vector<std::size_t> fresh;
    std::unordered_map<std::string, std::size_t> pending;
    for (std::size_t i = 0; i < genomes.size(); ++i) {
      out[i].text = stubir::render(genomes[i], test_);
      out[i].genome = std::move(genomes[i]);
      if (!cache_.count(out[i].text) && pending.emplace(out[i].text, i).second) fresh.push_back(i);
    }

    std::vector<Individual> results(fresh.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(fresh.size());
    auto work = [&] {
      for (std::size_t j; (j = next.fetch_add(1)) < fresh.size();) {
        try {
          results[j] = evaluate_stub(program_, test_, out[fresh[j]].genome, config_);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      }
    };
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers_, fresh.size()));
    if (n <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (auto& r : results) cache_.emplace(r.text, Score{r.fitness, r.used, r.outcome});
    evaluations_ += fresh.size();

    for (auto& ind : out) {
      const Score& s = cache_.at(ind.text);
      ind.fitness = s.fitness;
      ind.used = s.used;
      ind.outcome = s.outcome;
    }
    return out;
  }

 private:
  struct Score {
    FitnessTriple fitness;
    std::size_t used;
    ml::Outcome outcome;
  };
  const ml::Program& program_;
  const ml::TestCase& test_;
  const EngineConfig& config_;
  unsigned workers_ = 1;
  std::unordered_map<std::string, Score> cache_;
  std::uint64_t evaluations_ = 0;
};

// Population indices best-first; equal individuals keep index order.
std::vector<std::size_t> ranking(const std::vector<Individual>& pop, Strategy strategy) {
  std::vector<std::size_t> idx(pop.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return better(pop[a].fitness, pop[b].fitness, strategy);
  });
  return idx;
}

}  // namespace

RunResult run(const ml::Program& program, const ml::TestCase& test, const SymbolPool& pool,
              const EngineConfig& config, const ProgressFn& progress) {
  config.check();
  const auto start = std::chrono::steady_clock::now();
  Rng rng(config.seed);
  GeneratorOptions gopts;
  gopts.length_limit = config.length_limit;
  const Generator gen(program, test, pool, gopts);
  Evaluator evaluator(program, test, config);
  RunResult result;

  std::vector<StubProgram> genomes;
  for (int i = 0; i < config.population; ++i)
    genomes.push_back(gen.random_program(rng, config.initial_min, config.initial_max));
  std::vector<Individual> pop = evaluator.score(std::move(genomes));

  for (int generation = 0;; ++generation) {
    const auto order = ranking(pop, config.strategy);
    GenerationStats st;
    st.generation = generation;
    st.best = pop[order.front()].fitness;
    st.evaluations = evaluator.evaluations();
    const auto passing = std::find_if(pop.begin(), pop.end(), [](const Individual& i) { return i.fitness.pass; });
    st.pass = passing != pop.end();
    result.stats.push_back(st);
    if (progress) progress(st);

    result.generations = generation;
    if (st.pass) {
      result.status = RunStatus::Passed;
      result.best = *passing;
      break;
    }
    if (generation >= config.max_generations) {
      result.status = RunStatus::Exhausted;
      result.best = pop[order.front()];
      break;
    }

    std::vector<StubProgram> next;
    const auto elites = static_cast<std::size_t>(config.elite_count());
    for (std::size_t i = 0; i < elites; ++i) next.push_back(pop[order[i]].genome);
    while (next.size() < static_cast<std::size_t>(config.population)) {
      const auto [a, b] =
          select_parents(pop, config.strategy, config.tournament_size, rng, result.selection_fitness_reads);
      auto [o1, o2] = gen.crossover(pop[a].genome, pop[b].genome, rng);
      o1 = gen.mutate(o1, rng);
      o2 = gen.mutate(o2, rng);
      next.push_back(std::move(o1));
      if (next.size() < static_cast<std::size_t>(config.population)) next.push_back(std::move(o2));
    }
    pop = evaluator.score(std::move(next));
  }

  result.evaluations = evaluator.evaluations();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace stubforge::evolve
