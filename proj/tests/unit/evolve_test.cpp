#include <gtest/gtest.h>

#include <algorithm>

#include "stubforge/cli/corpus.hpp"
#include "stubforge/evolve/engine.hpp"
#include "stubforge/evolve/operators.hpp"
#include "stubforge/evolve/symbol_pool.hpp"

using namespace stubforge;
using namespace stubforge::evolve;

namespace {

const cli::CorpusEntry& entry(const std::string& id) {
  static std::map<std::string, cli::CorpusEntry> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, cli::load_corpus_entry(STUBFORGE_CORPUS_DIR, id)).first;
  return it->second;
}

bool has_literal(const SymbolPool& pool, const ml::Value& v) {
  return std::any_of(pool.literals.begin(), pool.literals.end(),
                     [&](const ml::Value& x) { return x.kind() == v.kind() && ml::deep_equal(x, v); });
}

bool has_symbol(const SymbolPool& pool, const std::string& name) {
  return std::any_of(pool.symbols.begin(), pool.symbols.end(),
                     [&](const auto& s) { return s->name == name; });
}

EngineConfig small(std::uint64_t seed) {
  EngineConfig c;
  c.population = 30;
  c.max_generations = 20;
  c.seed = seed;
  c.threads = 1;
  return c;
}

}  // namespace

TEST(Rng, BelowStaysInRangeAndIsSeeded) {
  Rng a(7), b(7);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.below(13);
    EXPECT_LT(x, 13u);
    EXPECT_EQ(x, b.below(13));
  }
  EXPECT_EQ(a.between(3, 3), 3);
}

TEST(SymbolPool, HarvestsLoginEntry) {
  const auto& e = entry("L1");
  const auto pool = construct_symbol_pool(*e.test, *e.program);
  EXPECT_TRUE(has_literal(pool, ml::Value::string("foo")));
  EXPECT_TRUE(has_literal(pool, ml::Value::string("bar")));
  EXPECT_TRUE(has_literal(pool, ml::Value::integer(3)));
  EXPECT_TRUE(has_literal(pool, ml::Value::boolean(true)));
  EXPECT_TRUE(has_symbol(pool, "sha1Hex"));
  EXPECT_TRUE(has_symbol(pool, "TimeoutException"));
  EXPECT_FALSE(has_symbol(pool, "startsWith"));
  ASSERT_FALSE(pool.interfaces.empty());
  EXPECT_EQ(pool.interfaces.front(), "UserDao");
  EXPECT_TRUE(pool.mockable(ml::Type::declared(ml::TypeKind::Interface, "User")));
}

TEST(SymbolPool, BrokenStubLiteralsOnlyInRepair) {
  const auto& e = entry("S36");
  ASSERT_TRUE(e.broken_stub);
  const auto gen = construct_symbol_pool(*e.test, *e.program);
  const auto rep = construct_symbol_pool(*e.test, *e.program, *e.broken_stub);
  EXPECT_FALSE(has_literal(gen, ml::Value::string("/actuator/health")));
  EXPECT_TRUE(has_literal(rep, ml::Value::string("/actuator/health")));
}

TEST(Operators, MockOrReal) {
  const auto& e = entry("L1");
  const auto pool = construct_symbol_pool(*e.test, *e.program);
  Rng rng(1);
  const auto ex = mock_or_real(ml::Type::declared(ml::TypeKind::Interface, "User"), pool, rng);
  EXPECT_TRUE(std::holds_alternative<stubir::MockCreate>(ex));
  EXPECT_THROW(mock_or_real(ml::Type::int_type(), pool, rng), NoGenerator);
}

TEST(Operators, EveryOperatorKeepsProgramsValid) {
  for (const char* id : {"L1", "W1", "S36"}) {
    const auto& e = entry(id);
    const auto pool = construct_symbol_pool(*e.test, *e.program, e.broken_stub);
    const Generator g(*e.program, *e.test, pool);
    Rng rng(99);
    for (int i = 0; i < 300; ++i) {
      const auto sp = g.random_program(rng);
      ASSERT_TRUE(stubir::validate(sp, *e.test, *e.program).empty()) << id;
      for (auto op : {Operator::Insert, Operator::AlterParams, Operator::AlterLiteral, Operator::Swap,
                      Operator::Drop}) {
        if (auto out = g.apply(op, sp, rng)) {
          EXPECT_TRUE(stubir::validate(*out, *e.test, *e.program).empty())
              << id << " " << operator_name(op) << "\n" << stubir::render(*out, *e.test);
        }
      }
    }
  }
}

TEST(Operators, DropNeverLeavesDanglingUses) {
  const auto& e = entry("L1");
  const auto pool = construct_symbol_pool(*e.test, *e.program);
  const Generator g(*e.program, *e.test, pool);
  const auto truth = stubir::parse_stub(*e.program, *e.test, *e.truth_stub);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    auto out = g.apply(Operator::Drop, truth, rng);
    ASSERT_TRUE(out);
    EXPECT_EQ(out->size() + 1, truth.size());
    EXPECT_TRUE(stubir::validate(*out, *e.test, *e.program).empty());
  }
  EXPECT_FALSE(g.apply(Operator::Drop, stubir::StubProgram{}, rng));
  EXPECT_FALSE(g.apply(Operator::Swap, stubir::StubProgram{}, rng));
}

TEST(Operators, InitialPopulationIsDeterministic) {
  const auto& e = entry("W1");
  const auto pool = construct_symbol_pool(*e.test, *e.program);
  const Generator g(*e.program, *e.test, pool);
  Rng a(5), b(5);
  for (int i = 0; i < 50; ++i) {
    const auto x = g.random_program(a);
    EXPECT_EQ(stubir::render(x, *e.test), stubir::render(g.random_program(b), *e.test));
    EXPECT_LE(x.stub_call_count(), 5u * e.test->mocks.size());
  }
}

TEST(Engine, ConfigCheck) {
  EngineConfig c;
  EXPECT_NO_THROW(c.check());
  EXPECT_EQ(c.elite_count(), 2);
  c.population = 50;
  EXPECT_EQ(c.elite_count(), 1);
  c.population = 0;
  EXPECT_ANY_THROW(c.check());
  c = {};
  c.tournament_size = 0;
  EXPECT_ANY_THROW(c.check());
  EXPECT_EQ(parse_strategy("weighted-sum"), Strategy::WeightedSum);
  EXPECT_FALSE(parse_strategy("random"));
}

TEST(Engine, TournamentReads) {
  std::vector<Individual> pop(4);
  pop[2].fitness.as = 1.0;
  Rng rng(11);
  std::uint64_t reads = 0;
  for (int i = 0; i < 100; ++i) tournament(pop, Strategy::Unguided, 2, rng, reads);
  EXPECT_EQ(reads, 0u);
  tournament(pop, Strategy::Dominance, 2, rng, reads);
  EXPECT_EQ(reads, 2u);
  // With K = population size sampled many times, the best individual must win sometimes.
  bool seen = false;
  for (int i = 0; i < 200; ++i) seen |= tournament(pop, Strategy::Dominance, 4, rng, reads) == 2;
  EXPECT_TRUE(seen);
}

TEST(Engine, ZeroGenerationsIsExhausted) {
  const auto& e = entry("M3");
  const auto pool = construct_symbol_pool(*e.test, *e.program);
  auto c = small(1009);
  c.max_generations = 0;
  const auto r = run(*e.program, *e.test, pool, c);
  EXPECT_EQ(r.status, RunStatus::Exhausted);
  EXPECT_EQ(r.generations, 0);
  EXPECT_EQ(r.stats.size(), 1u);
}

TEST(Engine, ElitismKeepsBestMonotone) {
  const auto& e = entry("M3");
  const auto pool = construct_symbol_pool(*e.test, *e.program);
  const auto r = run(*e.program, *e.test, pool, small(1013));
  for (std::size_t i = 1; i < r.stats.size(); ++i)
    EXPECT_FALSE(fitness::dominates(r.stats[i - 1].best, r.stats[i].best)) << i;
}

TEST(Engine, UnguidedNeverReadsFitnessForSelection) {
  const auto& e = entry("M3");
  const auto pool = construct_symbol_pool(*e.test, *e.program);
  auto c = small(1019);
  c.strategy = Strategy::Unguided;
  const auto r = run(*e.program, *e.test, pool, c);
  EXPECT_EQ(r.selection_fitness_reads, 0u);
  c.strategy = Strategy::Dominance;
  EXPECT_GT(run(*e.program, *e.test, pool, c).selection_fitness_reads, 0u);
}

TEST(Engine, SolvesTheCounterEntry) {
  const auto& e = entry("T1");
  const auto pool = construct_symbol_pool(*e.test, *e.program);
  auto c = small(1021);
  c.max_generations = 60;
  const auto r = run(*e.program, *e.test, pool, c);
  ASSERT_EQ(r.status, RunStatus::Passed);
  EXPECT_TRUE(r.best.fitness.pass);
  EXPECT_TRUE(ml::execute(*e.program, *e.test, std::string_view(r.best.text)).passed());
}

TEST(Engine, SameSeedSameResult) {
  const auto& e = entry("W1");
  const auto pool = construct_symbol_pool(*e.test, *e.program);
  const auto a = run(*e.program, *e.test, pool, small(1031));
  auto c = small(1031);
  c.threads = 3;
  const auto b = run(*e.program, *e.test, pool, c);
  EXPECT_EQ(a.best.text, b.best.text);
  EXPECT_EQ(a.generations, b.generations);
  EXPECT_EQ(a.evaluations, b.evaluations);
}
