#include <gtest/gtest.h>

#include <algorithm>

#include "stubforge/cli/corpus.hpp"
#include "stubforge/fidelity/fidelity.hpp"
#include "stubforge/minilang/minilang.hpp"

using namespace stubforge;
using namespace stubforge::fidelity;

TEST(Fidelity, Jaccard) {
  EXPECT_DOUBLE_EQ(jaccard(std::set<int>{1, 2, 3}, std::set<int>{2, 3, 4}), 0.5);
  EXPECT_DOUBLE_EQ(jaccard(std::set<int>{}, std::set<int>{}), 1.0);
  EXPECT_DOUBLE_EQ(jaccard(std::set<int>{1}, std::set<int>{}), 0.0);
}

TEST(Fidelity, PathSimilarity) {
  using P = std::vector<ml::InstructionId>;
  EXPECT_DOUBLE_EQ(path_similarity(P{1, 2}, P{3, 4}), 0.5);
  EXPECT_DOUBLE_EQ(path_similarity(P{}, P{1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(path_similarity(P{1, 2, 3}, P{1, 2, 3}), 1.0);
  EXPECT_EQ(path_distance(P{1, 2, 3}, P{1, 3, 2}), 1u);
  EXPECT_THROW(path_similarity(P{}, P{}), BothEmpty);
}

TEST(Fidelity, MutantsOfAComparison) {
  const auto p = ml::parse(R"(
    class C {
      new() { }
      fn f(a: Int) -> Bool {
        if (a < 3) { return true; }
        return false;
      }
    }
  )");
  const auto ms = generate_mutants(p, "C");
  // a < 3 -> a <= 3, the negated if, and the constant 3 shifted both ways.
  ASSERT_EQ(ms.size(), 4u);
  std::vector<ml::MutationKind> kinds;
  for (const auto& m : ms) kinds.push_back(m.mutation.kind);
  EXPECT_EQ(std::count(kinds.begin(), kinds.end(), ml::MutationKind::ReplaceOperator), 1);
  EXPECT_EQ(std::count(kinds.begin(), kinds.end(), ml::MutationKind::NegateCondition), 1);
  EXPECT_EQ(std::count(kinds.begin(), kinds.end(), ml::MutationKind::ShiftConstant), 2);
  EXPECT_THROW(generate_mutants(p, "D"), std::invalid_argument);
}

TEST(Fidelity, StringPlusIsNotMutated) {
  const auto p = ml::parse(R"(
    class C {
      new() { }
      fn f(a: Str) -> Str { return a + "x"; }
    }
  )");
  EXPECT_TRUE(generate_mutants(p, "C").empty());
}

TEST(Fidelity, TruthAgainstItself) {
  const auto e = cli::load_corpus_entry(STUBFORGE_CORPUS_DIR, "L1");
  const auto r = measure(*e.program, *e.test, e.cut, *e.truth_stub, *e.truth_stub);
  EXPECT_DOUBLE_EQ(r.instruction_jaccard, 1.0);
  EXPECT_DOUBLE_EQ(r.path_similarity, 1.0);
  EXPECT_DOUBLE_EQ(r.killed_jaccard, 1.0);
  EXPECT_GT(r.mutant_count, 0u);
  EXPECT_FALSE(r.killed_truth.killed.empty());
  // Only class instructions appear in traces.
  for (auto id : r.instructions_truth) EXPECT_LT(id, e.program->instruction_count);
}

TEST(Fidelity, BaselineMustPass) {
  const auto e = cli::load_corpus_entry(STUBFORGE_CORPUS_DIR, "L1");
  EXPECT_THROW(measure(*e.program, *e.test, e.cut, "", *e.truth_stub), BaselineFails);
}
