#include <gtest/gtest.h>

#include <cmath>

#include "stubforge/fitness/edit_distance.hpp"
#include "stubforge/fitness/fitness.hpp"

using namespace stubforge::fitness;
using stubforge::ml::Value;

TEST(EditDistance, KnownValues) {
  EXPECT_EQ(levenshtein(std::string("kitten"), std::string("sitting")), 3u);
  EXPECT_EQ(levenshtein(std::string(""), std::string("abc")), 3u);
  EXPECT_EQ(damerau_levenshtein(std::string("ab"), std::string("ba")), 1u);
  EXPECT_EQ(levenshtein(std::string("ab"), std::string("ba")), 2u);
  // OSA, not unrestricted Damerau: "ca" -> "abc" costs 3.
  EXPECT_EQ(damerau_levenshtein(std::string("ca"), std::string("abc")), 3u);
  EXPECT_EQ(code_points("héllo").size(), 5u);
}

TEST(Distance, NearMissPath) {
  EXPECT_NEAR(distance(Value::string("/actuator/health"), Value::string("/actuator/hea")), std::tanh(3.0 / 16), 1e-12);
}

TEST(Distance, ZeroDenominatorsFallBackToOne) {
  EXPECT_NEAR(distance(Value::integer(0), Value::integer(2)), std::tanh(2.0), 1e-12);
  EXPECT_NEAR(distance(Value::string(""), Value::string("ab")), std::tanh(2.0), 1e-12);
}

TEST(Serialize, DeepAndCyclic) {
  auto arr = Value::array({Value::integer(1), Value::string("x"), Value{}});
  EXPECT_EQ(serialize_deep(arr), "[1,\"x\",null]");
  EXPECT_EQ(serialize_deep(Value::real(2)), "2.0");
  EXPECT_EQ(serialize_deep(Value::record("P", {{"a", Value::boolean(true)}})), "P{a=true}");
  auto cyc = Value::array({});
  cyc.as_array()->items.push_back(cyc);
  EXPECT_EQ(serialize_deep(cyc), "[<cycle>]");
  cyc.as_array()->items.clear();
}

TEST(Scores, AssertionScores) {
  stubforge::ml::AssertionOutcome eq;
  eq.kind = stubforge::ml::AssertionKind::Equals;
  eq.status = stubforge::ml::AssertionStatus::Failed;
  eq.expected = Value::integer(10);
  eq.actual = Value::integer(5);
  EXPECT_NEAR(assertion_score(eq), 1 - std::tanh(0.5), 1e-12);
  eq.status = stubforge::ml::AssertionStatus::Satisfied;
  EXPECT_EQ(assertion_score(eq), 1.0);
  eq.status = stubforge::ml::AssertionStatus::FailedNonEquals;
  EXPECT_EQ(assertion_score(eq), 0.0);
  eq.status = stubforge::ml::AssertionStatus::NotExecuted;
  EXPECT_EQ(assertion_score(eq), 0.0);
  EXPECT_THROW(assertion_status({}), EmptyOracle);
}

TEST(Scores, DominanceIsLexicographic) {
  const FitnessTriple a{0.0, 0.0, 0.6, false};
  const FitnessTriple b{1.0, 1.0, 0.5, false};
  EXPECT_TRUE(dominates(a, b));
  EXPECT_FALSE(dominates(b, a));
  EXPECT_FALSE(dominates(a, a));
  EXPECT_LT(weighted_sum(a), weighted_sum(b));
  const FitnessTriple c{0.2, 1.0, 0.6, false};
  EXPECT_TRUE(dominates(c, a));
}
