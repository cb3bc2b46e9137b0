#include <gtest/gtest.h>

#include "stubforge/minilang/interpreter.hpp"
#include "stubforge/minilang/lexer.hpp"
#include "stubforge/minilang/minilang.hpp"

using namespace stubforge::ml;

namespace {

Value call(std::string_view src, std::string_view fn, std::vector<Value> args = {}, ExecLimits limits = {}) {
  const Program p = parse(src);
  return call_function(p, fn, std::move(args), limits);
}

}  // namespace

TEST(Lexer, LiteralsAndEscapes) {
  auto toks = tokenize(R"(let x = "a\"b\n"; 12 3.5 true null)");
  ASSERT_GE(toks.size(), 9u);
  EXPECT_EQ(toks[3].kind, TokenKind::StrLiteral);
  EXPECT_EQ(toks[3].literal.as_str(), "a\"b\n");
  EXPECT_EQ(toks[5].literal.as_int(), 12);
  EXPECT_DOUBLE_EQ(toks[6].literal.as_real(), 3.5);
  EXPECT_TRUE(toks[7].literal.as_bool());
  EXPECT_THROW(tokenize("\"open"), SyntaxError);
  EXPECT_EQ(quote_string("a\"b"), "\"a\\\"b\"");
}

TEST(Parser, ReportsPositions) {
  try {
    parse("fn f() -> Int {\n  return 1 +;\n}");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.loc().line, 2);
  }
}

TEST(Checker, RejectsTypeErrors) {
  EXPECT_THROW(parse("fn f() -> Int { return \"s\"; }"), TypeError);
  EXPECT_THROW(parse("fn f(a: Int) -> Int { let a = 2; return a; }"), TypeError);
  EXPECT_THROW(parse("fn f() -> Int { return g(); }"), TypeError);
  EXPECT_THROW(parse("record R { x: Int; } record R { y: Int; }"), TypeError);
  EXPECT_THROW(parse("fn len(s: Str) -> Int { return 0; }"), TypeError);
  EXPECT_NO_THROW(parse("fn f(a: Int, b: Real) -> Real { return a / b; }"));
}

TEST(Interpreter, Arithmetic) {
  const char* src = R"(
    fn add(a: Int, b: Int) -> Int { return a + b; }
    fn div(a: Int, b: Int) -> Int { return a / b; }
    fn mod(a: Int, b: Int) -> Int { return a % b; }
    fn half(a: Int) -> Real { return a / 2.0; }
  )";
  EXPECT_EQ(call(src, "add", {Value::integer(2), Value::integer(3)}).as_int(), 5);
  EXPECT_EQ(call(src, "add", {Value::integer(INT64_MAX), Value::integer(1)}).as_int(), INT64_MIN);
  EXPECT_EQ(call(src, "div", {Value::integer(-7), Value::integer(2)}).as_int(), -3);
  EXPECT_EQ(call(src, "div", {Value::integer(INT64_MIN), Value::integer(-1)}).as_int(), INT64_MIN);
  EXPECT_EQ(call(src, "mod", {Value::integer(7), Value::integer(3)}).as_int(), 1);
  EXPECT_DOUBLE_EQ(call(src, "half", {Value::integer(3)}).as_real(), 1.5);
  EXPECT_THROW(call(src, "div", {Value::integer(1), Value::integer(0)}), std::runtime_error);
}

TEST(Interpreter, StringsAndBuiltins) {
  const char* src = R"(
    fn n(s: Str) -> Int { return len(s); }
    fn cut(s: Str) -> Str { return substr(s, 1, 3); }
    fn h(s: Str) -> Str { return sha1Hex(s); }
    fn cat(a: Str, b: Str) -> Str { return a + b; }
    fn check(s: Str) -> Bool { return startsWith(s, "ab") && endsWith(s, "yz") && contains(s, "mm"); }
  )";
  EXPECT_EQ(call(src, "n", {Value::string("héllo")}).as_int(), 5);
  EXPECT_EQ(call(src, "cut", {Value::string("héllo")}).as_str(), "éll");
  EXPECT_EQ(call(src, "h", {Value::string("abc")}).as_str(), "a9993e364706816aba3e25717850c26c9cd0d89d");
  EXPECT_EQ(call(src, "cat", {Value::string("ab"), Value::string("cd")}).as_str(), "abcd");
  EXPECT_TRUE(call(src, "check", {Value::string("abmmyz")}).as_bool());
}

TEST(Interpreter, LoopsArraysAndRecords) {
  const char* src = R"(
    record P { x: Int; y: Int; }
    fn sum(n: Int) -> Int {
      let xs: [Int] = [];
      let i = 0;
      while (i < n) { push(xs, i); i = i + 1; }
      let t = 0;
      let j = 0;
      while (true) {
        if (j >= size(xs)) { break; }
        t = t + xs[j];
        j = j + 1;
      }
      return t;
    }
    fn mk(a: Int) -> P { return new P(a, a * 2); }
  )";
  EXPECT_EQ(call(src, "sum", {Value::integer(5)}).as_int(), 10);
  const Value p = call(src, "mk", {Value::integer(4)});
  EXPECT_TRUE(deep_equal(p, Value::record("P", {{"x", Value::integer(4)}, {"y", Value::integer(8)}})));
}

TEST(Interpreter, Budgets) {
  const char* src = R"(
    fn spin() -> Int { while (true) { } return 0; }
    fn deep(n: Int) -> Int { return deep(n + 1); }
  )";
  EXPECT_THROW(call(src, "spin"), std::runtime_error);
  EXPECT_THROW(call(src, "deep", {Value::integer(0)}), std::runtime_error);
}

TEST(Interpreter, ExceptionsAndCatch) {
  const char* src = R"(
    exception Boom;
    fn f(x: Int) -> Int {
      try {
        if (x > 0) { throw new Boom("big"); }
        return 1;
      } catch (Boom e) {
        return len(e.message);
      }
    }
  )";
  EXPECT_EQ(call(src, "f", {Value::integer(0)}).as_int(), 1);
  EXPECT_EQ(call(src, "f", {Value::integer(1)}).as_int(), 3);
}

TEST(Interpreter, TestPhasesAndAssertions) {
  const Program p = parse(R"(
    interface Src { fn get(k: Int) -> Int; }
    class Box {
      field s: Src;
      new(s: Src) { self.s = s; }
      fn twice(k: Int) -> Int { return self.s.get(k) * 2; }
    }
  )");
  const TestCase t = parse_test(p, R"(
    test T {
      mock s: Src;
      stub;
      act {
        let b = new Box(s);
        let v = b.twice(3);
      }
      assert {
        assertEquals(8, v);
        verify(s.get(eq(3)), 1);
        assertTrue(v > 0);
      }
    }
  )");
  const auto empty = execute(p, t, std::string_view{});
  EXPECT_EQ(empty.outcome, Outcome::Completed);
  ASSERT_EQ(empty.assertions.size(), 3u);
  EXPECT_EQ(empty.assertions[0].status, AssertionStatus::Failed);
  EXPECT_EQ(empty.assertions[0].actual.as_int(), 0);
  EXPECT_EQ(empty.assertions[1].status, AssertionStatus::Satisfied);
  EXPECT_EQ(empty.assertions[2].status, AssertionStatus::FailedNonEquals);

  const auto good = execute(p, t, std::string_view("let v0 = 4; when s.get(eq(3)) thenReturn v0;"));
  EXPECT_TRUE(good.passed());
  EXPECT_EQ(good.used_count, 1u);
  EXPECT_EQ(good.executed_in_E, t.act_ids);

  const auto wrong = execute(p, t, std::string_view("let v0 = 4; when s.get(eq(2)) thenReturn v0;"));
  EXPECT_FALSE(wrong.passed());
  EXPECT_EQ(wrong.used_count, 0u);
}

TEST(Interpreter, UncaughtExceptionLeavesAssertionsUnexecuted) {
  const Program p = parse(R"(
    exception Bad;
    interface Src { fn get() -> Int; }
    fn read(s: Src) -> Int { return s.get(); }
  )");
  const TestCase t = parse_test(p, R"(
    test T {
      mock s: Src;
      stub;
      act { let v = read(s); }
      assert { assertEquals(1, v); }
    }
  )");
  const auto rep = execute(p, t, std::string_view("let e = new Bad(); when s.get() thenThrow e;"));
  EXPECT_EQ(rep.outcome, Outcome::UncaughtException);
  EXPECT_EQ(rep.exception_phase, Phase::Act);
  EXPECT_EQ(rep.assertions[0].status, AssertionStatus::NotExecuted);
}

TEST(Interpreter, StubTypeErrorsThrowLangError) {
  const Program p = parse("interface Src { fn get() -> Int; } fn read(s: Src) -> Int { return s.get(); }");
  const TestCase t = parse_test(p, "test T { mock s: Src; stub; act { let v = read(s); } assert { assertEquals(1, v); } }");
  EXPECT_THROW(execute(p, t, std::string_view("let v0 = \"x\"; when s.get() thenReturn v0;")), LangError);
  EXPECT_THROW(execute(p, t, std::string_view("when s.nope() thenReturn 1;")), LangError);
}
