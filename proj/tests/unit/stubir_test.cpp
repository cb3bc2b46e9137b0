#include <gtest/gtest.h>

#include "stubforge/cli/corpus.hpp"
#include "stubforge/stubir/stubir.hpp"

using namespace stubforge;
using namespace stubforge::stubir;

namespace {

const cli::CorpusEntry& l1() {
  static const cli::CorpusEntry e = cli::load_corpus_entry(STUBFORGE_CORPUS_DIR, "L1");
  return e;
}

}  // namespace

TEST(StubIr, ParseRenderRoundTrip) {
  const auto& e = l1();
  const auto sp = parse_stub(*e.program, *e.test, *e.truth_stub);
  EXPECT_TRUE(validate(sp, *e.test, *e.program).empty());
  EXPECT_EQ(sp.stub_call_count(), 3u);
  const std::string text = render(sp, *e.test);
  const auto again = parse_stub(*e.program, *e.test, text);
  EXPECT_EQ(render(again, *e.test), text);
}

TEST(StubIr, LowersNestedExpressions) {
  const auto& e = l1();
  const auto sp = parse_stub(*e.program, *e.test,
                             "let u = mock User; when u.getPasswordHash() thenReturn sha1Hex(\"bar\");");
  EXPECT_EQ(render(sp, *e.test),
            "let v0 = mock User;\nlet v1 = \"bar\";\nlet v2 = sha1Hex(v1);\nwhen v0.getPasswordHash() thenReturn v2;\n");
}

TEST(StubIr, ValidateFindsViolations) {
  const auto& e = l1();
  StubProgram sp;
  // Use before definition.
  sp.elements.push_back(StubCall{VarRef::test(0), "findUser", {ArgMatcher::eq(VarRef::local(3))}, {false, VarRef::local(4)}});
  EXPECT_FALSE(validate(sp, *e.test, *e.program).empty());

  StubProgram wrong_type;
  wrong_type.elements.push_back(VarDef{0, ml::Type::int_type(), Literal{ml::Value::integer(1)}});
  wrong_type.elements.push_back(StubCall{VarRef::test(0), "findUser", {ArgMatcher::eq(VarRef::local(0))}, {false, VarRef::local(0)}});
  EXPECT_FALSE(validate(wrong_type, *e.test, *e.program).empty());

  StubProgram too_long;
  for (int i = 0; i < 51; ++i) too_long.elements.push_back(VarDef{i, ml::Type::int_type(), Literal{ml::Value::integer(i)}});
  EXPECT_FALSE(validate(too_long, *e.test, *e.program).empty());
}

TEST(StubIr, BackwardSliceCarriesDependencies) {
  const auto& e = l1();
  const auto sp = parse_stub(*e.program, *e.test, *e.truth_stub);
  // The getPasswordHash stub needs the user mock, "bar" and its hash, but nothing else.
  std::size_t idx = 0;
  for (; idx < sp.size(); ++idx)
    if (is_stub_call(sp.elements[idx])) break;
  const auto slice = backward_slice(sp, idx);
  EXPECT_EQ(slice.size(), 4u);
  EXPECT_EQ(render(slice, *e.test),
            "let v0 = mock User;\nlet v1 = \"bar\";\nlet v2 = sha1Hex(v1);\nwhen v0.getPasswordHash() thenReturn v2;\n");
  const auto lit = backward_slice(sp, 1);
  EXPECT_EQ(lit.size(), 1u);
}

TEST(StubIr, CanonicalizeRenumbersByDefinitionOrder) {
  StubProgram sp;
  sp.elements.push_back(VarDef{7, ml::Type::int_type(), Literal{ml::Value::integer(1)}});
  sp.elements.push_back(VarDef{3, ml::Type::array_of(ml::Type::int_type()), ArrayOf{{VarRef::local(7)}}});
  const auto c = canonicalize(sp);
  EXPECT_EQ(std::get<VarDef>(c.elements[0]).var, 0);
  EXPECT_EQ(std::get<ArrayOf>(std::get<VarDef>(c.elements[1]).expr).items[0].id, 0);
}

TEST(StubIr, ApiSymbols) {
  const auto syms = api_symbols(*l1().program);
  auto has = [&](const std::string& name, ApiKind kind) {
    for (const auto& s : syms)
      if (s->name == name && s->kind == kind) return true;
    return false;
  };
  EXPECT_TRUE(has("TimeoutException", ApiKind::Constructor));
  EXPECT_TRUE(has("LoginResult", ApiKind::Constructor));
  EXPECT_TRUE(has("success", ApiKind::FieldAccess));
  EXPECT_TRUE(has("login", ApiKind::Method));
  EXPECT_TRUE(has("sha1Hex", ApiKind::Function));
  EXPECT_FALSE(has("push", ApiKind::Function));
}

TEST(StubIr, RejectsFormsOutsideTheGrammar) {
  const auto& e = l1();
  EXPECT_ANY_THROW(parse_stub(*e.program, *e.test, "let u = null;"));
  EXPECT_ANY_THROW(parse_stub(*e.program, *e.test, "let u = dao.findUser(\"x\");"));
}
