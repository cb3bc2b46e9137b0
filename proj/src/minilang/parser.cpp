#include "stubforge/minilang/parser.hpp"

#include <utility>

#include "stubforge/minilang/errors.hpp"
#include "stubforge/minilang/lexer.hpp"

namespace stubforge::ml {

namespace {

constexpr const char* kBuiltinExceptions[] = {"NullError", "ArithmeticError", "IndexError"};

class Parser {
 public:
  Parser(std::string_view source, InstructionId id_base, bool stub_mode)
      : tokens_(tokenize(source)), next_id_(id_base), stub_mode_(stub_mode) {}

  Program program() {
    Program prog;
    for (const char* name : kBuiltinExceptions) prog.exceptions.push_back({name, {}, true});
    number_constants_ = true;
    while (!at_end()) {
      if (accept_keyword("record")) {
        prog.records.push_back(record_decl());
      } else if (accept_keyword("exception")) {
        ExceptionDecl d;
        d.loc = previous().loc;
        d.name = expect_ident("exception name");
        expect(";");
        prog.exceptions.push_back(std::move(d));
      } else if (accept_keyword("interface")) {
        prog.interfaces.push_back(interface_decl());
      } else if (accept_keyword("class")) {
        prog.classes.push_back(class_decl());
      } else if (accept_keyword("fn")) {
        prog.functions.push_back(function_decl(previous().loc));
      } else {
        fail("expected a declaration");
      }
    }
    prog.instruction_count = next_id_;
    prog.constant_count = constant_counter_;
    return prog;
  }

  TestCase test(InstructionId base) {
    TestCase tc;
    tc.first_id = base;
    expect_keyword("test");
    tc.name = expect_ident("test name");
    expect("{");
    bool saw_stub = false;
    while (!saw_stub) {
      if (accept_keyword("mock")) {
        MockDecl m;
        m.loc = previous().loc;
        m.name = expect_ident("mock variable");
        expect(":");
        m.type = type();
        expect(";");
        tc.mocks.push_back(std::move(m));
      } else if (accept_keyword("stub")) {
        tc.stub_site = previous().loc;
        expect(";");
        saw_stub = true;
      } else if (peek_keyword("let")) {
        tc.prelude.stmts.push_back(statement());
      } else {
        fail("expected `mock`, `let` or the `stub;` site marker");
      }
    }
    expect_keyword("act");
    tc.act = block();
    expect_keyword("assert");
    expect("{");
    while (!accept("}")) tc.asserts.push_back(assertion());
    expect("}");
    if (!at_end()) fail("unexpected input after test");
    tc.end_id = next_id_;
    return tc;
  }

  StubBlock stub_block(InstructionId base) {
    StubBlock sb;
    sb.first_id = base;
    while (!at_end()) sb.block.stmts.push_back(statement());
    sb.end_id = next_id_;
    return sb;
  }

 private:
  // -- token helpers --------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& previous() const { return tokens_[pos_ - 1]; }
  bool at_end() const { return peek().kind == TokenKind::End; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.loc, msg + ", found " + found);
  }

  bool peek_punct(std::string_view p, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::Punct && t.text == p;
  }
  bool peek_keyword(std::string_view k, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::Keyword && t.text == k;
  }
  bool accept(std::string_view p) {
    if (!peek_punct(p)) return false;
    ++pos_;
    return true;
  }
  bool accept_keyword(std::string_view k) {
    if (!peek_keyword(k)) return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail("expected '" + std::string(p) + "'");
  }
  void expect_keyword(std::string_view k) {
    if (!accept_keyword(k)) fail("expected `" + std::string(k) + "`");
  }
  std::string expect_ident(const char* what) {
    if (peek().kind != TokenKind::Identifier) fail(std::string("expected ") + what);
    return tokens_[pos_++].text;
  }

  InstructionId fresh_id() { return next_id_++; }

  // -- declarations ---------------------------------------------------------

  Type type() {
    if (accept("[")) {
      Type elem = type();
      expect("]");
      return Type::array_of(std::move(elem));
    }
    const Token& t = peek();
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "Int") { ++pos_; return Type::int_type(); }
      if (t.text == "Real") { ++pos_; return Type::real_type(); }
      if (t.text == "Bool") { ++pos_; return Type::bool_type(); }
      if (t.text == "Str") { ++pos_; return Type::str_type(); }
      if (t.text == "Void") { ++pos_; return Type::void_type(); }
    }
    if (t.kind == TokenKind::Identifier) {
      ++pos_;
      return Type::named(t.text);
    }
    fail("expected a type");
  }

  std::vector<Param> params() {
    std::vector<Param> out;
    expect("(");
    if (accept(")")) return out;
    do {
      Param p;
      p.loc = peek().loc;
      p.name = expect_ident("parameter name");
      expect(":");
      p.type = type();
      out.push_back(std::move(p));
    } while (accept(","));
    expect(")");
    return out;
  }

  Type return_type() { return accept("->") ? type() : Type::void_type(); }

  RecordDecl record_decl() {
    RecordDecl d;
    d.loc = previous().loc;
    d.name = expect_ident("record name");
    expect("{");
    while (!accept("}")) {
      FieldDecl f;
      f.loc = peek().loc;
      f.name = expect_ident("field name");
      expect(":");
      f.type = type();
      expect(";");
      d.fields.push_back(std::move(f));
    }
    return d;
  }

  InterfaceDecl interface_decl() {
    InterfaceDecl d;
    d.loc = previous().loc;
    d.name = expect_ident("interface name");
    expect("{");
    while (!accept("}")) {
      expect_keyword("fn");
      MethodSig m;
      m.loc = previous().loc;
      m.name = expect_ident("method name");
      m.params = params();
      m.ret = return_type();
      expect(";");
      d.methods.push_back(std::move(m));
    }
    return d;
  }

  FunctionDecl function_decl(SourceLoc loc) {
    FunctionDecl f;
    f.loc = loc;
    f.name = expect_ident("function name");
    f.params = params();
    f.ret = return_type();
    f.body = block();
    return f;
  }

  ClassDecl class_decl() {
    ClassDecl c;
    c.loc = previous().loc;
    c.name = expect_ident("class name");
    expect("{");
    while (!accept("}")) {
      if (accept_keyword("field")) {
        FieldDecl f;
        f.loc = previous().loc;
        f.name = expect_ident("field name");
        expect(":");
        f.type = type();
        expect(";");
        c.fields.push_back(std::move(f));
      } else if (accept_keyword("new")) {
        if (c.ctor) throw SyntaxError(previous().loc, "duplicate constructor in class " + c.name);
        FunctionDecl f;
        f.loc = previous().loc;
        f.name = "new";
        f.params = params();
        f.body = block();
        c.ctor = std::move(f);
      } else if (accept_keyword("fn")) {
        c.methods.push_back(function_decl(previous().loc));
      } else {
        fail("expected `field`, `new` or `fn` in class body");
      }
    }
    return c;
  }

  // -- statements -----------------------------------------------------------

  Block block() {
    Block b;
    expect("{");
    while (!accept("}")) {
      if (at_end()) fail("expected '}'");
      b.stmts.push_back(statement());
    }
    return b;
  }

  template <typename T>
  std::unique_ptr<T> make_stmt(SourceLoc loc) {
    auto s = std::make_unique<T>();
    s->loc = loc;
    s->id = fresh_id();
    return s;
  }

  StmtPtr statement() {
    const SourceLoc loc = peek().loc;
    if (accept_keyword("let")) {
      auto s = make_stmt<LetStmt>(loc);
      s->name = expect_ident("variable name");
      if (accept(":")) s->annotation = type();
      expect("=");
      s->init = expression();
      expect(";");
      return s;
    }
    if (accept_keyword("if")) return if_statement(loc);
    if (accept_keyword("while")) {
      auto s = make_stmt<WhileStmt>(loc);
      expect("(");
      s->cond = expression();
      expect(")");
      s->body = block();
      return s;
    }
    if (accept_keyword("return")) {
      auto s = make_stmt<ReturnStmt>(loc);
      if (!accept(";")) {
        s->value = expression();
        expect(";");
      }
      return s;
    }
    if (accept_keyword("throw")) {
      auto s = make_stmt<ThrowStmt>(loc);
      s->value = expression();
      expect(";");
      return s;
    }
    if (accept_keyword("try")) {
      auto s = make_stmt<TryStmt>(loc);
      s->body = block();
      while (accept_keyword("catch")) {
        CatchClause c;
        c.loc = previous().loc;
        expect("(");
        c.exception_type = expect_ident("exception type");
        c.name = expect_ident("catch variable");
        expect(")");
        c.body = block();
        s->catches.push_back(std::move(c));
      }
      if (s->catches.empty()) fail("expected `catch`");
      return s;
    }
    if (accept_keyword("break")) {
      auto s = make_stmt<BreakStmt>(loc);
      expect(";");
      return s;
    }
    if (accept_keyword("continue")) {
      auto s = make_stmt<ContinueStmt>(loc);
      expect(";");
      return s;
    }
    if (peek_keyword("when")) {
      if (!stub_mode_) fail("`when` is only allowed in stub code");
      ++pos_;
      return when_statement(loc);
    }
    if (peek_punct("{")) {
      auto s = make_stmt<BlockStmt>(loc);
      s->block = block();
      return s;
    }
    const InstructionId id = fresh_id();
    ExprPtr e = expression();
    if (accept("=")) {
      if (e->kind != ExprKind::Var && e->kind != ExprKind::Field && e->kind != ExprKind::Index)
        throw SyntaxError(loc, "invalid assignment target");
      auto s = std::make_unique<AssignStmt>();
      s->loc = loc;
      s->id = id;
      s->target = std::move(e);
      s->value = expression();
      expect(";");
      return s;
    }
    expect(";");
    auto s = std::make_unique<ExprStmt>();
    s->loc = loc;
    s->id = id;
    s->expr = std::move(e);
    return s;
  }

  StmtPtr if_statement(SourceLoc loc) {
    auto s = make_stmt<IfStmt>(loc);
    expect("(");
    s->cond = expression();
    expect(")");
    s->then_block = block();
    if (accept_keyword("else")) {
      if (peek_keyword("if")) {
        const SourceLoc inner = peek().loc;
        ++pos_;
        Block b;
        b.stmts.push_back(if_statement(inner));
        s->else_block = std::move(b);
      } else {
        s->else_block = block();
      }
    }
    return s;
  }

  std::vector<MatcherExpr> matchers() {
    std::vector<MatcherExpr> out;
    expect("(");
    if (accept(")")) return out;
    do {
      MatcherExpr m;
      if (accept_keyword("any")) {
        m.any = true;
      } else if (peek().kind == TokenKind::Identifier && peek().text == "eq" && peek_punct("(", 1)) {
        pos_ += 2;
        m.any = false;
        m.value = expression();
        expect(")");
      } else {
        fail("expected an argument matcher (`any` or `eq(...)`)");
      }
      out.push_back(std::move(m));
    } while (accept(","));
    expect(")");
    return out;
  }

  ExprPtr var_ref(std::string name, SourceLoc loc) {
    auto v = std::make_unique<VarExpr>();
    v->loc = loc;
    v->name = std::move(name);
    return v;
  }

  StmtPtr when_statement(SourceLoc loc) {
    auto s = make_stmt<WhenStmt>(loc);
    const SourceLoc rloc = peek().loc;
    s->receiver = var_ref(expect_ident("mock variable"), rloc);
    expect(".");
    s->method = expect_ident("method name");
    s->matchers = matchers();
    if (accept_keyword("thenReturn")) {
      s->is_throw = false;
    } else if (accept_keyword("thenThrow")) {
      s->is_throw = true;
    } else {
      fail("expected `thenReturn` or `thenThrow`");
    }
    s->reaction = expression();
    expect(";");
    return s;
  }

  Assertion assertion() {
    Assertion a;
    a.loc = peek().loc;
    a.id = fresh_id();
    if (accept_keyword("verify")) {
      a.kind = AssertionKind::Verify;
      expect("(");
      const SourceLoc mloc = peek().loc;
      a.verify_mock = var_ref(expect_ident("mock variable"), mloc);
      expect(".");
      a.verify_method = expect_ident("method name");
      a.matchers = matchers();
      expect(",");
      if (peek().kind != TokenKind::IntLiteral) fail("expected an integer call count");
      a.times = tokens_[pos_++].literal.as_int();
      expect(")");
      expect(";");
      return a;
    }
    const std::string name = expect_ident("an assertion");
    if (name == "assertThrows") {
      a.kind = AssertionKind::Throws;
      expect("(");
      a.exception_type = expect_ident("exception type");
      expect(")");
      a.block = block();
      return a;
    }
    expect("(");
    if (name == "assertEquals" || name == "assertSame") {
      a.kind = name == "assertEquals" ? AssertionKind::Equals : AssertionKind::Same;
      a.expected = expression();
      expect(",");
      a.actual = expression();
    } else if (name == "assertTrue" || name == "assertNotNull") {
      a.kind = name == "assertTrue" ? AssertionKind::True : AssertionKind::NotNull;
      a.expected = expression();
    } else {
      throw SyntaxError(a.loc, "unknown assertion `" + name + "`");
    }
    expect(")");
    expect(";");
    return a;
  }

  // -- expressions ----------------------------------------------------------

  ExprPtr expression() { return binary(0); }

  static int precedence(const Token& t, BinaryOp& op) {
    if (t.kind != TokenKind::Punct) return -1;
    const std::string& s = t.text;
    if (s == "||") { op = BinaryOp::Or; return 1; }
    if (s == "&&") { op = BinaryOp::And; return 2; }
    if (s == "==") { op = BinaryOp::Eq; return 3; }
    if (s == "!=") { op = BinaryOp::Ne; return 3; }
    if (s == "<") { op = BinaryOp::Lt; return 4; }
    if (s == "<=") { op = BinaryOp::Le; return 4; }
    if (s == ">") { op = BinaryOp::Gt; return 4; }
    if (s == ">=") { op = BinaryOp::Ge; return 4; }
    if (s == "+") { op = BinaryOp::Add; return 5; }
    if (s == "-") { op = BinaryOp::Sub; return 5; }
    if (s == "*") { op = BinaryOp::Mul; return 6; }
    if (s == "/") { op = BinaryOp::Div; return 6; }
    if (s == "%") { op = BinaryOp::Mod; return 6; }
    return -1;
  }

  ExprPtr binary(int min_prec) {
    ExprPtr lhs = unary();
    for (;;) {
      BinaryOp op{};
      const int prec = precedence(peek(), op);
      if (prec < 0 || prec < min_prec) break;
      const SourceLoc loc = peek().loc;
      ++pos_;
      auto e = std::make_unique<BinaryExpr>();
      e->loc = loc;
      e->id = fresh_id();
      e->op = op;
      e->lhs = std::move(lhs);
      e->rhs = binary(prec + 1);
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr unary() {
    const SourceLoc loc = peek().loc;
    if (accept("-")) {
      // A minus directly on a numeric literal folds into the literal.
      if (peek().kind == TokenKind::IntLiteral || peek().kind == TokenKind::RealLiteral) {
        const Token& t = tokens_[pos_++];
        auto lit = std::make_unique<LiteralExpr>();
        lit->loc = loc;
        if (t.kind == TokenKind::IntLiteral) {
          lit->value = Value::integer(-t.literal.as_int());
          if (number_constants_) lit->constant_index = constant_counter_++;
        } else {
          lit->value = Value::real(-t.literal.as_real());
        }
        return postfix(std::move(lit));
      }
      auto e = std::make_unique<UnaryExpr>();
      e->loc = loc;
      e->id = fresh_id();
      e->op = UnaryOp::Neg;
      e->operand = unary();
      return e;
    }
    if (accept("!")) {
      auto e = std::make_unique<UnaryExpr>();
      e->loc = loc;
      e->id = fresh_id();
      e->op = UnaryOp::Not;
      e->operand = unary();
      return e;
    }
    return postfix(primary());
  }

  std::vector<ExprPtr> arguments() {
    std::vector<ExprPtr> out;
    expect("(");
    if (accept(")")) return out;
    do {
      out.push_back(expression());
    } while (accept(","));
    expect(")");
    return out;
  }

  ExprPtr postfix(ExprPtr e) {
    for (;;) {
      const SourceLoc loc = peek().loc;
      if (accept(".")) {
        std::string name = expect_ident("member name");
        if (peek_punct("(")) {
          auto m = std::make_unique<MethodCallExpr>();
          m->loc = loc;
          m->id = fresh_id();
          m->receiver = std::move(e);
          m->method = std::move(name);
          m->args = arguments();
          e = std::move(m);
        } else {
          auto f = std::make_unique<FieldExpr>();
          f->loc = loc;
          f->id = fresh_id();
          f->object = std::move(e);
          f->field = std::move(name);
          e = std::move(f);
        }
      } else if (accept("[")) {
        auto ix = std::make_unique<IndexExpr>();
        ix->loc = loc;
        ix->id = fresh_id();
        ix->array = std::move(e);
        ix->index = expression();
        expect("]");
        e = std::move(ix);
      } else {
        return e;
      }
    }
  }

  ExprPtr primary() {
    const Token& t = peek();
    const SourceLoc loc = t.loc;
    switch (t.kind) {
      case TokenKind::IntLiteral:
      case TokenKind::RealLiteral:
      case TokenKind::StrLiteral: {
        auto lit = std::make_unique<LiteralExpr>();
        lit->loc = loc;
        lit->value = t.literal;
        if (t.kind == TokenKind::IntLiteral && number_constants_)
          lit->constant_index = constant_counter_++;
        ++pos_;
        return lit;
      }
      case TokenKind::Identifier: {
        std::string name = t.text;
        ++pos_;
        if (peek_punct("(")) {
          auto c = std::make_unique<CallExpr>();
          c->loc = loc;
          c->id = fresh_id();
          c->callee = std::move(name);
          c->args = arguments();
          return c;
        }
        return var_ref(std::move(name), loc);
      }
      case TokenKind::Keyword: {
        if (t.text == "true" || t.text == "false" || t.text == "null") {
          auto lit = std::make_unique<LiteralExpr>();
          lit->loc = loc;
          if (t.text != "null") lit->value = t.literal;
          ++pos_;
          return lit;
        }
        if (t.text == "self") {
          ++pos_;
          return var_ref("self", loc);
        }
        if (t.text == "new") {
          ++pos_;
          auto n = std::make_unique<NewExpr>();
          n->loc = loc;
          n->id = fresh_id();
          n->type_name = expect_ident("type name after `new`");
          n->args = arguments();
          return n;
        }
        if (t.text == "mock") {
          if (!stub_mode_) fail("`mock T` is only allowed in stub code");
          ++pos_;
          auto m = std::make_unique<MockCreateExpr>();
          m->loc = loc;
          m->id = fresh_id();
          m->interface = expect_ident("interface name after `mock`");
          return m;
        }
        break;
      }
      case TokenKind::Punct: {
        if (t.text == "(") {
          ++pos_;
          ExprPtr e = expression();
          expect(")");
          return e;
        }
        if (t.text == "[") {
          ++pos_;
          auto a = std::make_unique<ArrayLitExpr>();
          a->loc = loc;
          a->id = fresh_id();
          if (!accept("]")) {
            do {
              a->items.push_back(expression());
            } while (accept(","));
            expect("]");
          }
          return a;
        }
        break;
      }
      default:
        break;
    }
    fail("expected an expression");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  InstructionId next_id_;
  bool stub_mode_;
  bool number_constants_ = false;
  int constant_counter_ = 0;
};

}  // namespace

Program parse_program_syntax(std::string_view source) {
  Program p = Parser(source, 0, false).program();
  p.source = std::string(source);
  return p;
}

TestCase parse_test_syntax(std::string_view source, InstructionId id_base) {
  TestCase tc = Parser(source, id_base, false).test(id_base);
  tc.source = std::string(source);
  return tc;
}

StubBlock parse_stub_syntax(std::string_view source, InstructionId id_base) {
  return Parser(source, id_base, true).stub_block(id_base);
}

}  // namespace stubforge::ml
