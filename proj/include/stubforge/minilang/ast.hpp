#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stubforge/minilang/types.hpp"
#include "stubforge/minilang/value.hpp"

namespace stubforge::ml {

/// Dense id of an executable AST node. Statements and non-trivial expressions (anything but
/// literals and variable reads) carry one; ids are assigned in parse order.
using InstructionId = std::uint32_t;
inline constexpr InstructionId kNoInstruction = std::numeric_limits<InstructionId>::max();

struct SourceLoc {
  int line = 1;
  int column = 1;
};

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class UnaryOp : std::uint8_t { Neg, Not };
enum class BinaryOp : std::uint8_t { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

const char* op_text(BinaryOp op);

enum class ExprKind : std::uint8_t {
  Literal,
  Var,
  Unary,
  Binary,
  Call,
  MethodCall,
  Field,
  Index,
  New,
  ArrayLit,
  MockCreate,
};

struct Expr {
  explicit Expr(ExprKind k) : kind(k) {}
  virtual ~Expr() = default;
  Expr(const Expr&) = delete;
  Expr& operator=(const Expr&) = delete;

  ExprKind kind;
  InstructionId id = kNoInstruction;
  SourceLoc loc;
  Type type;  // set by the checker
};
using ExprPtr = std::unique_ptr<Expr>;

struct LiteralExpr : Expr {
  LiteralExpr() : Expr(ExprKind::Literal) {}
  Value value;
  int constant_index = -1;  // dense index over Int literals of a program (mutation target)
};

struct VarExpr : Expr {
  VarExpr() : Expr(ExprKind::Var) {}
  std::string name;
  int slot = -1;
};

struct UnaryExpr : Expr {
  UnaryExpr() : Expr(ExprKind::Unary) {}
  UnaryOp op = UnaryOp::Neg;
  ExprPtr operand;
};

struct BinaryExpr : Expr {
  BinaryExpr() : Expr(ExprKind::Binary) {}
  BinaryOp op = BinaryOp::Add;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct CallExpr : Expr {
  CallExpr() : Expr(ExprKind::Call) {}
  std::string callee;
  std::vector<ExprPtr> args;
  int builtin = -1;
  int function = -1;
};

struct MethodCallExpr : Expr {
  MethodCallExpr() : Expr(ExprKind::MethodCall) {}
  ExprPtr receiver;
  std::string method;
  std::vector<ExprPtr> args;
  bool on_interface = false;
  int owner = -1;         // class or interface index
  int method_index = -1;  // index into the owner's methods
};

struct FieldExpr : Expr {
  FieldExpr() : Expr(ExprKind::Field) {}
  ExprPtr object;
  std::string field;
  int field_index = -1;  // -1 with an exception-typed object means `.message`
};

struct IndexExpr : Expr {
  IndexExpr() : Expr(ExprKind::Index) {}
  ExprPtr array;
  ExprPtr index;
};

struct NewExpr : Expr {
  NewExpr() : Expr(ExprKind::New) {}
  std::string type_name;
  std::vector<ExprPtr> args;
  TypeKind target = TypeKind::Void;
  int decl_index = -1;
};

struct ArrayLitExpr : Expr {
  ArrayLitExpr() : Expr(ExprKind::ArrayLit) {}
  std::vector<ExprPtr> items;
};

struct MockCreateExpr : Expr {
  MockCreateExpr() : Expr(ExprKind::MockCreate) {}
  std::string interface;
  int interface_index = -1;
};

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

enum class StmtKind : std::uint8_t {
  Let,
  Assign,
  If,
  While,
  Return,
  Throw,
  Try,
  Break,
  Continue,
  ExprStmt,
  Block,
  When,
};

struct Stmt {
  explicit Stmt(StmtKind k) : kind(k) {}
  virtual ~Stmt() = default;
  Stmt(const Stmt&) = delete;
  Stmt& operator=(const Stmt&) = delete;

  StmtKind kind;
  InstructionId id = kNoInstruction;
  SourceLoc loc;
};
using StmtPtr = std::unique_ptr<Stmt>;

struct Block {
  std::vector<StmtPtr> stmts;
};

struct LetStmt : Stmt {
  LetStmt() : Stmt(StmtKind::Let) {}
  std::string name;
  std::optional<Type> annotation;
  ExprPtr init;
  int slot = -1;
  Type var_type;
};

/// `target = value;` where target is a variable, field or index expression.
struct AssignStmt : Stmt {
  AssignStmt() : Stmt(StmtKind::Assign) {}
  ExprPtr target;
  ExprPtr value;
};

struct IfStmt : Stmt {
  IfStmt() : Stmt(StmtKind::If) {}
  ExprPtr cond;
  Block then_block;
  std::optional<Block> else_block;
};

struct WhileStmt : Stmt {
  WhileStmt() : Stmt(StmtKind::While) {}
  ExprPtr cond;
  Block body;
};

struct ReturnStmt : Stmt {
  ReturnStmt() : Stmt(StmtKind::Return) {}
  ExprPtr value;  // may be null
};

struct ThrowStmt : Stmt {
  ThrowStmt() : Stmt(StmtKind::Throw) {}
  ExprPtr value;
};

struct CatchClause {
  std::string exception_type;
  std::string name;
  int slot = -1;
  Block body;
  SourceLoc loc;
};

struct TryStmt : Stmt {
  TryStmt() : Stmt(StmtKind::Try) {}
  Block body;
  std::vector<CatchClause> catches;
};

struct BreakStmt : Stmt {
  BreakStmt() : Stmt(StmtKind::Break) {}
};

struct ContinueStmt : Stmt {
  ContinueStmt() : Stmt(StmtKind::Continue) {}
};

struct ExprStmt : Stmt {
  ExprStmt() : Stmt(StmtKind::ExprStmt) {}
  ExprPtr expr;
};

struct BlockStmt : Stmt {
  BlockStmt() : Stmt(StmtKind::Block) {}
  Block block;
};

/// Argument matcher in `when` registrations and `verify` assertions: `any` or `eq(expr)`.
struct MatcherExpr {
  bool any = true;
  ExprPtr value;
};

/// Stub registration: `when recv.m(matchers) thenReturn e;` / `thenThrow e;`.
struct WhenStmt : Stmt {
  WhenStmt() : Stmt(StmtKind::When) {}
  ExprPtr receiver;
  std::string method;
  std::vector<MatcherExpr> matchers;
  bool is_throw = false;
  ExprPtr reaction;
  int interface_index = -1;
  int method_index = -1;
};

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

struct Param {
  std::string name;
  Type type;
  SourceLoc loc;
};

struct FieldDecl {
  std::string name;
  Type type;
  SourceLoc loc;
};

struct RecordDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  SourceLoc loc;
};

struct ExceptionDecl {
  std::string name;
  SourceLoc loc;
  bool builtin = false;
};

struct MethodSig {
  std::string name;
  std::vector<Param> params;
  Type ret = Type::void_type();
  SourceLoc loc;
};

struct InterfaceDecl {
  std::string name;
  std::vector<MethodSig> methods;
  SourceLoc loc;

  int find_method(std::string_view method) const;
};

struct FunctionDecl {
  std::string name;
  std::vector<Param> params;
  Type ret = Type::void_type();
  Block body;
  SourceLoc loc;
  int frame_size = 0;  // set by the checker; methods reserve slot 0 for `self`
};

struct ClassDecl {
  std::string name;
  std::vector<FieldDecl> fields;
  std::optional<FunctionDecl> ctor;
  std::vector<FunctionDecl> methods;
  SourceLoc loc;

  int find_method(std::string_view method) const;
  int find_field(std::string_view field) const;
};

/// A parsed and checked minilang compilation unit: the CUT and its dependency declarations.
struct Program {
  std::vector<RecordDecl> records;
  std::vector<ExceptionDecl> exceptions;  // builtin exception types come first
  std::vector<InterfaceDecl> interfaces;
  std::vector<ClassDecl> classes;
  std::vector<FunctionDecl> functions;
  InstructionId instruction_count = 0;
  int constant_count = 0;
  std::string source;

  int find_record(std::string_view name) const;
  int find_exception(std::string_view name) const;
  int find_interface(std::string_view name) const;
  int find_class(std::string_view name) const;
  int find_function(std::string_view name) const;

  /// Resolves a declared type name to its kind; Void when undeclared.
  TypeKind kind_of(std::string_view name) const;
};

// ---------------------------------------------------------------------------
// Test cases
// ---------------------------------------------------------------------------

struct MockDecl {
  std::string name;
  Type type;
  SourceLoc loc;
  int slot = -1;
};

enum class AssertionKind : std::uint8_t { Equals, True, NotNull, Same, Throws, Verify };

const char* assertion_name(AssertionKind kind);

struct Assertion {
  AssertionKind kind = AssertionKind::Equals;
  InstructionId id = kNoInstruction;
  SourceLoc loc;
  ExprPtr expected;  // Equals/Same: expected; True/NotNull: the checked expression
  ExprPtr actual;    // Equals/Same only
  std::string exception_type;  // Throws
  Block block;                 // Throws
  ExprPtr verify_mock;         // Verify
  std::string verify_method;
  std::vector<MatcherExpr> matchers;
  std::int64_t times = 0;
  int interface_index = -1;
  int method_index = -1;
};

/// A variable visible at the stub site (mock declarations and arrange-prelude lets).
struct ScopeVar {
  std::string name;
  Type type;
  int slot = -1;
  bool is_mock = false;
};

/// A test case: mocks V, the stub site, act block E and assertions A.
struct TestCase {
  std::string name;
  std::vector<MockDecl> mocks;
  Block prelude;  // lets between the mock declarations and the stub site
  SourceLoc stub_site;
  Block act;
  std::vector<Assertion> asserts;

  InstructionId first_id = 0;
  InstructionId end_id = 0;
  std::vector<InstructionId> act_ids;  // sorted instruction ids of E
  std::vector<ScopeVar> scope;         // set by the checker
  int frame_size = 0;                  // set by the checker
  std::string source;

  const ScopeVar* find_scope_var(std::string_view name) const;
};

/// A parsed arrange block inserted at a test's stub site.
struct StubBlock {
  Block block;
  InstructionId first_id = 0;
  InstructionId end_id = 0;
  int frame_size = 0;  // total frame size including the test's slots
};

}  // namespace stubforge::ml
