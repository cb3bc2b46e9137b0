#pragma once

#include "stubforge/minilang/ast.hpp"

namespace stubforge::ml {

// Pre-order traversal over statements and expressions. The callbacks receive mutable nodes
// when walking a mutable tree and const nodes otherwise.

template <typename ExprT, typename OnExpr>
void walk_expr(ExprT& e, OnExpr&& on_expr);

namespace detail {

template <typename T, typename U>
using same_const_t = std::conditional_t<std::is_const_v<T>, const U, U>;

}  // namespace detail

template <typename ExprT, typename OnExpr>
void walk_expr(ExprT& e, OnExpr&& on_expr) {
  using detail::same_const_t;
  on_expr(e);
  switch (e.kind) {
    case ExprKind::Literal:
    case ExprKind::Var:
    case ExprKind::MockCreate:
      break;
    case ExprKind::Unary:
      walk_expr(*static_cast<same_const_t<ExprT, UnaryExpr>&>(e).operand, on_expr);
      break;
    case ExprKind::Binary: {
      auto& b = static_cast<same_const_t<ExprT, BinaryExpr>&>(e);
      walk_expr(*b.lhs, on_expr);
      walk_expr(*b.rhs, on_expr);
      break;
    }
    case ExprKind::Call:
      for (auto& a : static_cast<same_const_t<ExprT, CallExpr>&>(e).args) walk_expr(*a, on_expr);
      break;
    case ExprKind::MethodCall: {
      auto& m = static_cast<same_const_t<ExprT, MethodCallExpr>&>(e);
      walk_expr(*m.receiver, on_expr);
      for (auto& a : m.args) walk_expr(*a, on_expr);
      break;
    }
    case ExprKind::Field:
      walk_expr(*static_cast<same_const_t<ExprT, FieldExpr>&>(e).object, on_expr);
      break;
    case ExprKind::Index: {
      auto& ix = static_cast<same_const_t<ExprT, IndexExpr>&>(e);
      walk_expr(*ix.array, on_expr);
      walk_expr(*ix.index, on_expr);
      break;
    }
    case ExprKind::New:
      for (auto& a : static_cast<same_const_t<ExprT, NewExpr>&>(e).args) walk_expr(*a, on_expr);
      break;
    case ExprKind::ArrayLit:
      for (auto& a : static_cast<same_const_t<ExprT, ArrayLitExpr>&>(e).items) walk_expr(*a, on_expr);
      break;
  }
}

template <typename BlockT, typename OnStmt, typename OnExpr>
void walk_block(BlockT& block, OnStmt&& on_stmt, OnExpr&& on_expr);

template <typename StmtT, typename OnStmt, typename OnExpr>
void walk_stmt(StmtT& s, OnStmt&& on_stmt, OnExpr&& on_expr) {
  using detail::same_const_t;
  on_stmt(s);
  switch (s.kind) {
    case StmtKind::Let:
      walk_expr(*static_cast<same_const_t<StmtT, LetStmt>&>(s).init, on_expr);
      break;
    case StmtKind::Assign: {
      auto& a = static_cast<same_const_t<StmtT, AssignStmt>&>(s);
      walk_expr(*a.target, on_expr);
      walk_expr(*a.value, on_expr);
      break;
    }
    case StmtKind::If: {
      auto& i = static_cast<same_const_t<StmtT, IfStmt>&>(s);
      walk_expr(*i.cond, on_expr);
      walk_block(i.then_block, on_stmt, on_expr);
      if (i.else_block) walk_block(*i.else_block, on_stmt, on_expr);
      break;
    }
    case StmtKind::While: {
      auto& w = static_cast<same_const_t<StmtT, WhileStmt>&>(s);
      walk_expr(*w.cond, on_expr);
      walk_block(w.body, on_stmt, on_expr);
      break;
    }
    case StmtKind::Return: {
      auto& r = static_cast<same_const_t<StmtT, ReturnStmt>&>(s);
      if (r.value) walk_expr(*r.value, on_expr);
      break;
    }
    case StmtKind::Throw:
      walk_expr(*static_cast<same_const_t<StmtT, ThrowStmt>&>(s).value, on_expr);
      break;
    case StmtKind::Try: {
      auto& t = static_cast<same_const_t<StmtT, TryStmt>&>(s);
      walk_block(t.body, on_stmt, on_expr);
      for (auto& c : t.catches) walk_block(c.body, on_stmt, on_expr);
      break;
    }
    case StmtKind::Break:
    case StmtKind::Continue:
      break;
    case StmtKind::ExprStmt:
      walk_expr(*static_cast<same_const_t<StmtT, ExprStmt>&>(s).expr, on_expr);
      break;
    case StmtKind::Block:
      walk_block(static_cast<same_const_t<StmtT, BlockStmt>&>(s).block, on_stmt, on_expr);
      break;
    case StmtKind::When: {
      auto& w = static_cast<same_const_t<StmtT, WhenStmt>&>(s);
      walk_expr(*w.receiver, on_expr);
      for (auto& m : w.matchers)
        if (m.value) walk_expr(*m.value, on_expr);
      walk_expr(*w.reaction, on_expr);
      break;
    }
  }
}

template <typename BlockT, typename OnStmt, typename OnExpr>
void walk_block(BlockT& block, OnStmt&& on_stmt, OnExpr&& on_expr) {
  for (auto& s : block.stmts) walk_stmt(*s, on_stmt, on_expr);
}

}  // namespace stubforge::ml
