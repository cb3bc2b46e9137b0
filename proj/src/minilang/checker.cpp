#include <algorithm>
#include <cctype>
#include <set>

#include "stubforge/minilang/builtins.hpp"
#include "stubforge/minilang/minilang.hpp"
#include "stubforge/minilang/parser.hpp"
#include "stubforge/minilang/walk.hpp"

namespace stubforge::ml {

namespace {

bool reserved_stub_name(std::string_view name) {
  if (name.size() < 2 || name[0] != 'v') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Checker {
 public:
  explicit Checker(const Program& prog) : prog_(prog) {}

  Type resolve(const Type& t, SourceLoc loc, bool allow_void = false) const {
    switch (t.kind()) {
      case TypeKind::Void:
        if (!allow_void) throw TypeError(loc, "Void is only valid as a return type");
        return t;
      case TypeKind::Array:
        return Type::array_of(resolve(t.element(), loc));
      case TypeKind::Named: {
        const TypeKind k = prog_.kind_of(t.name());
        if (k == TypeKind::Void) throw TypeError(loc, "undeclared type `" + t.name() + "`");
        return Type::declared(k, t.name());
      }
      default:
        return t;
    }
  }

  // -- scopes ---------------------------------------------------------------

  struct Local {
    std::string name;
    Type type;
    int slot;
  };

  void begin_frame(int first_slot) {
    scopes_.clear();
    scopes_.emplace_back();
    next_slot_ = first_slot;
    max_slot_ = first_slot;
  }
  void push_scope() { scopes_.emplace_back(); }
  void pop_scope() { scopes_.pop_back(); }

  const Local* lookup(std::string_view name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      for (const auto& l : *it)
        if (l.name == name) return &l;
    return nullptr;
  }

  int declare(const std::string& name, Type type, SourceLoc loc) {
    if (lookup(name)) throw TypeError(loc, "variable `" + name + "` is already declared");
    if (name == "self") throw TypeError(loc, "`self` cannot be redeclared");
    const int slot = next_slot_++;
    max_slot_ = std::max(max_slot_, next_slot_);
    scopes_.back().push_back({name, std::move(type), slot});
    return slot;
  }

  // -- expressions ----------------------------------------------------------

  void require_assignable(const Type& to, const Type& from, SourceLoc loc, const char* what) const {
    if (!assignable(to, from))
      throw TypeError(loc, std::string(what) + ": expected " + to.str() + ", got " + from.str());
  }

  void check_args(const std::vector<ExprPtr>& args, const std::vector<Param>& params,
                  SourceLoc loc, const std::string& callee) {
    if (args.size() != params.size())
      throw TypeError(loc, "`" + callee + "` expects " + std::to_string(params.size()) +
                               " argument(s), got " + std::to_string(args.size()));
    for (std::size_t i = 0; i < args.size(); ++i)
      require_assignable(params[i].type, expr(*args[i]), args[i]->loc, "argument type mismatch");
  }

  Type expr(Expr& e, const Type* hint = nullptr) {
    e.type = expr_impl(e, hint);
    return e.type;
  }

  Type expr_impl(Expr& e, const Type* hint) {
    switch (e.kind) {
      case ExprKind::Literal: {
        const auto& lit = static_cast<LiteralExpr&>(e);
        switch (lit.value.kind()) {
          case ValueKind::Int: return Type::int_type();
          case ValueKind::Real: return Type::real_type();
          case ValueKind::Bool: return Type::bool_type();
          case ValueKind::Str: return Type::str_type();
          default: return Type::null_type();
        }
      }
      case ExprKind::Var: {
        auto& v = static_cast<VarExpr&>(e);
        const Local* l = lookup(v.name);
        if (!l) {
          if (hidden_mocks_ && hidden_mocks_->count(v.name))
            throw TypeError(e.loc, "mock `" + v.name + "` cannot be used before the stub site");
          throw TypeError(e.loc, "undeclared variable `" + v.name + "`");
        }
        v.slot = l->slot;
        return l->type;
      }
      case ExprKind::Unary: {
        auto& u = static_cast<UnaryExpr&>(e);
        const Type t = expr(*u.operand);
        if (u.op == UnaryOp::Neg) {
          if (!t.is_numeric()) throw TypeError(e.loc, "unary `-` needs a number, got " + t.str());
          return t;
        }
        if (t.kind() != TypeKind::Bool) throw TypeError(e.loc, "`!` needs Bool, got " + t.str());
        return t;
      }
      case ExprKind::Binary:
        return binary(static_cast<BinaryExpr&>(e));
      case ExprKind::Call:
        return call(static_cast<CallExpr&>(e));
      case ExprKind::MethodCall:
        return method_call(static_cast<MethodCallExpr&>(e));
      case ExprKind::Field:
        return field(static_cast<FieldExpr&>(e));
      case ExprKind::Index: {
        auto& ix = static_cast<IndexExpr&>(e);
        const Type a = expr(*ix.array);
        if (a.kind() != TypeKind::Array) throw TypeError(e.loc, "indexing a non-array " + a.str());
        if (expr(*ix.index).kind() != TypeKind::Int)
          throw TypeError(ix.index->loc, "array index must be Int");
        return a.element();
      }
      case ExprKind::New:
        return new_expr(static_cast<NewExpr&>(e));
      case ExprKind::ArrayLit: {
        auto& a = static_cast<ArrayLitExpr&>(e);
        std::optional<Type> elem;
        if (hint && hint->kind() == TypeKind::Array) elem = hint->element();
        std::vector<Type> item_types;
        for (auto& item : a.items) item_types.push_back(expr(*item));
        if (!elem)
          for (const auto& t : item_types)
            if (t.kind() != TypeKind::Null) {
              elem = t;
              break;
            }
        if (!elem) throw TypeError(e.loc, "cannot infer the element type of this array");
        if (elem->is_void()) throw TypeError(e.loc, "array of Void");
        for (std::size_t i = 0; i < item_types.size(); ++i)
          require_assignable(*elem, item_types[i], a.items[i]->loc, "array element type mismatch");
        return Type::array_of(*elem);
      }
      case ExprKind::MockCreate: {
        auto& m = static_cast<MockCreateExpr&>(e);
        m.interface_index = prog_.find_interface(m.interface);
        if (m.interface_index < 0)
          throw TypeError(e.loc, "`mock` needs an interface type, `" + m.interface + "` is not one");
        return Type::declared(TypeKind::Interface, m.interface);
      }
    }
    return Type::void_type();
  }

  Type binary(BinaryExpr& b) {
    if (act_mode_ && (b.op == BinaryOp::And || b.op == BinaryOp::Or))
      throw TypeError(b.loc, "the act block must be straight-line (no short-circuit operators)");
    const Type l = expr(*b.lhs);
    const Type r = expr(*b.rhs);
    switch (b.op) {
      case BinaryOp::Add:
        if (l.kind() == TypeKind::Str && r.kind() == TypeKind::Str) return l;
        [[fallthrough]];
      case BinaryOp::Sub:
      case BinaryOp::Mul:
      case BinaryOp::Div:
        if (!l.is_numeric() || !r.is_numeric())
          throw TypeError(b.loc, std::string("operator `") + op_text(b.op) + "` not defined for " +
                                     l.str() + " and " + r.str());
        return (l.kind() == TypeKind::Int && r.kind() == TypeKind::Int) ? l : Type::real_type();
      case BinaryOp::Mod:
        if (l.kind() != TypeKind::Int || r.kind() != TypeKind::Int)
          throw TypeError(b.loc, "`%` needs Int operands");
        return l;
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge:
        if (!l.is_numeric() || !r.is_numeric())
          throw TypeError(b.loc, std::string("comparison `") + op_text(b.op) + "` needs numbers");
        return Type::bool_type();
      case BinaryOp::Eq:
      case BinaryOp::Ne:
        if (!(l.is_numeric() && r.is_numeric()) && !assignable(l, r) && !assignable(r, l))
          throw TypeError(b.loc, "cannot compare " + l.str() + " with " + r.str());
        return Type::bool_type();
      case BinaryOp::And:
      case BinaryOp::Or:
        if (l.kind() != TypeKind::Bool || r.kind() != TypeKind::Bool)
          throw TypeError(b.loc, "logical operators need Bool operands");
        return l;
    }
    return Type::void_type();
  }

  Type call(CallExpr& c) {
    c.function = prog_.find_function(c.callee);
    if (c.function >= 0) {
      const FunctionDecl& f = prog_.functions[c.function];
      check_args(c.args, f.params, c.loc, c.callee);
      return f.ret;
    }
    c.builtin = find_builtin(c.callee);
    if (c.builtin < 0) throw TypeError(c.loc, "call to undeclared function `" + c.callee + "`");
    const Builtin& b = builtins()[c.builtin];
    if (!b.generic) {
      std::vector<Param> params;
      for (const auto& t : b.params) params.push_back({"", t, {}});
      check_args(c.args, params, c.loc, c.callee);
      return b.ret;
    }
    if (b.id == BuiltinId::Size) {
      if (c.args.size() != 1) throw TypeError(c.loc, "`size` expects 1 argument");
      if (expr(*c.args[0]).kind() != TypeKind::Array)
        throw TypeError(c.loc, "`size` expects an array");
      return Type::int_type();
    }
    // push
    if (c.args.size() != 2) throw TypeError(c.loc, "`push` expects 2 arguments");
    const Type a = expr(*c.args[0]);
    if (a.kind() != TypeKind::Array) throw TypeError(c.loc, "`push` expects an array");
    require_assignable(a.element(), expr(*c.args[1]), c.args[1]->loc, "argument type mismatch");
    return Type::void_type();
  }

  Type method_call(MethodCallExpr& m) {
    const Type recv = expr(*m.receiver);
    if (recv.kind() == TypeKind::Class) {
      m.on_interface = false;
      m.owner = prog_.find_class(recv.name());
      const ClassDecl& cls = prog_.classes[m.owner];
      m.method_index = cls.find_method(m.method);
      if (m.method_index < 0)
        throw TypeError(m.loc, "class `" + cls.name + "` has no method `" + m.method + "`");
      const FunctionDecl& f = cls.methods[m.method_index];
      check_args(m.args, f.params, m.loc, cls.name + "." + m.method);
      return f.ret;
    }
    if (recv.kind() == TypeKind::Interface) {
      m.on_interface = true;
      m.owner = prog_.find_interface(recv.name());
      const InterfaceDecl& itf = prog_.interfaces[m.owner];
      m.method_index = itf.find_method(m.method);
      if (m.method_index < 0)
        throw TypeError(m.loc, "interface `" + itf.name + "` has no method `" + m.method + "`");
      const MethodSig& sig = itf.methods[m.method_index];
      check_args(m.args, sig.params, m.loc, itf.name + "." + m.method);
      return sig.ret;
    }
    throw TypeError(m.loc, "type " + recv.str() + " has no methods");
  }

  Type field(FieldExpr& f) {
    const Type obj = expr(*f.object);
    if (obj.kind() == TypeKind::Record) {
      const RecordDecl& r = prog_.records[prog_.find_record(obj.name())];
      for (std::size_t i = 0; i < r.fields.size(); ++i)
        if (r.fields[i].name == f.field) {
          f.field_index = static_cast<int>(i);
          return r.fields[i].type;
        }
      throw TypeError(f.loc, "record `" + r.name + "` has no field `" + f.field + "`");
    }
    if (obj.kind() == TypeKind::Class) {
      const ClassDecl& c = prog_.classes[prog_.find_class(obj.name())];
      f.field_index = c.find_field(f.field);
      if (f.field_index < 0)
        throw TypeError(f.loc, "class `" + c.name + "` has no field `" + f.field + "`");
      return c.fields[f.field_index].type;
    }
    if (obj.kind() == TypeKind::Exception) {
      if (f.field != "message")
        throw TypeError(f.loc, "exceptions only have a `message` field");
      f.field_index = -1;
      return Type::str_type();
    }
    throw TypeError(f.loc, "type " + obj.str() + " has no fields");
  }

  Type new_expr(NewExpr& n) {
    const TypeKind k = prog_.kind_of(n.type_name);
    n.target = k;
    switch (k) {
      case TypeKind::Record: {
        n.decl_index = prog_.find_record(n.type_name);
        const RecordDecl& r = prog_.records[n.decl_index];
        std::vector<Param> params;
        for (const auto& f : r.fields) params.push_back({f.name, f.type, f.loc});
        check_args(n.args, params, n.loc, "new " + r.name);
        return Type::declared(k, r.name);
      }
      case TypeKind::Class: {
        n.decl_index = prog_.find_class(n.type_name);
        const ClassDecl& c = prog_.classes[n.decl_index];
        static const std::vector<Param> none;
        check_args(n.args, c.ctor ? c.ctor->params : none, n.loc, "new " + c.name);
        return Type::declared(k, c.name);
      }
      case TypeKind::Exception: {
        n.decl_index = prog_.find_exception(n.type_name);
        if (n.args.size() > 1)
          throw TypeError(n.loc, "exception constructors take at most a message argument");
        if (n.args.size() == 1)
          require_assignable(Type::str_type(), expr(*n.args[0]), n.args[0]->loc,
                             "exception message");
        return Type::declared(k, n.type_name);
      }
      case TypeKind::Interface:
        throw TypeError(n.loc, "cannot instantiate interface `" + n.type_name + "`");
      default:
        throw TypeError(n.loc, "undeclared type `" + n.type_name + "`");
    }
  }

  // -- statements -----------------------------------------------------------

  void block(Block& b) {
    push_scope();
    for (auto& s : b.stmts) stmt(*s);
    pop_scope();
  }

  void stmt(Stmt& s) {
    if (act_mode_ && s.kind != StmtKind::Let && s.kind != StmtKind::Assign &&
        s.kind != StmtKind::ExprStmt)
      throw TypeError(s.loc, "the act block must be straight-line (let, assignment, call)");
    if (stub_mode_ && s.kind != StmtKind::Let && s.kind != StmtKind::When)
      throw TypeError(s.loc, "stub code may only contain `let` and `when` statements");
    switch (s.kind) {
      case StmtKind::Let: {
        auto& l = static_cast<LetStmt&>(s);
        std::optional<Type> ann;
        if (l.annotation) ann = resolve(*l.annotation, l.loc);
        const Type init = expr(*l.init, ann ? &*ann : nullptr);
        if (init.is_void()) throw TypeError(l.loc, "cannot bind a Void value");
        if (ann) {
          require_assignable(*ann, init, l.init->loc, "initializer type mismatch");
          l.var_type = *ann;
        } else {
          if (init.kind() == TypeKind::Null)
            throw TypeError(l.loc, "`null` initializer needs a type annotation");
          l.var_type = init;
        }
        if (reserve_stub_names_ && reserved_stub_name(l.name))
          throw TypeError(l.loc, "names of the form v<N> are reserved for synthesized stub code");
        l.slot = declare(l.name, l.var_type, l.loc);
        return;
      }
      case StmtKind::Assign: {
        auto& a = static_cast<AssignStmt&>(s);
        if (a.target->kind == ExprKind::Var && static_cast<VarExpr&>(*a.target).name == "self")
          throw TypeError(a.loc, "cannot assign to `self`");
        if (a.target->kind == ExprKind::Field &&
            static_cast<FieldExpr&>(*a.target).field == "message") {
          const Type obj = expr(*static_cast<FieldExpr&>(*a.target).object);
          if (obj.kind() == TypeKind::Exception)
            throw TypeError(a.loc, "exception messages are immutable");
        }
        const Type target = expr(*a.target);
        require_assignable(target, expr(*a.value, &target), a.value->loc, "assignment type mismatch");
        return;
      }
      case StmtKind::If: {
        auto& i = static_cast<IfStmt&>(s);
        if (expr(*i.cond).kind() != TypeKind::Bool) throw TypeError(i.cond->loc, "condition must be Bool");
        block(i.then_block);
        if (i.else_block) block(*i.else_block);
        return;
      }
      case StmtKind::While: {
        auto& w = static_cast<WhileStmt&>(s);
        if (expr(*w.cond).kind() != TypeKind::Bool) throw TypeError(w.cond->loc, "condition must be Bool");
        ++loop_depth_;
        block(w.body);
        --loop_depth_;
        return;
      }
      case StmtKind::Return: {
        auto& r = static_cast<ReturnStmt&>(s);
        if (!return_type_) throw TypeError(r.loc, "`return` outside of a function");
        if (return_type_->is_void()) {
          if (r.value) throw TypeError(r.loc, "Void function cannot return a value");
        } else {
          if (!r.value) throw TypeError(r.loc, "missing return value");
          require_assignable(*return_type_, expr(*r.value, return_type_), r.value->loc,
                             "return type mismatch");
        }
        return;
      }
      case StmtKind::Throw: {
        auto& t = static_cast<ThrowStmt&>(s);
        if (expr(*t.value).kind() != TypeKind::Exception)
          throw TypeError(t.loc, "can only throw exception values");
        return;
      }
      case StmtKind::Try: {
        auto& t = static_cast<TryStmt&>(s);
        block(t.body);
        for (auto& c : t.catches) {
          if (prog_.find_exception(c.exception_type) < 0)
            throw TypeError(c.loc, "`" + c.exception_type + "` is not an exception type");
          push_scope();
          c.slot = declare(c.name, Type::declared(TypeKind::Exception, c.exception_type), c.loc);
          block(c.body);
          pop_scope();
        }
        return;
      }
      case StmtKind::Break:
      case StmtKind::Continue:
        if (loop_depth_ == 0) throw TypeError(s.loc, "`break`/`continue` outside of a loop");
        return;
      case StmtKind::ExprStmt:
        expr(*static_cast<ExprStmt&>(s).expr);
        return;
      case StmtKind::Block:
        block(static_cast<BlockStmt&>(s).block);
        return;
      case StmtKind::When:
        when(static_cast<WhenStmt&>(s));
        return;
    }
  }

  const MethodSig& resolve_mock_method(Expr& receiver, const std::string& method,
                                       std::size_t matcher_count, SourceLoc loc, int& itf_index,
                                       int& method_index) {
    const Type recv = expr(receiver);
    if (recv.kind() != TypeKind::Interface)
      throw TypeError(loc, "`" + static_cast<VarExpr&>(receiver).name + "` is not a mock");
    itf_index = prog_.find_interface(recv.name());
    const InterfaceDecl& itf = prog_.interfaces[itf_index];
    method_index = itf.find_method(method);
    if (method_index < 0)
      throw TypeError(loc, "interface `" + itf.name + "` has no method `" + method + "`");
    const MethodSig& sig = itf.methods[method_index];
    if (matcher_count != sig.params.size())
      throw TypeError(loc, "`" + itf.name + "." + method + "` takes " +
                               std::to_string(sig.params.size()) + " argument(s), " +
                               std::to_string(matcher_count) + " matcher(s) given");
    return sig;
  }

  void matchers(std::vector<MatcherExpr>& ms, const MethodSig& sig) {
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (!ms[i].any)
        require_assignable(sig.params[i].type, expr(*ms[i].value, &sig.params[i].type),
                           ms[i].value->loc, "matcher type mismatch");
  }

  void when(WhenStmt& w) {
    const MethodSig& sig = resolve_mock_method(*w.receiver, w.method, w.matchers.size(), w.loc,
                                               w.interface_index, w.method_index);
    matchers(w.matchers, sig);
    if (w.is_throw) {
      if (expr(*w.reaction).kind() != TypeKind::Exception)
        throw TypeError(w.reaction->loc, "`thenThrow` needs an exception value");
    } else {
      if (sig.ret.is_void())
        throw TypeError(w.loc, "`" + w.method + "` returns Void; only `thenThrow` applies");
      require_assignable(sig.ret, expr(*w.reaction, &sig.ret), w.reaction->loc,
                         "stubbed return type mismatch");
    }
  }

  void function(FunctionDecl& f, const ClassDecl* owner) {
    begin_frame(0);
    if (owner) declare_self(Type::declared(TypeKind::Class, owner->name));
    for (auto& p : f.params) declare(p.name, p.type, p.loc);
    const Type ret = f.ret;
    return_type_ = &ret;
    loop_depth_ = 0;
    block(f.body);
    return_type_ = nullptr;
    f.frame_size = max_slot_;
  }

  void declare_self(Type t) {
    const int slot = next_slot_++;
    max_slot_ = std::max(max_slot_, next_slot_);
    scopes_.back().push_back({"self", std::move(t), slot});
  }

  void assertion(Assertion& a) {
    switch (a.kind) {
      case AssertionKind::Equals:
      case AssertionKind::Same: {
        const Type expected = expr(*a.expected);
        expr(*a.actual, &expected);
        return;
      }
      case AssertionKind::True:
        if (expr(*a.expected).kind() != TypeKind::Bool)
          throw TypeError(a.loc, "assertTrue needs a Bool expression");
        return;
      case AssertionKind::NotNull:
        expr(*a.expected);
        return;
      case AssertionKind::Throws:
        if (prog_.find_exception(a.exception_type) < 0)
          throw TypeError(a.loc, "`" + a.exception_type + "` is not an exception type");
        block(a.block);
        return;
      case AssertionKind::Verify: {
        const MethodSig& sig = resolve_mock_method(*a.verify_mock, a.verify_method,
                                                   a.matchers.size(), a.loc, a.interface_index,
                                                   a.method_index);
        matchers(a.matchers, sig);
        if (a.times < 0) throw TypeError(a.loc, "verify count must be non-negative");
        return;
      }
    }
  }

  void test(TestCase& tc) {
    begin_frame(0);
    reserve_stub_names_ = true;
    std::set<std::string> mock_names;
    for (auto& m : tc.mocks) {
      m.type = resolve(m.type, m.loc);
      if (m.type.kind() != TypeKind::Interface)
        throw TypeError(m.loc, "mock `" + m.name + "` must have an interface type");
      if (reserved_stub_name(m.name))
        throw TypeError(m.loc, "names of the form v<N> are reserved for synthesized stub code");
      if (!mock_names.insert(m.name).second)
        throw TypeError(m.loc, "variable `" + m.name + "` is already declared");
    }
    // Mocks get the first slots; the prelude cannot see them.
    next_slot_ = static_cast<int>(tc.mocks.size());
    max_slot_ = next_slot_;
    hidden_mocks_ = &mock_names;
    for (auto& s : tc.prelude.stmts) {
      stmt(*s);
      const auto& l = static_cast<LetStmt&>(*s);
      if (mock_names.count(l.name))
        throw TypeError(l.loc, "variable `" + l.name + "` is already declared");
    }
    hidden_mocks_ = nullptr;
    int slot = 0;
    for (auto& m : tc.mocks) {
      m.slot = slot++;
      scopes_.back().push_back({m.name, m.type, m.slot});
    }
    tc.scope.clear();
    for (const auto& m : tc.mocks) tc.scope.push_back({m.name, m.type, m.slot, true});
    for (const auto& s : tc.prelude.stmts) {
      const auto& l = static_cast<const LetStmt&>(*s);
      tc.scope.push_back({l.name, l.var_type, l.slot, false});
    }

    act_mode_ = true;
    for (auto& s : tc.act.stmts) stmt(*s);
    act_mode_ = false;
    if (tc.act.stmts.empty()) throw TypeError(tc.stub_site, "the act block is empty");
    if (tc.asserts.empty()) throw TypeError(tc.stub_site, "the test has no assertions");
    for (auto& a : tc.asserts) assertion(a);
    reserve_stub_names_ = false;
    tc.frame_size = max_slot_;

    tc.act_ids.clear();
    walk_block(
        std::as_const(tc.act),
        [&](const Stmt& s) { tc.act_ids.push_back(s.id); },
        [&](const Expr& e) {
          if (e.id != kNoInstruction) tc.act_ids.push_back(e.id);
        });
    std::sort(tc.act_ids.begin(), tc.act_ids.end());
  }

  void stub(const TestCase& tc, StubBlock& sb) {
    begin_frame(tc.frame_size);
    for (const auto& v : tc.scope) scopes_.back().push_back({v.name, v.type, v.slot});
    push_scope();
    stub_mode_ = true;
    for (auto& s : sb.block.stmts) stmt(*s);
    stub_mode_ = false;
    sb.frame_size = max_slot_;
  }

 private:
  const Program& prog_;
  std::vector<std::vector<Local>> scopes_;
  int next_slot_ = 0;
  int max_slot_ = 0;
  const Type* return_type_ = nullptr;
  int loop_depth_ = 0;
  bool act_mode_ = false;
  bool stub_mode_ = false;
  bool reserve_stub_names_ = false;
  const std::set<std::string>* hidden_mocks_ = nullptr;
};

}  // namespace

void check_program(Program& prog) {
  std::set<std::string> names;
  auto claim = [&](const std::string& name, SourceLoc loc) {
    if (name == "Int" || name == "Real" || name == "Bool" || name == "Str" || name == "Void")
      throw TypeError(loc, "`" + name + "` is a builtin type");
    if (!names.insert(name).second) throw TypeError(loc, "duplicate declaration `" + name + "`");
  };
  for (const auto& d : prog.records) claim(d.name, d.loc);
  for (const auto& d : prog.exceptions) claim(d.name, d.loc);
  for (const auto& d : prog.interfaces) claim(d.name, d.loc);
  for (const auto& d : prog.classes) claim(d.name, d.loc);
  std::set<std::string> fn_names;
  for (const auto& f : prog.functions) {
    if (find_builtin(f.name) >= 0) throw TypeError(f.loc, "`" + f.name + "` is a builtin function");
    if (!fn_names.insert(f.name).second)
      throw TypeError(f.loc, "duplicate function `" + f.name + "`");
  }

  Checker ck(prog);
  auto unique_members = [](const auto& items, const std::string& owner, const char* what) {
    std::set<std::string> seen;
    for (const auto& it : items)
      if (!seen.insert(it.name).second)
        throw TypeError(it.loc, std::string("duplicate ") + what + " `" + it.name + "` in " + owner);
  };
  for (auto& r : prog.records) {
    unique_members(r.fields, r.name, "field");
    for (auto& f : r.fields) f.type = ck.resolve(f.type, f.loc);
  }
  for (auto& itf : prog.interfaces) {
    unique_members(itf.methods, itf.name, "method");
    for (auto& m : itf.methods) {
      unique_members(m.params, itf.name + "." + m.name, "parameter");
      for (auto& p : m.params) p.type = ck.resolve(p.type, p.loc);
      m.ret = ck.resolve(m.ret, m.loc, true);
    }
  }
  auto resolve_fn = [&](FunctionDecl& f) {
    for (auto& p : f.params) p.type = ck.resolve(p.type, p.loc);
    f.ret = ck.resolve(f.ret, f.loc, true);
  };
  for (auto& c : prog.classes) {
    unique_members(c.fields, c.name, "field");
    unique_members(c.methods, c.name, "method");
    for (auto& f : c.fields) f.type = ck.resolve(f.type, f.loc);
    if (c.ctor) resolve_fn(*c.ctor);
    for (auto& m : c.methods) resolve_fn(m);
  }
  for (auto& f : prog.functions) resolve_fn(f);

  for (auto& c : prog.classes) {
    if (c.ctor) ck.function(*c.ctor, &c);
    for (auto& m : c.methods) ck.function(m, &c);
  }
  for (auto& f : prog.functions) ck.function(f, nullptr);
}

void check_test(const Program& program, TestCase& test) { Checker(program).test(test); }

void check_stub_block(const Program& program, const TestCase& test, StubBlock& block) {
  Checker(program).stub(test, block);
}

Program parse(std::string_view source) {
  Program p = parse_program_syntax(source);
  check_program(p);
  return p;
}

TestCase parse_test(const Program& program, std::string_view source) {
  TestCase tc = parse_test_syntax(source, program.instruction_count);
  check_test(program, tc);
  return tc;
}

StubBlock parse_stub_block(const Program& program, const TestCase& test, std::string_view source) {
  StubBlock sb = parse_stub_syntax(source, test.end_id);
  check_stub_block(program, test, sb);
  return sb;
}

Value default_value(const Type& type) {
  switch (type.kind()) {
    case TypeKind::Int: return Value::integer(0);
    case TypeKind::Real: return Value::real(0.0);
    case TypeKind::Bool: return Value::boolean(false);
    case TypeKind::Str: return Value::string("");
    case TypeKind::Array: return Value::array({});
    default: return Value();
  }
}

}  // namespace stubforge::ml
