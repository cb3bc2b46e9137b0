#include "stubforge/minilang/interpreter.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "stubforge/minilang/builtins.hpp"
#include "stubforge/minilang/minilang.hpp"

namespace stubforge::ml {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Completed: return "completed";
    case Outcome::UncaughtException: return "uncaught_exception";
    case Outcome::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

const char* status_name(AssertionStatus s) {
  switch (s) {
    case AssertionStatus::Satisfied: return "satisfied";
    case AssertionStatus::Failed: return "failed";
    case AssertionStatus::FailedNonEquals: return "failed_non_equals";
    case AssertionStatus::NotExecuted: return "not_executed";
  }
  return "?";
}

bool ExecutionReport::all_satisfied() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const AssertionOutcome& a) {
    return a.status == AssertionStatus::Satisfied;
  });
}

namespace {

// Objects allocated by one execution. Clearing them on release breaks reference cycles that
// would otherwise keep the whole graph alive.
struct Heap {
  std::vector<std::shared_ptr<ArrayObject>> arrays;
  std::vector<std::shared_ptr<RecordObject>> records;

  ~Heap() {
    for (auto& a : arrays) a->items.clear();
    for (auto& r : records) r->fields.clear();
  }
};

struct ThrowSignal {
  Value exception;
};

struct BudgetSignal {
  std::string reason;
};

enum class Flow : std::uint8_t { Normal, Break, Continue, Return };

struct Frame {
  std::vector<Value> slots;
  Value ret;
};

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

std::size_t utf8_length(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

// Byte offset of code point `cp`, or npos when past the end.
std::size_t utf8_offset(const std::string& s, std::size_t cp) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) continue;
    if (seen == cp) return i;
    ++seen;
  }
  return seen == cp ? s.size() : std::string::npos;
}

std::string sha1_hex(const std::string& s) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(s.data(), s.size(), md, &len, EVP_sha1(), nullptr) != 1)
    throw std::runtime_error("sha1 digest failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

class Interpreter {
 public:
  Interpreter(const Program& prog, const ExecOptions& opts, InstructionId id_limit)
      : prog_(prog), opts_(opts), executed_(id_limit, 0), heap_(std::make_shared<Heap>()) {}

  ExecutionReport run(const TestCase& test, const StubBlock& stub) {
    ExecutionReport rep;
    rep.assertions.resize(test.asserts.size());
    for (std::size_t i = 0; i < test.asserts.size(); ++i) rep.assertions[i].kind = test.asserts[i].kind;

    Frame frame;
    frame.slots.resize(std::max(stub.frame_size, test.frame_size));
    std::size_t first_unrun = 0;
    try {
      mocks_.set_phase(Phase::Arrange);
      for (const auto& m : test.mocks) {
        const auto& itf = prog_.interfaces[prog_.find_interface(m.type.name())];
        frame.slots[m.slot] = Value::mock(mocks_.create_mock(itf), itf.name);
      }
      exec_block(test.prelude, frame);
      exec_block(stub.block, frame);
      mocks_.set_phase(Phase::Act);
      exec_block(test.act, frame);
      mocks_.set_phase(Phase::Assert);
      for (; first_unrun < test.asserts.size(); ++first_unrun)
        rep.assertions[first_unrun] = check(test.asserts[first_unrun], frame);
    } catch (const ThrowSignal& t) {
      rep.outcome = Outcome::UncaughtException;
      rep.exception = t.exception;
      rep.exception_phase = mocks_.phase();
    } catch (const BudgetSignal& b) {
      rep.outcome = Outcome::BudgetExceeded;
      rep.budget_reason = b.reason;
    }
    for (std::size_t i = first_unrun; i < rep.assertions.size(); ++i) {
      rep.assertions[i].status = AssertionStatus::NotExecuted;
      rep.assertions[i].expected = Value();
      rep.assertions[i].actual = Value();
    }

    for (InstructionId id : test.act_ids)
      if (id < executed_.size() && executed_[id]) rep.executed_in_E.push_back(id);
    rep.trace = std::move(trace_);
    rep.trace_phase = std::move(trace_phase_);
    rep.stub_entries = mocks_.entries();
    rep.invocations = mocks_.log();
    rep.used_count = mocks_.used_count();
    rep.steps = steps_;
    rep.heap = heap_;
    return rep;
  }

  Value call(const FunctionDecl& f, std::vector<Value> args) {
    try {
      return deep_copy(invoke(f, nullptr, std::move(args)));
    } catch (const ThrowSignal& t) {
      const auto& e = t.exception.as_exception();
      throw std::runtime_error("uncaught " + e.type + ": " + e.message);
    } catch (const BudgetSignal& b) {
      throw std::runtime_error("budget exceeded: " + b.reason);
    }
  }

 private:
  // -- bookkeeping ----------------------------------------------------------

  void tick() {
    if (++steps_ > opts_.limits.step_budget) throw BudgetSignal{"step budget"};
  }

  void complete(InstructionId id) {
    if (id == kNoInstruction) return;
    if (id < executed_.size()) executed_[id] = 1;
    if (opts_.record_trace) {
      trace_.push_back(id);
      trace_phase_.push_back(mocks_.phase());
    }
  }

  [[noreturn]] static void raise(const std::string& type, std::string message) {
    throw ThrowSignal{Value::exception(type, std::move(message))};
  }

  Value new_array(std::vector<Value> items) {
    auto obj = std::make_shared<ArrayObject>();
    obj->items = std::move(items);
    heap_->arrays.push_back(obj);
    return Value::from_array(std::move(obj));
  }

  Value new_record(std::string type, std::vector<std::pair<std::string, Value>> fields) {
    auto obj = std::make_shared<RecordObject>();
    obj->type = std::move(type);
    obj->fields = std::move(fields);
    heap_->records.push_back(obj);
    return Value::from_record(std::move(obj));
  }

  bool mutated(InstructionId site, MutationKind kind) const {
    const Mutation* m = opts_.mutation;
    return m && m->kind == kind && m->site == site;
  }

  // -- statements -----------------------------------------------------------

  Flow exec_block(const Block& b, Frame& f) {
    for (const auto& s : b.stmts) {
      const Flow flow = exec(*s, f);
      if (flow != Flow::Normal) return flow;
    }
    return Flow::Normal;
  }

  bool condition(const Expr& cond, InstructionId site, Frame& f) {
    const bool c = eval(cond, f).as_bool();
    return mutated(site, MutationKind::NegateCondition) ? !c : c;
  }

  Flow exec(const Stmt& s, Frame& f) {
    tick();
    Flow flow = Flow::Normal;
    switch (s.kind) {
      case StmtKind::Let: {
        const auto& l = static_cast<const LetStmt&>(s);
        f.slots[l.slot] = eval(*l.init, f);
        break;
      }
      case StmtKind::Assign:
        assign(static_cast<const AssignStmt&>(s), f);
        break;
      case StmtKind::If: {
        const auto& i = static_cast<const IfStmt&>(s);
        if (condition(*i.cond, i.id, f)) {
          flow = exec_block(i.then_block, f);
        } else if (i.else_block) {
          flow = exec_block(*i.else_block, f);
        }
        break;
      }
      case StmtKind::While: {
        const auto& w = static_cast<const WhileStmt&>(s);
        std::uint64_t iterations = 0;
        while (condition(*w.cond, w.id, f)) {
          if (++iterations > opts_.limits.loop_iterations) throw BudgetSignal{"loop iteration cap"};
          const Flow body = exec_block(w.body, f);
          if (body == Flow::Break) break;
          if (body == Flow::Return) {
            flow = body;
            break;
          }
          tick();
        }
        break;
      }
      case StmtKind::Return: {
        const auto& r = static_cast<const ReturnStmt&>(s);
        f.ret = r.value ? eval(*r.value, f) : Value();
        flow = Flow::Return;
        break;
      }
      case StmtKind::Throw: {
        const Value v = eval(*static_cast<const ThrowStmt&>(s).value, f);
        complete(s.id);
        if (v.is_null()) raise("NullError", "throw of null");
        throw ThrowSignal{v};
      }
      case StmtKind::Try: {
        const auto& t = static_cast<const TryStmt&>(s);
        try {
          flow = exec_block(t.body, f);
        } catch (const ThrowSignal& sig) {
          const CatchClause* handler = nullptr;
          for (const auto& c : t.catches)
            if (c.exception_type == sig.exception.as_exception().type) {
              handler = &c;
              break;
            }
          if (!handler) throw;
          f.slots[handler->slot] = sig.exception;
          flow = exec_block(handler->body, f);
        }
        break;
      }
      case StmtKind::Break:
        flow = Flow::Break;
        break;
      case StmtKind::Continue:
        flow = Flow::Continue;
        break;
      case StmtKind::ExprStmt:
        eval(*static_cast<const ExprStmt&>(s).expr, f);
        break;
      case StmtKind::Block:
        flow = exec_block(static_cast<const BlockStmt&>(s).block, f);
        break;
      case StmtKind::When:
        when(static_cast<const WhenStmt&>(s), f);
        break;
    }
    complete(s.id);
    return flow;
  }

  void assign(const AssignStmt& a, Frame& f) {
    switch (a.target->kind) {
      case ExprKind::Var: {
        f.slots[static_cast<const VarExpr&>(*a.target).slot] = eval(*a.value, f);
        return;
      }
      case ExprKind::Field: {
        const auto& fe = static_cast<const FieldExpr&>(*a.target);
        const Value obj = eval(*fe.object, f);
        Value v = eval(*a.value, f);
        if (obj.is_null()) raise("NullError", "field assignment on null");
        obj.as_record()->fields[fe.field_index].second = std::move(v);
        complete(fe.id);
        return;
      }
      case ExprKind::Index: {
        const auto& ix = static_cast<const IndexExpr&>(*a.target);
        const Value arr = eval(*ix.array, f);
        const Value idx = eval(*ix.index, f);
        Value v = eval(*a.value, f);
        if (arr.is_null()) raise("NullError", "index assignment on null");
        auto& items = arr.as_array()->items;
        const std::int64_t i = idx.as_int();
        if (i < 0 || static_cast<std::uint64_t>(i) >= items.size())
          raise("IndexError", "index " + std::to_string(i) + " out of range");
        items[static_cast<std::size_t>(i)] = std::move(v);
        complete(ix.id);
        return;
      }
      default:
        throw std::logic_error("invalid assignment target");
    }
  }

  void when(const WhenStmt& w, Frame& f) {
    const Value recv = eval(*w.receiver, f);
    if (recv.is_null()) raise("NullError", "stubbing a null mock");
    std::vector<mock::Matcher> matchers;
    for (const auto& m : w.matchers)
      matchers.push_back(m.any ? mock::Matcher::anything() : mock::Matcher::eq(eval(*m.value, f)));
    mock::Reaction reaction{w.is_throw, eval(*w.reaction, f)};
    mocks_.register_stub(recv.as_mock().handle, w.method, std::move(matchers), std::move(reaction));
  }

  // -- assertions -----------------------------------------------------------

  AssertionOutcome check(const Assertion& a, Frame& f) {
    tick();
    AssertionOutcome out;
    out.kind = a.kind;
    auto verdict = [&](bool ok) {
      out.status = ok ? AssertionStatus::Satisfied : AssertionStatus::FailedNonEquals;
    };
    switch (a.kind) {
      case AssertionKind::Equals: {
        Value expected = eval(*a.expected, f);
        Value actual = eval(*a.actual, f);
        out.status = deep_equal(expected, actual) ? AssertionStatus::Satisfied : AssertionStatus::Failed;
        out.expected = std::move(expected);
        out.actual = std::move(actual);
        break;
      }
      case AssertionKind::Same: {
        Value expected = eval(*a.expected, f);
        Value actual = eval(*a.actual, f);
        verdict(same(expected, actual));
        out.expected = std::move(expected);
        out.actual = std::move(actual);
        break;
      }
      case AssertionKind::True:
        verdict(eval(*a.expected, f).as_bool());
        break;
      case AssertionKind::NotNull:
        verdict(!eval(*a.expected, f).is_null());
        break;
      case AssertionKind::Throws: {
        bool thrown = false;
        try {
          exec_block(a.block, f);
        } catch (const ThrowSignal& sig) {
          thrown = true;
          const std::string& type = sig.exception.as_exception().type;
          verdict(type == a.exception_type);
          if (type != a.exception_type) out.detail = "threw " + type;
        }
        if (!thrown) {
          verdict(false);
          out.detail = "nothing thrown";
        }
        break;
      }
      case AssertionKind::Verify: {
        const Value recv = eval(*a.verify_mock, f);
        if (recv.is_null()) raise("NullError", "verify on a null mock");
        std::vector<mock::Matcher> matchers;
        for (const auto& m : a.matchers)
          matchers.push_back(m.any ? mock::Matcher::anything() : mock::Matcher::eq(eval(*m.value, f)));
        const std::size_t n = mocks_.count_matching(recv.as_mock().handle, a.verify_method, matchers);
        verdict(n == static_cast<std::size_t>(a.times));
        out.expected = Value::integer(a.times);
        out.actual = Value::integer(static_cast<std::int64_t>(n));
        break;
      }
    }
    complete(a.id);
    return out;
  }

  // -- expressions ----------------------------------------------------------

  Value eval(const Expr& e, Frame& f) {
    switch (e.kind) {
      case ExprKind::Literal: {
        const auto& lit = static_cast<const LiteralExpr&>(e);
        const Mutation* m = opts_.mutation;
        if (m && m->kind == MutationKind::ShiftConstant && lit.constant_index >= 0 &&
            m->constant_index == lit.constant_index)
          return Value::integer(wrap_add(lit.value.as_int(), m->delta));
        return lit.value;
      }
      case ExprKind::Var:
        return f.slots[static_cast<const VarExpr&>(e).slot];
      default:
        break;
    }
    tick();
    Value v = eval_node(e, f);
    complete(e.id);
    return v;
  }

  Value eval_node(const Expr& e, Frame& f) {
    switch (e.kind) {
      case ExprKind::Unary: {
        const auto& u = static_cast<const UnaryExpr&>(e);
        const Value v = eval(*u.operand, f);
        if (u.op == UnaryOp::Not) return Value::boolean(!v.as_bool());
        if (v.kind() == ValueKind::Int) return Value::integer(wrap_sub(0, v.as_int()));
        return Value::real(-v.as_real());
      }
      case ExprKind::Binary:
        return binary(static_cast<const BinaryExpr&>(e), f);
      case ExprKind::Call:
        return call_expr(static_cast<const CallExpr&>(e), f);
      case ExprKind::MethodCall:
        return method_call(static_cast<const MethodCallExpr&>(e), f);
      case ExprKind::Field: {
        const auto& fe = static_cast<const FieldExpr&>(e);
        const Value obj = eval(*fe.object, f);
        if (obj.is_null()) raise("NullError", "field `" + fe.field + "` of null");
        if (obj.kind() == ValueKind::Exception) return Value::string(obj.as_exception().message);
        return obj.as_record()->fields[fe.field_index].second;
      }
      case ExprKind::Index: {
        const auto& ix = static_cast<const IndexExpr&>(e);
        const Value arr = eval(*ix.array, f);
        const Value idx = eval(*ix.index, f);
        if (arr.is_null()) raise("NullError", "indexing null");
        const auto& items = arr.as_array()->items;
        const std::int64_t i = idx.as_int();
        if (i < 0 || static_cast<std::uint64_t>(i) >= items.size())
          raise("IndexError", "index " + std::to_string(i) + " out of range");
        return items[static_cast<std::size_t>(i)];
      }
      case ExprKind::New:
        return new_expr(static_cast<const NewExpr&>(e), f);
      case ExprKind::ArrayLit: {
        std::vector<Value> items;
        for (const auto& item : static_cast<const ArrayLitExpr&>(e).items) items.push_back(eval(*item, f));
        return new_array(std::move(items));
      }
      case ExprKind::MockCreate: {
        const auto& m = static_cast<const MockCreateExpr&>(e);
        const auto& itf = prog_.interfaces[m.interface_index];
        return Value::mock(mocks_.create_mock(itf), itf.name);
      }
      default:
        throw std::logic_error("unexpected expression kind");
    }
  }

  Value binary(const BinaryExpr& b, Frame& f) {
    BinaryOp op = b.op;
    if (mutated(b.id, MutationKind::ReplaceOperator)) op = opts_.mutation->replacement;
    if (op == BinaryOp::And || op == BinaryOp::Or) {
      const bool l = eval(*b.lhs, f).as_bool();
      if (op == BinaryOp::And && !l) return Value::boolean(false);
      if (op == BinaryOp::Or && l) return Value::boolean(true);
      return Value::boolean(eval(*b.rhs, f).as_bool());
    }
    const Value l = eval(*b.lhs, f);
    const Value r = eval(*b.rhs, f);
    if (op == BinaryOp::Eq) return Value::boolean(loose_equal(l, r));
    if (op == BinaryOp::Ne) return Value::boolean(!loose_equal(l, r));
    if (op == BinaryOp::Add && l.kind() == ValueKind::Str) return Value::string(l.as_str() + r.as_str());

    const bool ints = l.kind() == ValueKind::Int && r.kind() == ValueKind::Int;
    if (ints) {
      const std::int64_t x = l.as_int();
      const std::int64_t y = r.as_int();
      switch (op) {
        case BinaryOp::Add: return Value::integer(wrap_add(x, y));
        case BinaryOp::Sub: return Value::integer(wrap_sub(x, y));
        case BinaryOp::Mul: return Value::integer(wrap_mul(x, y));
        case BinaryOp::Div:
          if (y == 0) raise("ArithmeticError", "division by zero");
          if (y == -1) return Value::integer(wrap_sub(0, x));
          return Value::integer(x / y);
        case BinaryOp::Mod:
          if (y == 0) raise("ArithmeticError", "division by zero");
          if (y == -1) return Value::integer(0);
          return Value::integer(x % y);
        case BinaryOp::Lt: return Value::boolean(x < y);
        case BinaryOp::Le: return Value::boolean(x <= y);
        case BinaryOp::Gt: return Value::boolean(x > y);
        case BinaryOp::Ge: return Value::boolean(x >= y);
        default: break;
      }
    } else {
      const double x = l.as_number();
      const double y = r.as_number();
      switch (op) {
        case BinaryOp::Add: return Value::real(x + y);
        case BinaryOp::Sub: return Value::real(x - y);
        case BinaryOp::Mul: return Value::real(x * y);
        case BinaryOp::Div:
          if (y == 0.0) raise("ArithmeticError", "division by zero");
          return Value::real(x / y);
        case BinaryOp::Lt: return Value::boolean(x < y);
        case BinaryOp::Le: return Value::boolean(x <= y);
        case BinaryOp::Gt: return Value::boolean(x > y);
        case BinaryOp::Ge: return Value::boolean(x >= y);
        default: break;
      }
    }
    throw std::logic_error(std::string("operator ") + op_text(op) + " on unsupported operands");
  }

  std::vector<Value> eval_args(const std::vector<ExprPtr>& args, Frame& f) {
    std::vector<Value> out;
    out.reserve(args.size());
    for (const auto& a : args) out.push_back(eval(*a, f));
    return out;
  }

  Value call_expr(const CallExpr& c, Frame& f) {
    std::vector<Value> args = eval_args(c.args, f);
    if (c.function >= 0) return invoke(prog_.functions[c.function], nullptr, std::move(args));
    switch (builtins()[c.builtin].id) {
      case BuiltinId::Len:
        return Value::integer(static_cast<std::int64_t>(utf8_length(args[0].as_str())));
      case BuiltinId::Str:
        return Value::string(std::to_string(args[0].as_int()));
      case BuiltinId::Sha1Hex:
        return Value::string(sha1_hex(args[0].as_str()));
      case BuiltinId::Substr: {
        const std::string& s = args[0].as_str();
        const std::int64_t start = args[1].as_int();
        const std::int64_t count = args[2].as_int();
        if (start < 0 || count < 0) raise("IndexError", "substr out of range");
        const std::size_t from = utf8_offset(s, static_cast<std::size_t>(start));
        if (from == std::string::npos) raise("IndexError", "substr out of range");
        const std::size_t to = utf8_offset(s, static_cast<std::size_t>(start + count));
        if (to == std::string::npos) raise("IndexError", "substr out of range");
        return Value::string(s.substr(from, to - from));
      }
      case BuiltinId::StartsWith:
        return Value::boolean(args[0].as_str().rfind(args[1].as_str(), 0) == 0);
      case BuiltinId::EndsWith: {
        const std::string& s = args[0].as_str();
        const std::string& t = args[1].as_str();
        return Value::boolean(s.size() >= t.size() && s.compare(s.size() - t.size(), t.size(), t) == 0);
      }
      case BuiltinId::Contains:
        return Value::boolean(args[0].as_str().find(args[1].as_str()) != std::string::npos);
      case BuiltinId::Abs: {
        const std::int64_t v = args[0].as_int();
        return Value::integer(v < 0 ? wrap_sub(0, v) : v);
      }
      case BuiltinId::Size:
        if (args[0].is_null()) raise("NullError", "size of null");
        return Value::integer(static_cast<std::int64_t>(args[0].as_array()->items.size()));
      case BuiltinId::Push:
        if (args[0].is_null()) raise("NullError", "push onto null");
        args[0].as_array()->items.push_back(args[1]);
        return Value();
    }
    throw std::logic_error("unknown builtin");
  }

  Value method_call(const MethodCallExpr& m, Frame& f) {
    const Value recv = eval(*m.receiver, f);
    std::vector<Value> args = eval_args(m.args, f);
    if (recv.is_null()) raise("NullError", "call of `" + m.method + "` on null");
    if (m.on_interface) {
      mock::Reaction r = mocks_.dispatch(recv.as_mock().handle, m.method, args);
      if (r.is_throw) {
        if (r.value.is_null()) raise("NullError", "stubbed throw of null");
        throw ThrowSignal{std::move(r.value)};
      }
      return std::move(r.value);
    }
    const ClassDecl& cls = prog_.classes[m.owner];
    return invoke(cls.methods[m.method_index], &recv, std::move(args));
  }

  Value new_expr(const NewExpr& n, Frame& f) {
    std::vector<Value> args = eval_args(n.args, f);
    switch (n.target) {
      case TypeKind::Record: {
        const RecordDecl& r = prog_.records[n.decl_index];
        std::vector<std::pair<std::string, Value>> fields;
        for (std::size_t i = 0; i < r.fields.size(); ++i) fields.emplace_back(r.fields[i].name, std::move(args[i]));
        return new_record(r.name, std::move(fields));
      }
      case TypeKind::Class: {
        const ClassDecl& c = prog_.classes[n.decl_index];
        std::vector<std::pair<std::string, Value>> fields;
        for (const auto& fd : c.fields) fields.emplace_back(fd.name, default_value(fd.type));
        Value obj = new_record(c.name, std::move(fields));
        if (c.ctor) invoke(*c.ctor, &obj, std::move(args));
        return obj;
      }
      case TypeKind::Exception:
        return Value::exception(n.type_name, args.empty() ? std::string() : args[0].as_str());
      default:
        throw std::logic_error("cannot instantiate " + n.type_name);
    }
  }

  Value invoke(const FunctionDecl& fn, const Value* self, std::vector<Value> args) {
    struct DepthGuard {
      int& depth;
      ~DepthGuard() { --depth; }
    } guard{++depth_};
    if (depth_ > opts_.limits.call_depth) throw BudgetSignal{"call depth"};
    Frame frame;
    frame.slots.resize(static_cast<std::size_t>(fn.frame_size));
    std::size_t slot = 0;
    if (self) frame.slots[slot++] = *self;
    for (auto& a : args) frame.slots[slot++] = std::move(a);
    const Flow flow = exec_block(fn.body, frame);
    if (flow == Flow::Return && !fn.ret.is_void()) return std::move(frame.ret);
    return fn.ret.is_void() ? Value() : default_value(fn.ret);
  }

  const Program& prog_;
  const ExecOptions& opts_;
  mock::MockRuntime mocks_;
  std::vector<std::uint8_t> executed_;
  std::vector<InstructionId> trace_;
  std::vector<Phase> trace_phase_;
  std::shared_ptr<Heap> heap_;
  std::uint64_t steps_ = 0;
  int depth_ = 0;
};

}  // namespace

ExecutionReport execute(const Program& program, const TestCase& test, const StubBlock& stub,
                        const ExecOptions& options) {
  const InstructionId limit = std::max({program.instruction_count, test.end_id, stub.end_id});
  return Interpreter(program, options, limit).run(test, stub);
}

ExecutionReport execute(const Program& program, const TestCase& test, std::string_view stub_source,
                        const ExecOptions& options) {
  const StubBlock stub = parse_stub_block(program, test, stub_source);
  return execute(program, test, stub, options);
}

Value call_function(const Program& program, std::string_view name, std::vector<Value> args,
                    const ExecLimits& limits) {
  const int index = program.find_function(name);
  if (index < 0) throw std::invalid_argument("no function named " + std::string(name));
  const FunctionDecl& fn = program.functions[index];
  if (args.size() != fn.params.size()) throw std::invalid_argument("argument count mismatch");
  ExecOptions opts;
  opts.limits = limits;
  return Interpreter(program, opts, program.instruction_count).call(fn, std::move(args));
}

}  // namespace stubforge::ml
