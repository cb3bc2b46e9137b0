#include "stubforge/fidelity/fidelity.hpp"

#include <algorithm>

#include "stubforge/fitness/edit_distance.hpp"
#include "stubforge/minilang/walk.hpp"

namespace stubforge::fidelity {

namespace {

template <typename T>
double jaccard_of(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::string where(const ml::SourceLoc& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

}  // namespace

double jaccard(const std::set<InstructionId>& a, const std::set<InstructionId>& b) { return jaccard_of(a, b); }
double jaccard(const std::set<int>& a, const std::set<int>& b) { return jaccard_of(a, b); }

std::size_t path_distance(const std::vector<InstructionId>& p, const std::vector<InstructionId>& q) {
  return fitness::damerau_levenshtein(p, q);
}

double path_similarity(const std::vector<InstructionId>& p, const std::vector<InstructionId>& q) {
  if (p.empty() && q.empty()) throw BothEmpty();
  return 1.0 - static_cast<double>(path_distance(p, q)) / static_cast<double>(p.size() + q.size());
}

Trace trace(const ml::Program& program, const ml::TestCase& test, std::string_view stub,
            const ml::ExecLimits& limits) {
  ml::ExecOptions opts;
  opts.limits = limits;
  opts.record_trace = true;
  const auto rep = ml::execute(program, test, stub, opts);
  Trace t;
  for (std::size_t i = 0; i < rep.trace.size(); ++i) {
    if (rep.trace[i] >= program.instruction_count || rep.trace_phase[i] == ml::Phase::Arrange) continue;
    t.instructions.insert(rep.trace[i]);
    t.path.push_back(rep.trace[i]);
  }
  return t;
}

std::vector<Mutant> generate_mutants(const ml::Program& program, std::string_view cut_class) {
  const int ci = program.find_class(cut_class);
  if (ci < 0) throw std::invalid_argument("no class named " + std::string(cut_class));
  const ml::ClassDecl& cls = program.classes[ci];

  std::vector<Mutant> out;
  auto add = [&](ml::Mutation m, std::string text) {
    out.push_back({static_cast<int>(out.size()), m, std::move(text)});
  };
  auto replace = [&](const ml::BinaryExpr& b, ml::BinaryOp to) {
    ml::Mutation m;
    m.kind = ml::MutationKind::ReplaceOperator;
    m.site = b.id;
    m.replacement = to;
    add(m, where(b.loc) + " " + ml::op_text(b.op) + " -> " + ml::op_text(to));
  };
  auto on_expr = [&](const ml::Expr& e) {
    using ml::BinaryOp;
    if (e.kind == ml::ExprKind::Binary) {
      const auto& b = static_cast<const ml::BinaryExpr&>(e);
      const bool numeric = b.type.is_numeric();
      switch (b.op) {
        case BinaryOp::Add: if (numeric) replace(b, BinaryOp::Sub); break;
        case BinaryOp::Sub: if (numeric) replace(b, BinaryOp::Add); break;
        case BinaryOp::Mul: replace(b, BinaryOp::Div); break;
        case BinaryOp::Div: replace(b, BinaryOp::Mul); break;
        case BinaryOp::Lt: replace(b, BinaryOp::Le); break;
        case BinaryOp::Le: replace(b, BinaryOp::Lt); break;
        case BinaryOp::Gt: replace(b, BinaryOp::Ge); break;
        case BinaryOp::Ge: replace(b, BinaryOp::Gt); break;
        case BinaryOp::Eq: replace(b, BinaryOp::Ne); break;
        case BinaryOp::Ne: replace(b, BinaryOp::Eq); break;
        default: break;
      }
    } else if (e.kind == ml::ExprKind::Literal) {
      const auto& lit = static_cast<const ml::LiteralExpr&>(e);
      if (lit.constant_index < 0 || lit.value.kind() != ml::ValueKind::Int) return;
      for (std::int64_t d : {1, -1}) {
        ml::Mutation m;
        m.kind = ml::MutationKind::ShiftConstant;
        m.site = lit.id;
        m.constant_index = lit.constant_index;
        m.delta = d;
        add(m, where(lit.loc) + " " + std::to_string(lit.value.as_int()) + " -> " +
                   std::to_string(lit.value.as_int() + d));
      }
    }
  };
  auto on_stmt = [&](const ml::Stmt& s) {
    if (s.kind != ml::StmtKind::If && s.kind != ml::StmtKind::While) return;
    ml::Mutation m;
    m.kind = ml::MutationKind::NegateCondition;
    m.site = s.id;
    add(m, where(s.loc) + (s.kind == ml::StmtKind::If ? " negate if" : " negate while"));
  };

  if (cls.ctor) ml::walk_block(cls.ctor->body, on_stmt, on_expr);
  for (const auto& m : cls.methods) ml::walk_block(m.body, on_stmt, on_expr);
  return out;
}

KillSet killed(const ml::Program& program, const ml::TestCase& test, std::string_view stub,
               const std::vector<Mutant>& mutants, const ml::ExecLimits& limits) {
  ml::ExecOptions opts;
  opts.limits = limits;
  if (!ml::execute(program, test, stub, opts).passed())
    throw BaselineFails("the test does not pass with this stub on the original program");
  KillSet out;
  for (const auto& m : mutants) {
    opts.mutation = &m.mutation;
    const auto rep = ml::execute(program, test, stub, opts);
    if (rep.passed()) continue;
    out.killed.insert(m.id);
    if (rep.outcome == ml::Outcome::BudgetExceeded) out.by_budget.insert(m.id);
  }
  return out;
}

FidelityReport measure(const ml::Program& program, const ml::TestCase& test, std::string_view cut_class,
                       std::string_view synthesized, std::string_view truth, const ml::ExecLimits& limits) {
  FidelityReport r;
  const Trace s = trace(program, test, synthesized, limits);
  const Trace g = trace(program, test, truth, limits);
  r.instructions_synth = s.instructions;
  r.instructions_truth = g.instructions;
  r.instruction_jaccard = jaccard(s.instructions, g.instructions);
  r.path_synth = s.path;
  r.path_truth = g.path;
  r.path_distance = path_distance(s.path, g.path);
  r.path_similarity = path_similarity(s.path, g.path);

  const auto mutants = generate_mutants(program, cut_class);
  r.mutant_count = mutants.size();
  r.killed_synth = killed(program, test, synthesized, mutants, limits);
  r.killed_truth = killed(program, test, truth, mutants, limits);
  r.killed_jaccard = jaccard(r.killed_synth.killed, r.killed_truth.killed);
  return r;
}

}  // namespace stubforge::fidelity
