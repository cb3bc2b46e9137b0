#include "stubforge/evolve/operators.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "stubforge/fitness/edit_distance.hpp"

namespace stubforge::evolve {

using stubir::ApiCall;
using stubir::ArgMatcher;
using stubir::ArrayOf;
using stubir::Element;
using stubir::Expr;
using stubir::Literal;
using stubir::MockCreate;
using stubir::StubCall;
using stubir::VarDef;

const char* operator_name(Operator op) {
  switch (op) {
    case Operator::Insert: return "insert";
    case Operator::AlterParams: return "alter-params";
    case Operator::AlterLiteral: return "alter-literal";
    case Operator::Swap: return "swap";
    case Operator::Drop: return "drop";
  }
  return "?";
}

namespace {

bool is_reference_kind(const Type& t) {
  switch (t.kind()) {
    case ml::TypeKind::Record:
    case ml::TypeKind::Class:
    case ml::TypeKind::Interface:
    case ml::TypeKind::Exception:
      return true;
    default:
      return false;
  }
}

// Mock or producer for a reference type; producers only when `calls` is set.
std::optional<Expr> decide(const Type& t, const SymbolPool& pool, Rng& rng, bool calls) {
  const bool can_mock = pool.mockable(t);
  std::vector<ApiSymbolPtr> producers;
  if (calls) producers = pool.producers_of(t);
  if (can_mock && !producers.empty()) {
    if (rng.coin()) return Expr{MockCreate{t.name()}};
    return Expr{ApiCall{rng.pick(producers), {}}};
  }
  if (can_mock) return Expr{MockCreate{t.name()}};
  if (!producers.empty()) return Expr{ApiCall{rng.pick(producers), {}}};
  return std::nullopt;
}

Value fallback_literal(const Type& t, Rng& rng) {
  switch (t.kind()) {
    case ml::TypeKind::Int: return Value::integer(0);
    case ml::TypeKind::Real: return Value::real(0.0);
    case ml::TypeKind::Bool: return Value::boolean(rng.coin());
    default: return Value::string("");
  }
}

int max_var(const StubProgram& sp) {
  int m = -1;
  for (const auto& e : sp.elements)
    if (const auto* d = std::get_if<VarDef>(&e)) m = std::max(m, d->var);
  return m;
}

// Indices of element `index` and its transitive definitions, ascending.
std::vector<std::size_t> slice_indices(const StubProgram& sp, std::size_t index) {
  std::map<int, std::size_t> where;
  for (std::size_t i = 0; i < sp.elements.size(); ++i)
    if (const auto* d = std::get_if<VarDef>(&sp.elements[i])) where[d->var] = i;
  std::set<std::size_t> keep{index};
  std::vector<std::size_t> work{index};
  while (!work.empty()) {
    const std::size_t i = work.back();
    work.pop_back();
    for (const auto& v : stubir::uses(sp.elements[i])) {
      if (!v.is_local()) continue;
      auto it = where.find(v.id);
      if (it != where.end() && keep.insert(it->second).second) work.push_back(it->second);
    }
  }
  return {keep.begin(), keep.end()};
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  for (char32_t c : cps) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}


std::int64_t clamp_int(std::int64_t v, std::int64_t delta) {
  std::int64_t r;
  if (__builtin_add_overflow(v, delta, &r)) r = delta > 0 ? kIntLiteralBound : -kIntLiteralBound;
  return std::clamp(r, -kIntLiteralBound, kIntLiteralBound);
}

}  // namespace

Expr mock_or_real(const Type& t, const SymbolPool& pool, Rng& rng) {
  if (!is_reference_kind(t)) throw NoGenerator(t);
  if (auto e = decide(t, pool, rng, true)) return *e;
  throw NoGenerator(t);
}

// Accumulates the definitions needed for one inserted stub call.
struct Generator::Builder {
  const Generator& g;
  const StubProgram& base;
  std::size_t pos;
  Rng& rng;
  std::vector<Element> out;
  int next_id;

  Builder(const Generator& gen, const StubProgram& sp, std::size_t at, Rng& r)
      : g(gen), base(sp), pos(at), rng(r), next_id(max_var(sp) + 1) {}

  VarRef define(const Type& t, Expr e) {
    const int id = next_id++;
    out.push_back(VarDef{id, t, std::move(e)});
    return VarRef::local(id);
  }

  std::optional<VarRef> value(const Type& t, int depth) {
    auto seen = g.visible(base, pos, t);
    if (!seen.empty() && rng.chance(g.options_.reuse_probability)) return rng.pick(seen);
    if (auto made = make(t, depth)) return made;
    if (!seen.empty()) return rng.pick(seen);
    return std::nullopt;
  }

  std::optional<VarRef> call(const ApiSymbolPtr& sym, int depth) {
    const std::size_t mark = out.size();
    std::vector<VarRef> args;
    for (const auto& p : sym->params) {
      auto a = value(p, depth + 1);
      if (!a) {
        out.resize(mark);
        return std::nullopt;
      }
      args.push_back(*a);
    }
    return define(sym->ret, ApiCall{sym, std::move(args)});
  }

  std::optional<VarRef> make(const Type& t, int depth) {
    const bool calls = depth < g.options_.max_depth;
    if (t.is_scalar()) {
      if (calls) {
        auto producers = g.pool_.producers_of(t);
        if (!producers.empty() && rng.coin())
          if (auto r = call(rng.pick(producers), depth)) return r;
      }
      auto lits = g.pool_.literals_of(t);
      return define(t, Literal{lits.empty() ? fallback_literal(t, rng) : rng.pick(lits)});
    }
    if (t.kind() == ml::TypeKind::Array) {
      const std::size_t mark = out.size();
      std::vector<VarRef> items;
      const std::size_t n = rng.index(3);
      for (std::size_t i = 0; i < n; ++i) {
        auto v = value(t.element(), depth + 1);
        if (!v) {
          out.resize(mark);
          return std::nullopt;
        }
        items.push_back(*v);
      }
      return define(t, ArrayOf{std::move(items)});
    }
    if (!is_reference_kind(t)) return std::nullopt;
    auto e = decide(t, g.pool_, rng, calls);
    if (!e) return std::nullopt;
    if (auto* c = std::get_if<ApiCall>(&*e)) return call(c->symbol, depth);
    return define(t, std::move(*e));
  }

  std::optional<stubir::Reaction> reaction(const ml::MethodSig& sig) {
    const bool can_throw = !g.exception_makers_.empty();
    if (sig.ret.is_void() || (can_throw && rng.chance(g.options_.throw_probability))) {
      if (!can_throw) return std::nullopt;
      auto e = call(rng.pick(g.exception_makers_), 0);
      if (!e) return std::nullopt;
      return stubir::Reaction{true, *e};
    }
    auto v = value(sig.ret, 0);
    if (!v) return std::nullopt;
    return stubir::Reaction{false, *v};
  }
};

Generator::Generator(const ml::Program& program, const ml::TestCase& test, const SymbolPool& pool,
                     GeneratorOptions options)
    : program_(program), test_(test), pool_(pool), options_(options) {
  for (const auto& s : pool_.symbols)
    if (s->kind == stubir::ApiKind::Constructor && s->ret.kind() == ml::TypeKind::Exception)
      exception_makers_.push_back(s);
  for (const auto& v : pool_.literals_of(Type::str_type()))
    for (char32_t c : fitness::code_points(v.as_str()))
      if (alphabet_.find(c) == std::u32string::npos) alphabet_ += c;
}

std::vector<VarRef> Generator::visible(const StubProgram& sp, std::size_t pos, const Type& t) const {
  std::vector<VarRef> out;
  for (std::size_t i = 0; i < test_.scope.size(); ++i)
    if (test_.scope[i].type == t) out.push_back(VarRef::test(static_cast<int>(i)));
  for (std::size_t i = 0; i < pos && i < sp.elements.size(); ++i)
    if (const auto* d = std::get_if<VarDef>(&sp.elements[i]); d && d->type == t)
      out.push_back(VarRef::local(d->var));
  return out;
}

std::vector<VarRef> Generator::mock_targets(const StubProgram& sp, std::size_t pos) const {
  std::vector<VarRef> out;
  for (std::size_t i = 0; i < test_.scope.size(); ++i)
    if (test_.scope[i].is_mock) out.push_back(VarRef::test(static_cast<int>(i)));
  for (std::size_t i = 0; i < pos && i < sp.elements.size(); ++i)
    if (const auto* d = std::get_if<VarDef>(&sp.elements[i]);
        d && std::holds_alternative<MockCreate>(d->expr))
      out.push_back(VarRef::local(d->var));
  return out;
}

std::optional<StubProgram> Generator::insert(const StubProgram& sp, Rng& rng) const {
  // Each target is stubbable from just after its definition.
  struct Target {
    VarRef ref;
    std::size_t from;
  };
  std::vector<Target> targets;
  for (const auto& t : mock_targets(sp, 0)) targets.push_back({t, 0});
  for (std::size_t i = 0; i < sp.elements.size(); ++i)
    if (const auto* d = std::get_if<VarDef>(&sp.elements[i]);
        d && std::holds_alternative<MockCreate>(d->expr))
      targets.push_back({VarRef::local(d->var), i + 1});
  if (targets.empty()) return std::nullopt;

  const Target target = rng.pick(targets);
  return stub_target(sp, target.ref, target.from, rng);
}

std::optional<StubProgram> Generator::stub_target(const StubProgram& sp, VarRef target, std::size_t from,
                                                  Rng& rng) const {
  const Type type = stubir::var_type(sp, test_, target);
  const int iface = program_.find_interface(type.name());
  if (iface < 0) return std::nullopt;
  std::vector<const ml::MethodSig*> methods;
  for (const auto& m : program_.interfaces[iface].methods)
    if (!m.ret.is_void() || !exception_makers_.empty()) methods.push_back(&m);
  if (methods.empty()) return std::nullopt;
  const ml::MethodSig& sig = *rng.pick(methods);

  const std::size_t pos = static_cast<std::size_t>(
      rng.between(static_cast<std::int64_t>(from), static_cast<std::int64_t>(sp.size())));
  Builder b(*this, sp, pos, rng);
  StubCall call{target, sig.name, {}, {}};
  for (const auto& p : sig.params) {
    std::optional<VarRef> v;
    if (rng.chance(options_.eq_matcher_probability)) v = b.value(p.type, 0);
    call.matchers.push_back(v ? ArgMatcher::eq(*v) : ArgMatcher::anything());
  }
  auto r = b.reaction(sig);
  if (!r) return std::nullopt;
  call.reaction = *r;

  if (sp.size() + b.out.size() + 1 > options_.length_limit) return std::nullopt;
  StubProgram next;
  next.elements.assign(sp.elements.begin(), sp.elements.begin() + static_cast<std::ptrdiff_t>(pos));
  for (auto& e : b.out) next.elements.push_back(std::move(e));
  next.elements.push_back(std::move(call));
  next.elements.insert(next.elements.end(), sp.elements.begin() + static_cast<std::ptrdiff_t>(pos),
                       sp.elements.end());
  return stubir::canonicalize(next);
}

std::optional<StubProgram> Generator::alter_params(const StubProgram& sp, Rng& rng) const {
  // A site is one read of a variable; slot -1 is a stub call's target mock.
  struct Site {
    std::size_t element;
    int slot;
    std::vector<VarRef> options;
  };
  std::vector<Site> sites;
  auto add = [&](std::size_t i, int slot, VarRef current, std::vector<VarRef> cands) {
    std::erase(cands, current);
    if (!cands.empty()) sites.push_back({i, slot, std::move(cands)});
  };
  for (std::size_t i = 0; i < sp.elements.size(); ++i) {
    const auto& el = sp.elements[i];
    if (const auto* d = std::get_if<VarDef>(&el)) {
      std::vector<VarRef> reads;
      if (const auto* c = std::get_if<ApiCall>(&d->expr)) reads = c->args;
      else if (const auto* a = std::get_if<ArrayOf>(&d->expr)) reads = a->items;
      for (std::size_t k = 0; k < reads.size(); ++k)
        add(i, static_cast<int>(k), reads[k], visible(sp, i, stubir::var_type(sp, test_, reads[k])));
      continue;
    }
    const auto& s = std::get<StubCall>(el);
    const Type mock_type = stubir::var_type(sp, test_, s.mock);
    std::vector<VarRef> mocks;
    for (const auto& m : mock_targets(sp, i))
      if (stubir::var_type(sp, test_, m) == mock_type) mocks.push_back(m);
    add(i, -1, s.mock, mocks);
    for (std::size_t k = 0; k < s.matchers.size(); ++k)
      if (!s.matchers[k].any)
        add(i, static_cast<int>(k), s.matchers[k].var,
            visible(sp, i, stubir::var_type(sp, test_, s.matchers[k].var)));
    add(i, static_cast<int>(s.matchers.size()), s.reaction.var,
        visible(sp, i, stubir::var_type(sp, test_, s.reaction.var)));
  }
  if (sites.empty()) return std::nullopt;

  const Site& site = rng.pick(sites);
  const VarRef repl = site.options[rng.index(site.options.size())];
  StubProgram next = sp;
  auto& el = next.elements[site.element];
  if (auto* d = std::get_if<VarDef>(&el)) {
    if (auto* c = std::get_if<ApiCall>(&d->expr)) c->args[site.slot] = repl;
    else std::get<ArrayOf>(d->expr).items[site.slot] = repl;
  } else {
    auto& s = std::get<StubCall>(el);
    if (site.slot < 0) s.mock = repl;
    else if (static_cast<std::size_t>(site.slot) < s.matchers.size()) s.matchers[site.slot].var = repl;
    else s.reaction.var = repl;
  }
  return stubir::canonicalize(next);
}

char32_t Generator::random_char(Rng& rng) const {
  if (!alphabet_.empty() && rng.coin()) return alphabet_[rng.index(alphabet_.size())];
  return static_cast<char32_t>(rng.between(0x20, 0x7E));
}

std::optional<StubProgram> Generator::alter_literal(const StubProgram& sp, Rng& rng) const {
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < sp.elements.size(); ++i)
    if (const auto* d = std::get_if<VarDef>(&sp.elements[i]))
      if (const auto* l = std::get_if<Literal>(&d->expr); l && !l->value.is_null()) sites.push_back(i);
  if (sites.empty()) return std::nullopt;

  StubProgram next = sp;
  auto& lit = std::get<Literal>(std::get<VarDef>(next.elements[rng.pick(sites)]).expr);
  const Value& v = lit.value;

  auto delta = [&]() -> std::int64_t {
    switch (rng.index(3)) {
      case 0: return 1;
      case 1: return 10;
      default: return rng.between(-5, 5);
    }
  };
  switch (v.kind()) {
    case ml::ValueKind::Int: {
      std::int64_t d = delta();
      if (rng.coin()) d = -d;
      lit.value = Value::integer(clamp_int(v.as_int(), d));
      break;
    }
    case ml::ValueKind::Real: {
      std::int64_t d = delta();
      if (rng.coin()) d = -d;
      lit.value = Value::real(v.as_real() + static_cast<double>(d));
      break;
    }
    case ml::ValueKind::Bool:
      lit.value = Value::boolean(!v.as_bool());
      break;
    case ml::ValueKind::Str: {
      auto cps = fitness::code_points(v.as_str());
      const auto pool_strings = pool_.literals_of(Type::str_type());
      // 0 insert, 1 delete, 2 replace a character, 3 take a pool literal
      std::vector<int> edits{0};
      if (!cps.empty()) edits.insert(edits.end(), {1, 2});
      if (!pool_strings.empty()) edits.push_back(3);
      // Uniform over the four edits, re-drawn while inapplicable.
      int edit;
      do edit = static_cast<int>(rng.index(4));
      while (std::find(edits.begin(), edits.end(), edit) == edits.end());
      switch (edit) {
        case 0:
          cps.insert(cps.begin() + static_cast<std::ptrdiff_t>(rng.index(cps.size() + 1)), random_char(rng));
          break;
        case 1:
          cps.erase(cps.begin() + static_cast<std::ptrdiff_t>(rng.index(cps.size())));
          break;
        case 2:
          cps[rng.index(cps.size())] = random_char(rng);
          break;
        default:
          lit.value = pool_strings[rng.index(pool_strings.size())];
          return stubir::canonicalize(next);
      }
      lit.value = Value::string(encode_utf8(cps));
      break;
    }
    default:
      return std::nullopt;
  }
  return stubir::canonicalize(next);
}

StubProgram repair_order(const StubProgram& sp) {
  std::map<int, std::size_t> where;
  for (std::size_t i = 0; i < sp.elements.size(); ++i)
    if (const auto* d = std::get_if<VarDef>(&sp.elements[i])) where[d->var] = i;
  std::vector<char> done(sp.elements.size(), 0);
  StubProgram out;
  auto emit = [&](auto&& self, std::size_t i) -> void {
    if (done[i]) return;
    done[i] = 1;
    for (const auto& v : stubir::uses(sp.elements[i]))
      if (v.is_local())
        if (auto it = where.find(v.id); it != where.end()) self(self, it->second);
    out.elements.push_back(sp.elements[i]);
  };
  for (std::size_t i = 0; i < sp.elements.size(); ++i) emit(emit, i);
  return out;
}

std::optional<StubProgram> Generator::swap(const StubProgram& sp, Rng& rng) const {
  if (sp.size() < 2) return std::nullopt;
  const std::size_t i = rng.index(sp.size());
  std::size_t j = rng.index(sp.size() - 1);
  if (j >= i) ++j;
  StubProgram next = sp;
  std::swap(next.elements[i], next.elements[j]);
  return stubir::canonicalize(repair_order(next));
}

std::optional<StubProgram> Generator::drop(const StubProgram& sp, Rng& rng) const {
  std::set<int> read;
  for (const auto& e : sp.elements)
    for (const auto& v : stubir::uses(e))
      if (v.is_local()) read.insert(v.id);
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < sp.elements.size(); ++i) {
    const auto* d = std::get_if<VarDef>(&sp.elements[i]);
    if (!d || !read.count(d->var)) sites.push_back(i);
  }
  if (sites.empty()) return std::nullopt;
  StubProgram next = sp;
  next.elements.erase(next.elements.begin() + static_cast<std::ptrdiff_t>(rng.pick(sites)));
  return stubir::canonicalize(next);
}

std::optional<StubProgram> Generator::apply(Operator op, const StubProgram& sp, Rng& rng) const {
  switch (op) {
    case Operator::Insert: return insert(sp, rng);
    case Operator::AlterParams: return alter_params(sp, rng);
    case Operator::AlterLiteral: return alter_literal(sp, rng);
    case Operator::Swap: return swap(sp, rng);
    case Operator::Drop: return drop(sp, rng);
  }
  return std::nullopt;
}

StubProgram Generator::mutate(const StubProgram& sp, Rng& rng, Operator* applied) const {
  std::vector<Operator> left{Operator::Insert, Operator::AlterParams, Operator::AlterLiteral,
                             Operator::Swap, Operator::Drop};
  while (!left.empty()) {
    const std::size_t k = rng.index(left.size());
    if (auto out = apply(left[k], sp, rng)) {
      if (applied) *applied = left[k];
      return *out;
    }
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return sp;
}

StubProgram Generator::random_program(Rng& rng, int lo, int hi) const {
  StubProgram sp;
  for (std::size_t i = 0; i < test_.scope.size(); ++i) {
    if (!test_.scope[i].is_mock) continue;
    const auto count = rng.between(lo, hi);
    for (std::int64_t k = 0; k < count; ++k)
      if (auto next = stub_target(sp, VarRef::test(static_cast<int>(i)), 0, rng)) sp = std::move(*next);
  }
  return sp;
}

std::pair<StubProgram, StubProgram> Generator::crossover(const StubProgram& p1, const StubProgram& p2,
                                                         Rng& rng) const {
  const StubProgram* parents[2] = {&p1, &p2};
  struct Pick {
    std::vector<std::pair<int, std::size_t>> order;  // (parent, element)
    std::set<std::pair<int, std::size_t>> taken;
  };
  Pick picks[2];
  for (int p = 0; p < 2; ++p) {
    const auto& sp = *parents[p];
    for (std::size_t i = 0; i < sp.elements.size(); ++i) {
      if (!stubir::is_stub_call(sp.elements[i])) continue;
      for (auto& o : picks) {
        if (!rng.coin()) continue;
        for (std::size_t k : slice_indices(sp, i))
          if (o.taken.insert({p, k}).second) o.order.push_back({p, k});
      }
    }
  }

  auto build = [&](const Pick& pick) {
    std::map<std::pair<int, int>, int> ids;
    auto remap = [&](int p, VarRef& v) {
      if (v.is_local()) v.id = ids.at({p, v.id});
    };
    StubProgram out;
    for (const auto& [p, k] : pick.order) {
      Element el = parents[p]->elements[k];
      if (auto* d = std::get_if<VarDef>(&el)) {
        if (auto* c = std::get_if<ApiCall>(&d->expr))
          for (auto& a : c->args) remap(p, a);
        else if (auto* a = std::get_if<ArrayOf>(&d->expr))
          for (auto& it : a->items) remap(p, it);
        const int id = static_cast<int>(ids.size());
        ids[{p, d->var}] = id;
        d->var = id;
      } else {
        auto& s = std::get<StubCall>(el);
        remap(p, s.mock);
        for (auto& m : s.matchers)
          if (!m.any) remap(p, m.var);
        remap(p, s.reaction.var);
      }
      out.elements.push_back(std::move(el));
    }
    if (out.size() > options_.length_limit) out.elements.resize(options_.length_limit);
    return stubir::canonicalize(out);
  };
  return {build(picks[0]), build(picks[1])};
}

}  // namespace stubforge::evolve
