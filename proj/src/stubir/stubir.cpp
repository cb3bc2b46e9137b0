#include "stubforge/stubir/stubir.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "stubforge/minilang/builtins.hpp"
#include "stubforge/minilang/lexer.hpp"
#include "stubforge/minilang/minilang.hpp"

namespace stubforge::stubir {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* kind_word(ApiKind k) {
  switch (k) {
    case ApiKind::Constructor: return "new";
    case ApiKind::Method: return "method";
    case ApiKind::FieldAccess: return "field";
    case ApiKind::Function: return "fn";
  }
  return "?";
}

std::string real_text(double d) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, d);
  std::string s(buf, p);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string literal_text(const Value& v) {
  switch (v.kind()) {
    case ml::ValueKind::Int: return std::to_string(v.as_int());
    case ml::ValueKind::Real: return real_text(v.as_real());
    case ml::ValueKind::Bool: return v.as_bool() ? "true" : "false";
    case ml::ValueKind::Str: return ml::quote_string(v.as_str());
    case ml::ValueKind::Null: return "null";
    default: throw std::invalid_argument("literal must be a scalar or null");
  }
}

Type literal_type(const Value& v) {
  switch (v.kind()) {
    case ml::ValueKind::Int: return Type::int_type();
    case ml::ValueKind::Real: return Type::real_type();
    case ml::ValueKind::Bool: return Type::bool_type();
    case ml::ValueKind::Str: return Type::str_type();
    default: return Type::null_type();
  }
}

}  // namespace

std::string ApiSymbol::str() const {
  std::string s = std::string(kind_word(kind)) + " ";
  if (!owner.empty()) s += owner + ".";
  s += name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) s += (i ? ", " : "") + params[i].str();
  return s + ") -> " + ret.str();
}

std::size_t StubProgram::stub_call_count() const {
  std::size_t n = 0;
  for (const auto& e : elements) n += is_stub_call(e);
  return n;
}

bool is_def(const Element& e) { return std::holds_alternative<VarDef>(e); }
bool is_stub_call(const Element& e) { return std::holds_alternative<StubCall>(e); }

std::vector<VarRef> uses(const Element& e) {
  std::vector<VarRef> out;
  if (const auto* d = std::get_if<VarDef>(&e)) {
    std::visit(overloaded{
                   [](const Literal&) {},
                   [&](const ArrayOf& a) { out = a.items; },
                   [&](const ApiCall& c) { out = c.args; },
                   [](const MockCreate&) {},
               },
               d->expr);
    return out;
  }
  const auto& s = std::get<StubCall>(e);
  out.push_back(s.mock);
  for (const auto& m : s.matchers)
    if (!m.any) out.push_back(m.var);
  out.push_back(s.reaction.var);
  return out;
}

Type var_type(const StubProgram& sp, const ml::TestCase& test, VarRef v) {
  if (!v.is_local()) {
    if (v.id < 0 || static_cast<std::size_t>(v.id) >= test.scope.size())
      throw std::out_of_range("test variable index out of range");
    return test.scope[v.id].type;
  }
  for (const auto& e : sp.elements)
    if (const auto* d = std::get_if<VarDef>(&e); d && d->var == v.id) return d->type;
  throw std::out_of_range("undefined stub variable v" + std::to_string(v.id));
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

namespace {

bool symbol_declared(const ApiSymbol& sym, const std::vector<ApiSymbolPtr>& declared) {
  for (const auto& s : declared)
    if (*s == sym) return true;
  return false;
}

}  // namespace

std::vector<Violation> validate(const StubProgram& sp, const ml::TestCase& test,
                                const ml::Program& program, std::size_t length_limit) {
  std::vector<Violation> out;
  if (sp.size() > length_limit)
    out.push_back({sp.size(), "length " + std::to_string(sp.size()) + " exceeds the limit of " +
                                  std::to_string(length_limit)});

  const std::vector<ApiSymbolPtr> declared = api_symbols(program);
  std::map<int, Type> defined;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const Element& el = sp.elements[i];
    auto fail = [&](std::string msg) { out.push_back({i, std::move(msg)}); };

    bool refs_ok = true;
    auto type_of = [&](VarRef v) -> std::optional<Type> {
      if (v.is_local()) {
        auto it = defined.find(v.id);
        if (it == defined.end()) {
          fail("v" + std::to_string(v.id) + " is used before it is defined");
          refs_ok = false;
          return std::nullopt;
        }
        return it->second;
      }
      if (v.id < 0 || static_cast<std::size_t>(v.id) >= test.scope.size()) {
        fail("test variable #" + std::to_string(v.id) + " does not exist");
        refs_ok = false;
        return std::nullopt;
      }
      return test.scope[v.id].type;
    };

    if (const auto* d = std::get_if<VarDef>(&el)) {
      std::optional<Type> produced;
      std::visit(overloaded{
                     [&](const Literal& l) {
                       if (!l.value.is_null() && !l.value.is_numeric() &&
                           l.value.kind() != ml::ValueKind::Bool && l.value.kind() != ml::ValueKind::Str) {
                         fail("literal must be a scalar or null");
                         return;
                       }
                       produced = literal_type(l.value);
                     },
                     [&](const ArrayOf& a) {
                       if (d->type.kind() != ml::TypeKind::Array) {
                         fail("array definition needs an array type");
                         return;
                       }
                       for (VarRef v : a.items) {
                         auto t = type_of(v);
                         if (t && !ml::assignable(d->type.element(), *t))
                           fail("array element of type " + t->str() + " in " + d->type.str());
                       }
                       produced = d->type;
                     },
                     [&](const ApiCall& c) {
                       if (!c.symbol) {
                         fail("API call without a symbol");
                         return;
                       }
                       if (!symbol_declared(*c.symbol, declared)) {
                         fail("undeclared API symbol " + c.symbol->str());
                         return;
                       }
                       if (c.args.size() != c.symbol->params.size()) {
                         fail(c.symbol->str() + " called with " + std::to_string(c.args.size()) +
                              " argument(s)");
                         return;
                       }
                       for (std::size_t k = 0; k < c.args.size(); ++k) {
                         auto t = type_of(c.args[k]);
                         if (t && !(*t == c.symbol->params[k]))
                           fail("argument " + std::to_string(k) + " of " + c.symbol->str() +
                                " has type " + t->str());
                       }
                       produced = c.symbol->ret;
                     },
                     [&](const MockCreate& m) {
                       if (program.find_interface(m.interface) < 0) {
                         fail("`mock " + m.interface + "` needs an interface");
                         return;
                       }
                       produced = Type::declared(ml::TypeKind::Interface, m.interface);
                     },
                 },
                 d->expr);
      if (produced) {
        if (produced->is_void()) {
          fail("definition of a Void value");
        } else if (!ml::assignable(d->type, *produced)) {
          fail("v" + std::to_string(d->var) + " declared " + d->type.str() + " but defined as " +
               produced->str());
        } else if (d->type.kind() == ml::TypeKind::Null) {
          fail("null definition needs a reference type");
        }
      }
      if (!defined.emplace(d->var, d->type).second)
        fail("v" + std::to_string(d->var) + " is defined twice");
      continue;
    }

    const auto& s = std::get<StubCall>(el);
    auto mt = type_of(s.mock);
    if (!mt) continue;
    if (mt->kind() != ml::TypeKind::Interface) {
      fail("stub target has non-mock type " + mt->str());
      continue;
    }
    const ml::InterfaceDecl& itf = program.interfaces[program.find_interface(mt->name())];
    const int mi = itf.find_method(s.method);
    if (mi < 0) {
      fail("interface " + itf.name + " has no method " + s.method);
      continue;
    }
    const ml::MethodSig& sig = itf.methods[mi];
    if (s.matchers.size() != sig.params.size()) {
      fail(itf.name + "." + s.method + " takes " + std::to_string(sig.params.size()) +
           " argument(s), got " + std::to_string(s.matchers.size()) + " matcher(s)");
      continue;
    }
    for (std::size_t k = 0; k < s.matchers.size(); ++k) {
      if (s.matchers[k].any) continue;
      auto t = type_of(s.matchers[k].var);
      if (t && !ml::assignable(sig.params[k].type, *t))
        fail("matcher " + std::to_string(k) + " of type " + t->str() + " for parameter of type " +
             sig.params[k].type.str());
    }
    auto rt = type_of(s.reaction.var);
    if (!rt || !refs_ok) continue;
    if (s.reaction.is_throw) {
      if (rt->kind() != ml::TypeKind::Exception) fail("thenThrow needs an exception, got " + rt->str());
    } else if (sig.ret.is_void()) {
      fail(itf.name + "." + s.method + " returns Void");
    } else if (!ml::assignable(sig.ret, *rt)) {
      fail("thenReturn of " + rt->str() + " for " + sig.ret.str());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// canonicalize / render / slice
// ---------------------------------------------------------------------------

namespace {

void remap(VarRef& v, const std::map<int, int>& ids) {
  if (!v.is_local()) return;
  auto it = ids.find(v.id);
  if (it != ids.end()) v.id = it->second;
}

void remap_element(Element& el, const std::map<int, int>& ids) {
  if (auto* d = std::get_if<VarDef>(&el)) {
    std::visit(overloaded{
                   [](Literal&) {},
                   [&](ArrayOf& a) {
                     for (auto& v : a.items) remap(v, ids);
                   },
                   [&](ApiCall& c) {
                     for (auto& v : c.args) remap(v, ids);
                   },
                   [](MockCreate&) {},
               },
               d->expr);
    return;
  }
  auto& s = std::get<StubCall>(el);
  remap(s.mock, ids);
  for (auto& m : s.matchers)
    if (!m.any) remap(m.var, ids);
  remap(s.reaction.var, ids);
}

}  // namespace

StubProgram canonicalize(const StubProgram& sp) {
  std::map<int, int> ids;
  int next = 0;
  for (const auto& e : sp.elements)
    if (const auto* d = std::get_if<VarDef>(&e)) ids.emplace(d->var, next++);
  StubProgram out = sp;
  for (auto& e : out.elements) {
    if (auto* d = std::get_if<VarDef>(&e)) d->var = ids.at(d->var);
    remap_element(e, ids);
  }
  return out;
}

std::string render(const StubProgram& sp_in, const ml::TestCase& test) {
  const StubProgram sp = canonicalize(sp_in);
  auto name = [&](VarRef v) {
    return v.is_local() ? "v" + std::to_string(v.id) : test.scope.at(v.id).name;
  };
  auto arg_list = [&](const std::vector<VarRef>& vs, std::size_t from) {
    std::string s;
    for (std::size_t i = from; i < vs.size(); ++i) s += (i > from ? ", " : "") + name(vs[i]);
    return s;
  };
  std::ostringstream out;
  for (const auto& el : sp.elements) {
    if (const auto* d = std::get_if<VarDef>(&el)) {
      out << "let v" << d->var;
      std::visit(overloaded{
                     [&](const Literal& l) {
                       if (l.value.is_null()) out << ": " << d->type.str();
                       out << " = " << literal_text(l.value);
                     },
                     [&](const ArrayOf& a) {
                       out << ": " << d->type.str() << " = [" << arg_list(a.items, 0) << "]";
                     },
                     [&](const ApiCall& c) {
                       const ApiSymbol& s = *c.symbol;
                       out << " = ";
                       switch (s.kind) {
                         case ApiKind::Constructor:
                           out << "new " << s.owner << "(" << arg_list(c.args, 0) << ")";
                           break;
                         case ApiKind::Method:
                           out << name(c.args.at(0)) << "." << s.name << "(" << arg_list(c.args, 1) << ")";
                           break;
                         case ApiKind::FieldAccess:
                           out << name(c.args.at(0)) << "." << s.name;
                           break;
                         case ApiKind::Function:
                           out << s.name << "(" << arg_list(c.args, 0) << ")";
                           break;
                       }
                     },
                     [&](const MockCreate& m) { out << " = mock " << m.interface; },
                 },
                 d->expr);
      out << ";\n";
      continue;
    }
    const auto& s = std::get<StubCall>(el);
    out << "when " << name(s.mock) << "." << s.method << "(";
    for (std::size_t i = 0; i < s.matchers.size(); ++i) {
      if (i) out << ", ";
      if (s.matchers[i].any) {
        out << "any";
      } else {
        out << "eq(" << name(s.matchers[i].var) << ")";
      }
    }
    out << ") " << (s.reaction.is_throw ? "thenThrow " : "thenReturn ") << name(s.reaction.var)
        << ";\n";
  }
  return out.str();
}

StubProgram backward_slice(const StubProgram& sp, std::size_t index) {
  if (index >= sp.size()) throw std::out_of_range("slice index out of range");
  std::vector<bool> keep(sp.size(), false);
  keep[index] = true;
  std::set<int> needed;
  for (VarRef v : uses(sp.elements[index]))
    if (v.is_local()) needed.insert(v.id);
  for (std::size_t i = index; i-- > 0;) {
    const auto* d = std::get_if<VarDef>(&sp.elements[i]);
    if (!d || !needed.count(d->var)) continue;
    keep[i] = true;
    needed.erase(d->var);
    for (VarRef v : uses(sp.elements[i]))
      if (v.is_local()) needed.insert(v.id);
  }
  StubProgram out;
  for (std::size_t i = 0; i < sp.size(); ++i)
    if (keep[i]) out.elements.push_back(sp.elements[i]);
  return out;
}

// ---------------------------------------------------------------------------
// api symbols
// ---------------------------------------------------------------------------

std::vector<ApiSymbolPtr> api_symbols(const ml::Program& prog) {
  std::vector<ApiSymbolPtr> out;
  auto add = [&](ApiKind kind, std::string owner, std::string name, std::vector<Type> params, Type ret) {
    out.push_back(std::make_shared<const ApiSymbol>(
        ApiSymbol{kind, std::move(owner), std::move(name), std::move(params), std::move(ret)}));
  };
  for (const auto& r : prog.records) {
    const Type t = Type::declared(ml::TypeKind::Record, r.name);
    std::vector<Type> params;
    for (const auto& f : r.fields) params.push_back(f.type);
    add(ApiKind::Constructor, r.name, r.name, params, t);
    for (const auto& f : r.fields) add(ApiKind::FieldAccess, r.name, f.name, {t}, f.type);
  }
  for (const auto& e : prog.exceptions) {
    if (e.builtin) continue;
    const Type t = Type::declared(ml::TypeKind::Exception, e.name);
    add(ApiKind::Constructor, e.name, e.name, {}, t);
    add(ApiKind::Constructor, e.name, e.name, {Type::str_type()}, t);
  }
  for (const auto& c : prog.classes) {
    const Type t = Type::declared(ml::TypeKind::Class, c.name);
    std::vector<Type> params;
    if (c.ctor)
      for (const auto& p : c.ctor->params) params.push_back(p.type);
    add(ApiKind::Constructor, c.name, c.name, params, t);
    for (const auto& m : c.methods) {
      if (m.ret.is_void()) continue;
      std::vector<Type> mp{t};
      for (const auto& p : m.params) mp.push_back(p.type);
      add(ApiKind::Method, c.name, m.name, mp, m.ret);
    }
    for (const auto& f : c.fields) add(ApiKind::FieldAccess, c.name, f.name, {t}, f.type);
  }
  for (const auto& f : prog.functions) {
    if (f.ret.is_void()) continue;
    std::vector<Type> params;
    for (const auto& p : f.params) params.push_back(p.type);
    add(ApiKind::Function, "", f.name, params, f.ret);
  }
  for (const auto& b : ml::builtins())
    if (!b.generic) add(ApiKind::Function, "", std::string(b.name), b.params, b.ret);
  return out;
}

// ---------------------------------------------------------------------------
// parse_stub
// ---------------------------------------------------------------------------

namespace {

class Lowerer {
 public:
  Lowerer(const ml::Program& prog, const ml::TestCase& test)
      : prog_(prog), test_(test), symbols_(api_symbols(prog)) {}

  StubProgram run(const ml::StubBlock& block) {
    for (const auto& s : block.block.stmts) {
      if (s->kind == ml::StmtKind::Let) {
        const auto& l = static_cast<const ml::LetStmt&>(*s);
        names_[l.name] = lower(*l.init, &l.var_type);
      } else {
        when(static_cast<const ml::WhenStmt&>(*s));
      }
    }
    return canonicalize(out_);
  }

 private:
  [[noreturn]] static void unsupported(const ml::Expr& e, const std::string& what) {
    throw StubParseError(std::to_string(e.loc.line) + ":" + std::to_string(e.loc.column) + ": " + what +
                         " is outside the stub grammar");
  }

  VarRef define(Type type, Expr expr) {
    const int id = next_var_++;
    out_.elements.push_back(VarDef{id, std::move(type), std::move(expr)});
    return VarRef::local(id);
  }

  ApiSymbolPtr find_symbol(ApiKind kind, const std::string& owner, const std::string& name,
                           const std::vector<Type>& params) const {
    for (const auto& s : symbols_)
      if (s->kind == kind && s->owner == owner && s->name == name && s->params == params) return s;
    return nullptr;
  }

  VarRef lower(const ml::Expr& e, const Type* declared = nullptr) {
    switch (e.kind) {
      case ml::ExprKind::Var: {
        const auto& v = static_cast<const ml::VarExpr&>(e);
        if (auto it = names_.find(v.name); it != names_.end()) return it->second;
        for (std::size_t i = 0; i < test_.scope.size(); ++i)
          if (test_.scope[i].name == v.name) return VarRef::test(static_cast<int>(i));
        unsupported(e, "variable `" + v.name + "`");
      }
      case ml::ExprKind::Literal: {
        const auto& lit = static_cast<const ml::LiteralExpr&>(e);
        Type t = declared ? *declared : e.type;
        if (lit.value.is_null() && (!declared || !declared->is_reference()))
          unsupported(e, "untyped null");
        return define(std::move(t), Literal{lit.value});
      }
      case ml::ExprKind::ArrayLit: {
        const auto& a = static_cast<const ml::ArrayLitExpr&>(e);
        ArrayOf arr;
        for (const auto& item : a.items) arr.items.push_back(lower(*item));
        return define(declared ? *declared : e.type, std::move(arr));
      }
      case ml::ExprKind::MockCreate:
        return define(e.type, MockCreate{static_cast<const ml::MockCreateExpr&>(e).interface});
      case ml::ExprKind::New: {
        const auto& n = static_cast<const ml::NewExpr&>(e);
        std::vector<Type> params;
        std::vector<VarRef> args;
        for (const auto& a : n.args) {
          params.push_back(a->type);
          args.push_back(lower(*a));
        }
        auto sym = find_symbol(ApiKind::Constructor, n.type_name, n.type_name, params);
        if (!sym) unsupported(e, "`new " + n.type_name + "`");
        return define(declared ? *declared : e.type, ApiCall{sym, std::move(args)});
      }
      case ml::ExprKind::MethodCall: {
        const auto& m = static_cast<const ml::MethodCallExpr&>(e);
        if (m.on_interface) unsupported(e, "calling a mock");
        std::vector<VarRef> args{lower(*m.receiver)};
        for (const auto& a : m.args) args.push_back(lower(*a));
        const auto& cls = prog_.classes[m.owner];
        auto sym = symbol_by_name(ApiKind::Method, cls.name, m.method);
        if (!sym) unsupported(e, "method `" + m.method + "`");
        return define(declared ? *declared : e.type, ApiCall{sym, std::move(args)});
      }
      case ml::ExprKind::Field: {
        const auto& f = static_cast<const ml::FieldExpr&>(e);
        std::vector<VarRef> args{lower(*f.object)};
        auto sym = symbol_by_name(ApiKind::FieldAccess, f.object->type.name(), f.field);
        if (!sym) unsupported(e, "field `" + f.field + "`");
        return define(declared ? *declared : e.type, ApiCall{sym, std::move(args)});
      }
      case ml::ExprKind::Call: {
        const auto& c = static_cast<const ml::CallExpr&>(e);
        std::vector<VarRef> args;
        for (const auto& a : c.args) args.push_back(lower(*a));
        auto sym = symbol_by_name(ApiKind::Function, "", c.callee);
        if (!sym) unsupported(e, "call of `" + c.callee + "`");
        return define(declared ? *declared : e.type, ApiCall{sym, std::move(args)});
      }
      default:
        unsupported(e, "this expression");
    }
  }

  ApiSymbolPtr symbol_by_name(ApiKind kind, const std::string& owner, const std::string& name) const {
    for (const auto& s : symbols_)
      if (s->kind == kind && s->owner == owner && s->name == name) return s;
    return nullptr;
  }

  void when(const ml::WhenStmt& w) {
    StubCall sc;
    sc.mock = lower(*w.receiver);
    sc.method = w.method;
    for (const auto& m : w.matchers)
      sc.matchers.push_back(m.any ? ArgMatcher::anything() : ArgMatcher::eq(lower(*m.value)));
    const auto& sig = prog_.interfaces[w.interface_index].methods[w.method_index];
    sc.reaction.is_throw = w.is_throw;
    sc.reaction.var = lower(*w.reaction, w.is_throw ? nullptr : &sig.ret);
    out_.elements.push_back(std::move(sc));
  }

  const ml::Program& prog_;
  const ml::TestCase& test_;
  std::vector<ApiSymbolPtr> symbols_;
  std::map<std::string, VarRef> names_;
  StubProgram out_;
  int next_var_ = 0;
};

}  // namespace

StubProgram parse_stub(const ml::Program& program, const ml::TestCase& test, std::string_view text) {
  const ml::StubBlock block = ml::parse_stub_block(program, test, text);
  return Lowerer(program, test).run(block);
}

}  // namespace stubforge::stubir
