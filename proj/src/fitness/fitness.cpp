#include "stubforge/fitness/fitness.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "stubforge/fitness/edit_distance.hpp"
#include "stubforge/minilang/lexer.hpp"

namespace stubforge::fitness {

using ml::ValueKind;

double stub_utilization(std::size_t used, double c) {
  if (!(c > 0)) throw std::invalid_argument("C must be positive");
  return std::tanh(static_cast<double>(used) / c);
}

double exercise_coverage(std::size_t executed, std::size_t total) {
  if (total == 0) throw EmptyActBlock();
  return static_cast<double>(executed) / static_cast<double>(total);
}

double string_distance(const std::string& x, const std::string& y) {
  const std::u32string a = code_points(x);
  const std::u32string b = code_points(y);
  const double denom = a.empty() ? 1.0 : static_cast<double>(a.size());
  return std::tanh(static_cast<double>(levenshtein(a, b)) / denom);
}

double distance(const Value& x, const Value& y) {
  if (x.is_numeric() && y.is_numeric()) {
    if (x.kind() == ValueKind::Int && y.kind() == ValueKind::Int && x.as_int() == y.as_int()) return 0.0;
    const double a = x.as_number();
    const double b = y.as_number();
    const double denom = a == 0.0 ? 1.0 : std::fabs(a);
    return std::tanh(std::fabs(a - b) / denom);
  }
  if (x.kind() == ValueKind::Str && y.kind() == ValueKind::Str) return string_distance(x.as_str(), y.as_str());
  if (x.kind() == ValueKind::Bool && y.kind() == ValueKind::Bool)
    return x.as_bool() == y.as_bool() ? 0.0 : std::tanh(1.0);
  if (x.is_null() || y.is_null()) return x.is_null() && y.is_null() ? 0.0 : std::tanh(1.0);
  return string_distance(serialize_deep(x), serialize_deep(y));
}

namespace {

void serialize(const Value& v, std::string& out, std::set<const void*>& path) {
  switch (v.kind()) {
    case ValueKind::Null: out += "null"; return;
    case ValueKind::Int: out += std::to_string(v.as_int()); return;
    case ValueKind::Real: {
      char buf[64];
      auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v.as_real());
      std::string s(buf, p);
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    case ValueKind::Bool: out += v.as_bool() ? "true" : "false"; return;
    case ValueKind::Str: out += ml::quote_string(v.as_str()); return;
    case ValueKind::Exception:
      out += v.as_exception().type + "(" + ml::quote_string(v.as_exception().message) + ")";
      return;
    case ValueKind::Mock:
      out += "mock<" + v.as_mock().interface + ">#" + std::to_string(v.as_mock().handle);
      return;
    case ValueKind::Array: {
      const auto* obj = v.as_array().get();
      if (!path.insert(obj).second) {
        out += "<cycle>";
        return;
      }
      out += "[";
      for (std::size_t i = 0; i < obj->items.size(); ++i) {
        if (i) out += ",";
        serialize(obj->items[i], out, path);
      }
      out += "]";
      path.erase(obj);
      return;
    }
    case ValueKind::Record: {
      const auto* obj = v.as_record().get();
      if (!path.insert(obj).second) {
        out += "<cycle>";
        return;
      }
      out += obj->type + "{";
      for (std::size_t i = 0; i < obj->fields.size(); ++i) {
        if (i) out += ",";
        out += obj->fields[i].first + "=";
        serialize(obj->fields[i].second, out, path);
      }
      out += "}";
      path.erase(obj);
      return;
    }
  }
}

}  // namespace

std::string serialize_deep(const Value& v) {
  std::string out;
  std::set<const void*> path;
  serialize(v, out, path);
  return out;
}

double assertion_score(const ml::AssertionOutcome& outcome) {
  switch (outcome.status) {
    case ml::AssertionStatus::Satisfied: return 1.0;
    case ml::AssertionStatus::Failed:
      if (outcome.kind == ml::AssertionKind::Equals) return 1.0 - distance(outcome.expected, outcome.actual);
      return 0.0;
    default: return 0.0;
  }
}

double assertion_status(const std::vector<double>& scores) {
  if (scores.empty()) throw EmptyOracle();
  return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
}

bool dominates(const FitnessTriple& a, const FitnessTriple& b) {
  if (a.as != b.as) return a.as > b.as;
  if (a.ec != b.ec) return a.ec > b.ec;
  return a.su > b.su;
}

double weighted_sum(const FitnessTriple& f) { return f.su + 2.0 * f.ec + 4.0 * f.as; }

FitnessTriple evaluate(const ml::ExecutionReport& report, const ml::TestCase& test, double c) {
  FitnessTriple f;
  f.su = stub_utilization(report.used_count, c);
  f.ec = exercise_coverage(report.executed_in_E.size(), test.act_ids.size());
  std::vector<double> scores;
  scores.reserve(report.assertions.size());
  for (const auto& a : report.assertions) scores.push_back(assertion_score(a));
  f.as = assertion_status(scores);
  f.pass = report.passed();
  return f;
}

}  // namespace stubforge::fitness
