#include "stubforge/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace stubforge::cli {

RunReport cmd_run(const CorpusEntry& entry, const evolve::EngineConfig& config) {
  std::optional<std::string_view> broken;
  if (config.mode == evolve::Mode::Repair) {
    if (!entry.broken_stub) throw MissingBrokenStub(entry.id);
    broken = *entry.broken_stub;
  }
  const auto pool = evolve::construct_symbol_pool(*entry.test, *entry.program, broken);
  const auto result = evolve::run(*entry.program, *entry.test, pool, config);
  return make_report(entry, config, result);
}

RunReport cmd_generate(const CorpusEntry& entry, evolve::EngineConfig config) {
  config.mode = evolve::Mode::Generate;
  return cmd_run(entry, config);
}

RunReport cmd_repair(const CorpusEntry& entry, evolve::EngineConfig config) {
  config.mode = evolve::Mode::Repair;
  return cmd_run(entry, config);
}

FidelityOutcome cmd_fidelity(const CorpusEntry& entry, const std::string& synthesized,
                             const ml::ExecLimits& limits) {
  if (!entry.truth_stub) throw NoGroundTruth(entry.id);
  FidelityOutcome out;
  out.mutants = fidelity::generate_mutants(*entry.program, entry.cut);
  out.report = fidelity::measure(*entry.program, *entry.test, entry.cut, synthesized, *entry.truth_stub, limits);
  return out;
}

const std::vector<std::uint64_t>& default_seeds() {
  static const std::vector<std::uint64_t> seeds = [] {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1000; out.size() < 10; ++n) {
      bool prime = n > 1;
      for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
      if (prime) out.push_back(n);
    }
    return out;
  }();
  return seeds;
}

std::vector<RunReport> cmd_bench(const std::vector<CorpusEntry>& entries, const BenchPlan& plan,
                                 const std::function<void(const RunReport&)>& on_report) {
  std::vector<RunReport> out;
  for (const auto& e : entries)
    for (auto mode : plan.modes) {
      if (mode == evolve::Mode::Repair && !e.broken_stub) continue;
      for (auto strategy : plan.strategies)
        for (auto seed : plan.seeds) {
          evolve::EngineConfig c = plan.base;
          c.mode = mode;
          c.strategy = strategy;
          c.seed = seed;
          out.push_back(cmd_run(e, c));
          if (on_report) on_report(out.back());
        }
    }
  return out;
}

std::optional<double> median(std::vector<double> xs) {
  if (xs.empty()) return std::nullopt;
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

std::vector<BenchRow> summarize(const std::vector<RunReport>& reports) {
  std::vector<BenchRow> rows;
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<const RunReport*>> groups;
  for (const auto& r : reports) {
    auto key = std::make_tuple(r.entry, r.mode, r.strategy);
    if (!groups.count(key)) {
      BenchRow row;
      row.entry = r.entry;
      row.mode = r.mode;
      row.strategy = r.strategy;
      rows.push_back(std::move(row));
    }
    groups[key].push_back(&r);
  }
  for (auto& row : rows) {
    const auto& rs = groups[{row.entry, row.mode, row.strategy}];
    std::vector<double> gens, secs, sizes;
    int budget = 0;
    for (const auto* r : rs) {
      ++row.runs;
      budget = std::max(budget, r->max_generations);
      if (!r->passed()) continue;
      ++row.successes;
      gens.push_back(r->generations);
      secs.push_back(r->wall_seconds);
      sizes.push_back(static_cast<double>(r->stub_size));
    }
    row.median_generations = median(gens);
    row.median_seconds = median(secs);
    row.median_size = median(sizes);
    // Ten evenly spaced budgets plus the full one.
    for (int k = 0; k <= 10; ++k) {
      const int g = budget * k / 10;
      int ok = 0;
      for (const auto* r : rs) ok += r->passed() && r->generations <= g;
      row.success_by_budget.push_back({g, row.runs ? static_cast<double>(ok) / row.runs : 0.0});
      if (budget == 0) break;
    }
  }
  return rows;
}

std::string format_summary(const std::vector<BenchRow>& rows) {
  auto opt = [](const std::optional<double>& v, const char* fmt) {
    if (!v) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, fmt, *v);
    return std::string(buf);
  };
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %-9s %-10s %7s %9s %9s %6s\n", "entry", "mode", "strategy", "success",
                "med.gen", "med.time", "med|S|");
  out << line;
  for (const auto& r : rows) {
    const std::string sr = std::to_string(r.successes) + "/" + std::to_string(r.runs);
    std::snprintf(line, sizeof line, "%-8s %-9s %-10s %7s %9s %9s %6s\n", r.entry.c_str(), r.mode.c_str(),
                  r.strategy.c_str(), sr.c_str(), opt(r.median_generations, "%.1f").c_str(),
                  opt(r.median_seconds, "%.2fs").c_str(), opt(r.median_size, "%.1f").c_str());
    out << line;
  }
  return out.str();
}

json to_json(const std::vector<BenchRow>& rows) {
  json out = json::array();
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& r : rows) {
    json curve = json::array();
    for (const auto& [g, rate] : r.success_by_budget) curve.push_back({{"generations", g}, {"success_rate", rate}});
    out.push_back({{"entry", r.entry},
                   {"mode", r.mode},
                   {"strategy", r.strategy},
                   {"runs", r.runs},
                   {"successes", r.successes},
                   {"median_generations", opt(r.median_generations)},
                   {"median_seconds", opt(r.median_seconds)},
                   {"median_size", opt(r.median_size)},
                   {"success_by_budget", curve}});
  }
  return out;
}

}  // namespace stubforge::cli
