#include "stubforge/cli/report.hpp"

#include "stubforge/minilang/errors.hpp"
#include "stubforge/minilang/minilang.hpp"

namespace stubforge::cli {

RunReport make_report(const CorpusEntry& entry, const evolve::EngineConfig& config,
                      const evolve::RunResult& result) {
  RunReport r;
  r.entry = entry.id;
  r.mode = evolve::mode_name(config.mode);
  r.strategy = evolve::strategy_name(config.strategy);
  r.seed = config.seed;
  r.population = config.population;
  r.max_generations = config.max_generations;
  r.status = evolve::status_name(result.status);
  r.generations = result.generations;
  r.evaluations = result.evaluations;
  r.wall_seconds = result.wall_seconds;
  r.stub_size = result.best.genome.size();
  r.stub = result.best.text;
  for (const auto& s : result.stats)
    r.series.push_back({s.generation, s.best.as, s.best.ec, s.best.su, s.pass});
  r.program_source = entry.program_source;
  r.test_source = entry.test_source;
  return r;
}

json to_json(const RunReport& r) {
  json series = json::array();
  for (const auto& p : r.series)
    series.push_back({{"generation", p.generation}, {"as", p.as}, {"ec", p.ec}, {"su", p.su}, {"pass", p.pass}});
  return {
      {"entry", r.entry},
      {"mode", r.mode},
      {"strategy", r.strategy},
      {"seed", r.seed},
      {"population", r.population},
      {"max_generations", r.max_generations},
      {"status", r.status},
      {"generations", r.generations},
      {"evaluations", r.evaluations},
      {"wall_seconds", r.wall_seconds},
      {"stub_size", r.stub_size},
      {"stub", r.stub},
      {"series", series},
      {"program_source", r.program_source},
      {"test_source", r.test_source},
  };
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.entry = j.at("entry").get<std::string>();
  r.mode = j.at("mode").get<std::string>();
  r.strategy = j.at("strategy").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.population = j.at("population").get<int>();
  r.max_generations = j.at("max_generations").get<int>();
  r.status = j.at("status").get<std::string>();
  r.generations = j.at("generations").get<int>();
  r.evaluations = j.at("evaluations").get<std::uint64_t>();
  r.wall_seconds = j.value("wall_seconds", 0.0);
  r.stub_size = j.at("stub_size").get<std::size_t>();
  r.stub = j.at("stub").get<std::string>();
  for (const auto& p : j.at("series"))
    r.series.push_back({p.at("generation").get<int>(), p.at("as").get<double>(), p.at("ec").get<double>(),
                        p.at("su").get<double>(), p.at("pass").get<bool>()});
  r.program_source = j.at("program_source").get<std::string>();
  r.test_source = j.at("test_source").get<std::string>();
  return r;
}

std::string canonical(const RunReport& r) {
  json j = to_json(r);
  j.erase("wall_seconds");
  return j.dump();
}

Verification verify_report(const RunReport& r) {
  if (!r.passed()) return {true, "not a passing report"};
  try {
    const ml::Program program = ml::parse(r.program_source);
    const ml::TestCase test = ml::parse_test(program, r.test_source);
    const auto sp = stubir::parse_stub(program, test, r.stub);
    if (auto v = stubir::validate(sp, test, program); !v.empty())
      return {false, "stub does not validate: " + v.front().message};
    const std::string again = stubir::render(sp, test);
    if (again != r.stub) return {false, "stub does not re-render to the reported text"};
    const auto rep = ml::execute(program, test, std::string_view(again));
    if (!rep.passed()) return {false, std::string("stub no longer passes (") + ml::outcome_name(rep.outcome) + ")"};
    return {true, "re-rendered and passed"};
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
}

json to_json(const fidelity::FidelityReport& f, const std::vector<fidelity::Mutant>& mutants) {
  json ms = json::array();
  for (const auto& m : mutants)
    ms.push_back({{"id", m.id},
                  {"site", m.description},
                  {"killed_synth", f.killed_synth.killed.count(m.id) > 0},
                  {"killed_truth", f.killed_truth.killed.count(m.id) > 0},
                  {"budget_synth", f.killed_synth.by_budget.count(m.id) > 0},
                  {"budget_truth", f.killed_truth.by_budget.count(m.id) > 0}});
  return {
      {"instructions_synth", f.instructions_synth},
      {"instructions_truth", f.instructions_truth},
      {"instruction_jaccard", f.instruction_jaccard},
      {"path_synth", f.path_synth},
      {"path_truth", f.path_truth},
      {"path_distance", f.path_distance},
      {"path_similarity", f.path_similarity},
      {"mutant_count", f.mutant_count},
      {"killed_synth", f.killed_synth.killed},
      {"killed_truth", f.killed_truth.killed},
      {"killed_jaccard", f.killed_jaccard},
      {"mutants", ms},
  };
}

}  // namespace stubforge::cli
