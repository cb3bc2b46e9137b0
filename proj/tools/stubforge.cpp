#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stubforge/cli/commands.hpp"

namespace sf = stubforge;
using sf::cli::json;

namespace {

struct Common {
  std::string corpus = "corpus";
  std::string entry;
  std::string strategy = "dominance";
  std::uint64_t seed = 1009;
  int pop = 200;
  int max_gen = 400;
  unsigned threads = 0;
  std::string out;
};

void add_search_options(CLI::App& cmd, Common& c) {
  cmd.add_option("--strategy", c.strategy, "dominance | weighted | unguided")->capture_default_str();
  cmd.add_option("--seed", c.seed, "random seed")->capture_default_str();
  cmd.add_option("--pop", c.pop, "population size N")->capture_default_str();
  cmd.add_option("--max-gen", c.max_gen, "generation budget")->capture_default_str();
  cmd.add_option("--threads", c.threads, "evaluation workers (0 = all cores)");
}

sf::evolve::EngineConfig config_of(const Common& c) {
  sf::evolve::EngineConfig cfg;
  const auto s = sf::evolve::parse_strategy(c.strategy);
  if (!s) throw std::invalid_argument("unknown strategy `" + c.strategy + "`");
  cfg.strategy = *s;
  cfg.seed = c.seed;
  cfg.population = c.pop;
  cfg.max_generations = c.max_gen;
  cfg.threads = c.threads;
  return cfg;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& l : lines) out << l << '\n';
}

void print_run(const sf::cli::RunReport& r) {
  std::cout << r.entry << " " << r.mode << "/" << r.strategy << " seed " << r.seed << ": " << r.status
            << " after " << r.generations << " generations, " << r.evaluations << " evaluations, "
            << r.wall_seconds << "s, |S| = " << r.stub_size << "\n"
            << r.stub;
}

int run_search(const Common& c, sf::evolve::Mode mode) {
  const auto entry = sf::cli::load_corpus_entry(c.corpus, c.entry);
  auto cfg = config_of(c);
  cfg.mode = mode;
  const auto report = sf::cli::cmd_run(entry, cfg);
  print_run(report);
  if (!c.out.empty()) write_lines(c.out, {sf::cli::to_json(report).dump()});
  return report.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stubforge: evolutionary stub synthesis and repair for minilang tests"};
  app.require_subcommand(1);
  Common c;

  auto* gen = app.add_subcommand("generate", "synthesize a stub for an entry's test");
  auto* rep = app.add_subcommand("repair", "synthesize a stub, mining the entry's broken stub");
  for (auto* cmd : {gen, rep}) {
    cmd->add_option("--corpus", c.corpus, "corpus directory")->capture_default_str();
    cmd->add_option("--entry", c.entry, "entry id")->required();
    cmd->add_option("--out", c.out, "write the JSON report here");
    add_search_options(*cmd, c);
  }

  std::string stub_file;
  std::string report_file;
  auto* fid = app.add_subcommand("fidelity", "compare a passing stub with the ground truth");
  fid->add_option("--corpus", c.corpus, "corpus directory")->capture_default_str();
  fid->add_option("--entry", c.entry, "entry id")->required();
  fid->add_option("--stub", stub_file, "stub to measure (default: synthesize one first)");
  fid->add_option("--report", report_file, "take the stub from this run report");
  fid->add_option("--out", c.out, "write the JSON fidelity report here");
  add_search_options(*fid, c);

  std::vector<std::string> entries, strategies{"dominance"}, modes{"generate"};
  std::vector<std::uint64_t> seeds = sf::cli::default_seeds();
  std::string summary_file;
  auto* bench = app.add_subcommand("bench", "run entries x modes x strategies x seeds");
  bench->add_option("--corpus", c.corpus, "corpus directory")->capture_default_str();
  bench->add_option("--entry", entries, "entries (default: all)");
  bench->add_option("--strategy", strategies, "strategies")->capture_default_str();
  bench->add_option("--mode", modes, "generate and/or repair")->capture_default_str();
  bench->add_option("--seed", seeds, "seeds (default: first ten primes from 1000)");
  bench->add_option("--pop", c.pop, "population size N")->capture_default_str();
  bench->add_option("--max-gen", c.max_gen, "generation budget")->capture_default_str();
  bench->add_option("--threads", c.threads, "evaluation workers (0 = all cores)");
  bench->add_option("--out", c.out, "write one JSON report per line here");
  bench->add_option("--summary", summary_file, "write the JSON summary here");

  std::vector<std::string> check_files;
  auto* check = app.add_subcommand("check", "re-verify every passed report in report files");
  check->add_option("reports", check_files, "JSON-lines report files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_search(c, sf::evolve::Mode::Generate);
    if (*rep) return run_search(c, sf::evolve::Mode::Repair);

    if (*fid) {
      const auto entry = sf::cli::load_corpus_entry(c.corpus, c.entry);
      std::string stub;
      if (!stub_file.empty()) {
        stub = read_text(stub_file);
      } else if (!report_file.empty()) {
        std::istringstream lines(read_text(report_file));
        std::string first;
        std::getline(lines, first);
        stub = sf::cli::report_from_json(json::parse(first)).stub;
      } else {
        const auto r = sf::cli::cmd_generate(entry, config_of(c));
        print_run(r);
        if (!r.passed()) {
          std::cerr << "no passing stub to measure\n";
          return 2;
        }
        stub = r.stub;
      }
      const auto f = sf::cli::cmd_fidelity(entry, stub);
      std::printf("instruction jaccard %.6f\npath similarity     %.6f (DLev %zu, |P| %zu vs %zu)\n"
                  "killed jaccard      %.6f (%zu vs %zu of %zu mutants)\n",
                  f.report.instruction_jaccard, f.report.path_similarity, f.report.path_distance,
                  f.report.path_synth.size(), f.report.path_truth.size(), f.report.killed_jaccard,
                  f.report.killed_synth.killed.size(), f.report.killed_truth.killed.size(), f.report.mutant_count);
      if (!c.out.empty()) write_lines(c.out, {sf::cli::to_json(f.report, f.mutants).dump()});
      return 0;
    }

    if (*bench) {
      std::vector<sf::cli::CorpusEntry> selected;
      if (entries.empty()) selected = sf::cli::load_corpus(c.corpus);
      for (const auto& id : entries) selected.push_back(sf::cli::load_corpus_entry(c.corpus, id));
      sf::cli::BenchPlan plan;
      plan.strategies.clear();
      for (const auto& s : strategies) {
        auto v = sf::evolve::parse_strategy(s);
        if (!v) throw std::invalid_argument("unknown strategy `" + s + "`");
        plan.strategies.push_back(*v);
      }
      plan.modes.clear();
      for (const auto& m : modes) {
        auto v = sf::evolve::parse_mode(m);
        if (!v) throw std::invalid_argument("unknown mode `" + m + "`");
        plan.modes.push_back(*v);
      }
      plan.seeds = seeds;
      plan.base = config_of(c);
      std::vector<std::string> lines;
      const auto reports = sf::cli::cmd_bench(selected, plan, [&](const sf::cli::RunReport& r) {
        std::cerr << r.entry << " " << r.mode << "/" << r.strategy << " seed " << r.seed << ": " << r.status
                  << " (" << r.generations << ")\n";
        lines.push_back(sf::cli::to_json(r).dump());
      });
      if (!c.out.empty()) write_lines(c.out, lines);
      const auto rows = sf::cli::summarize(reports);
      std::cout << sf::cli::format_summary(rows);
      if (!summary_file.empty()) write_lines(summary_file, {sf::cli::to_json(rows).dump(2)});
      return 0;
    }

    if (*check) {
      int bad = 0, passed = 0;
      for (const auto& file : check_files) {
        std::istringstream lines(read_text(file));
        std::string line;
        while (std::getline(lines, line)) {
          if (line.empty()) continue;
          const auto r = sf::cli::report_from_json(json::parse(line));
          if (!r.passed()) continue;
          ++passed;
          const auto v = sf::cli::verify_report(r);
          if (!v.ok) {
            ++bad;
            std::cout << "FAIL " << r.entry << " seed " << r.seed << ": " << v.message << "\n";
          }
        }
      }
      std::cout << passed - bad << "/" << passed << " passed reports re-verified\n";
      return bad ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
