#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "stubforge/cli/commands.hpp"
#include "stubforge/cli/corpus.hpp"
#include "stubforge/cli/report.hpp"

using namespace stubforge;
using namespace stubforge::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("stubforge-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

void copy_entry(const std::string& id, const fs::path& to) {
  fs::copy(fs::path(STUBFORGE_CORPUS_DIR) / id, to, fs::copy_options::recursive);
}

}  // namespace

TEST(Corpus, LoadsAllEntries) {
  const auto all = load_corpus(STUBFORGE_CORPUS_DIR);
  ASSERT_EQ(all.size(), 5u);
  std::vector<std::string> ids;
  for (const auto& e : all) ids.push_back(e.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"L1", "M3", "S36", "T1", "W1"}));
  EXPECT_TRUE(all[2].broken_stub);
  EXPECT_FALSE(all[0].broken_stub);
  EXPECT_EQ(all[0].cut, "LoginService");
}

TEST(Corpus, RejectsPassingEmptyStub) {
  TempDir tmp;
  const auto dir = tmp.path / "X";
  copy_entry("T1", dir);
  write(dir / "test.ml0",
        "test GaugeIsFull { mock counter: Counter; stub; act { let gauge = new Gauge(counter); let full = gauge.isFull(); } "
        "assert { assertEquals(false, full); } }");
  write(dir / "truth.stub", "");
  try {
    load_entry(dir);
    FAIL();
  } catch (const InvariantViolation& v) {
    EXPECT_EQ(v.entry(), "T1");
  }
}

TEST(Corpus, RejectsFailingTruth) {
  TempDir tmp;
  const auto dir = tmp.path / "X";
  copy_entry("T1", dir);
  write(dir / "truth.stub", "let v0 = 41;\nwhen counter.count() thenReturn v0;\n");
  EXPECT_THROW(load_entry(dir), InvariantViolation);
}

TEST(Corpus, ReportsParseErrors) {
  TempDir tmp;
  const auto dir = tmp.path / "X";
  copy_entry("T1", dir);
  write(dir / "program.ml0", "class {");
  EXPECT_THROW(load_entry(dir), ParseError);
}

TEST(Commands, MissingInputs) {
  const auto l1 = load_corpus_entry(STUBFORGE_CORPUS_DIR, "L1");
  evolve::EngineConfig c;
  c.population = 10;
  c.max_generations = 1;
  EXPECT_THROW(cmd_repair(l1, c), MissingBrokenStub);

  TempDir tmp;
  const auto dir = tmp.path / "X";
  copy_entry("T1", dir);
  fs::remove(dir / "truth.stub");
  const auto t1 = load_entry(dir);
  EXPECT_FALSE(t1.truth_stub);
  EXPECT_THROW(cmd_fidelity(t1, "let v0 = 42;\nwhen counter.count() thenReturn v0;\n"), NoGroundTruth);
}

TEST(Commands, DefaultSeeds) {
  EXPECT_EQ(default_seeds(),
            (std::vector<std::uint64_t>{1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061}));
}

TEST(Report, JsonRoundTripAndVerification) {
  const auto t1 = load_corpus_entry(STUBFORGE_CORPUS_DIR, "T1");
  evolve::EngineConfig c;
  c.population = 30;
  c.max_generations = 60;
  c.seed = 1009;
  c.threads = 1;
  const auto r = cmd_generate(t1, c);
  ASSERT_TRUE(r.passed());
  const auto back = report_from_json(json::parse(to_json(r).dump()));
  EXPECT_EQ(canonical(back), canonical(r));
  EXPECT_TRUE(verify_report(back).ok) << verify_report(back).message;

  auto slower = back;
  slower.wall_seconds += 10;
  EXPECT_EQ(canonical(slower), canonical(r));

  auto tampered = back;
  tampered.stub = "let v0 = 41;\nwhen counter.count() thenReturn v0;\n";
  EXPECT_FALSE(verify_report(tampered).ok);
  const auto j = to_json(r);
  for (const char* key : {"entry", "mode", "strategy", "seed", "status", "generations", "evaluations",
                          "wall_seconds", "stub", "series"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Bench, SummaryArity) {
  std::vector<RunReport> reports;
  for (const char* s : {"dominance", "weighted_sum", "unguided"}) {
    for (std::uint64_t seed : default_seeds()) {
      RunReport r;
      r.entry = "T1";
      r.mode = "generate";
      r.strategy = s;
      r.seed = seed;
      r.max_generations = 100;
      r.status = seed % 2 ? "passed" : "exhausted";
      r.generations = static_cast<int>(seed % 50);
      reports.push_back(r);
    }
  }
  ASSERT_EQ(reports.size(), 30u);
  const auto rows = summarize(reports);
  ASSERT_EQ(rows.size(), 3u);
  int runs = 0;
  for (const auto& row : rows) {
    runs += row.runs;
    EXPECT_EQ(row.runs, 10);
    EXPECT_EQ(row.success_by_budget.size(), 11u);
  }
  EXPECT_EQ(runs, 30);
  EXPECT_EQ(median({3, 1, 2}), 2.0);
  EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
  EXPECT_FALSE(median({}));
}
