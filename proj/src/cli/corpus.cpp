#include "stubforge/cli/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "stubforge/minilang/interpreter.hpp"
#include "stubforge/minilang/minilang.hpp"

namespace stubforge::cli {

namespace fs = std::filesystem;

namespace {

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

CorpusEntry load_entry(const fs::path& dir) {
  CorpusEntry e;
  e.dir = dir;
  e.id = dir.filename().string();

  if (auto meta = read_file(dir / "meta")) {
    std::istringstream lines(*meta);
    std::string line;
    while (std::getline(lines, line)) {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = trim(line.substr(0, colon));
      const std::string value = trim(line.substr(colon + 1));
      if (key == "id") e.id = value;
      else if (key == "notes") e.notes = value;
      else if (key == "cut") e.cut = value;
    }
  }

  auto program_src = read_file(dir / "program.ml0");
  if (!program_src) throw ParseError(e.id, "program.ml0", "missing");
  auto test_src = read_file(dir / "test.ml0");
  if (!test_src) throw ParseError(e.id, "test.ml0", "missing");
  e.program_source = *program_src;
  e.test_source = *test_src;
  e.broken_stub = read_file(dir / "broken.stub");
  e.truth_stub = read_file(dir / "truth.stub");

  std::shared_ptr<ml::Program> program;
  try {
    program = std::make_shared<ml::Program>(ml::parse(e.program_source));
  } catch (const ml::LangError& err) {
    throw ParseError(e.id, "program.ml0", err.what());
  }
  std::shared_ptr<ml::TestCase> test;
  try {
    test = std::make_shared<ml::TestCase>(ml::parse_test(*program, e.test_source));
  } catch (const ml::LangError& err) {
    throw ParseError(e.id, "test.ml0", err.what());
  }
  e.program = program;
  e.test = test;

  if (e.cut.empty() && program->classes.size() == 1) e.cut = program->classes.front().name;
  if (!e.cut.empty() && program->find_class(e.cut) < 0)
    throw InvariantViolation(e.id, "meta names an undeclared class under test `" + e.cut + "`");

  if (e.truth_stub) {
    ml::ExecutionReport rep;
    try {
      rep = ml::execute(*program, *test, *e.truth_stub);
    } catch (const ml::LangError& err) {
      throw ParseError(e.id, "truth.stub", err.what());
    }
    if (!rep.passed()) throw InvariantViolation(e.id, "the ground-truth stub does not pass the test");
  }
  if (ml::execute(*program, *test, std::string_view{}).passed())
    throw InvariantViolation(e.id, "the test passes without any stub code");
  return e;
}

std::vector<CorpusEntry> load_corpus(const fs::path& root) {
  if (!fs::is_directory(root)) throw std::runtime_error("corpus directory not found: " + root.string());
  std::vector<fs::path> dirs;
  for (const auto& d : fs::directory_iterator(root))
    if (d.is_directory() && fs::exists(d.path() / "test.ml0")) dirs.push_back(d.path());
  std::sort(dirs.begin(), dirs.end());
  std::vector<CorpusEntry> out;
  for (const auto& d : dirs) out.push_back(load_entry(d));
  return out;
}

CorpusEntry load_corpus_entry(const fs::path& root, const std::string& id) {
  if (fs::exists(root / id / "test.ml0")) {
    CorpusEntry e = load_entry(root / id);
    if (e.id == id || root / id == e.dir) return e;
  }
  for (auto& e : load_corpus(root))
    if (e.id == id) return e;
  throw std::runtime_error("no corpus entry `" + id + "` under " + root.string());
}

}  // namespace stubforge::cli
