#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stubforge/minilang/ast.hpp"

namespace stubforge::cli {

/// One benchmark entry: the CUT with its dependencies, a test with a `stub;` site, and the
/// optional broken and ground-truth stubs.
struct CorpusEntry {
  std::string id;
  std::string notes;
  std::string cut;  // class under test
  std::filesystem::path dir;

  std::string program_source;
  std::string test_source;
  std::optional<std::string> broken_stub;
  std::optional<std::string> truth_stub;

  std::shared_ptr<const ml::Program> program;
  std::shared_ptr<const ml::TestCase> test;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& entry, const std::string& file, const std::string& message)
      : std::runtime_error(entry + "/" + file + ": " + message) {}
};

class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string entry, std::string check)
      : std::runtime_error("entry " + entry + " violates: " + check),
        entry_(std::move(entry)),
        check_(std::move(check)) {}

  const std::string& entry() const { return entry_; }
  const std::string& check() const { return check_; }

 private:
  std::string entry_;
  std::string check_;
};

/// Loads and validates one entry directory: the ground truth (if any) must pass and the
/// empty stub must fail.
CorpusEntry load_entry(const std::filesystem::path& dir);

/// Every entry directory under `root`, sorted by directory name.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& root);

/// The entry whose id (or directory name) is `id`.
CorpusEntry load_corpus_entry(const std::filesystem::path& root, const std::string& id);

}  // namespace stubforge::cli
