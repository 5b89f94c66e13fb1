#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "verigen/scalar.hpp"
#include "verigen/signature.hpp"

namespace verigen {

/// One unit test: values for the non-pointer parameters and the values the
/// pointer parameters must hold afterwards, both in signature order.
struct TestCase {
  std::vector<Scalar> inputs;
  std::vector<Scalar> expected;

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

/// Everything needed to synthesize one function. Immutable once loaded.
struct ProblemBundle {
  std::string id;
  std::string nl_spec;
  std::string formal_spec;
  std::string signature;  // raw text of signature.h
  std::vector<TestCase> tests;
  std::optional<std::string> ground_truth;

  friend bool operator==(const ProblemBundle&, const ProblemBundle&) = default;
};

struct Violation {
  std::string code;     // stable identifier, e.g. "non-void-return"
  std::string message;  // human-readable detail
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view code) const;
};

struct ValidationOptions {
  /// Tests must be non-empty when the improvement loop will rank candidates.
  bool require_tests = true;
};

/// Checks every bundle invariant and lists each violation. Never throws.
ValidationReport validate_bundle(const ProblemBundle& b, const ValidationOptions& opts = {});

/// Reads a bundle directory:
///
///   spec.acsl       formal specification (ACSL block)
///   spec.md         natural-language specification
///   signature.h     one `void` declaration
///   tests/<k>.in    whitespace-separated input literals
///   tests/<k>.out   whitespace-separated expected outputs
///   truth.c         optional reference solution
///
/// Tests are ordered by numeric k when every stem is numeric, else by name.
/// The bundle id is the directory name.
///
/// Throws MissingFile, MalformedTest, SignatureParseError, or InvalidBundle
/// when a structural invariant other than non-empty tests is violated.
ProblemBundle load_bundle(const std::filesystem::path& dir);

/// Writes `b` in the layout read by load_bundle. Tests are numbered from 1.
void write_bundle(const ProblemBundle& b, const std::filesystem::path& dir);

/// Token counter used for the natural-language size metric.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::string name() const = 0;
  virtual std::size_t count(std::string_view text) const = 0;
};

/// Counts maximal runs of non-whitespace characters.
class WhitespaceTokenizer final : public Tokenizer {
 public:
  std::string name() const override { return "whitespace"; }
  std::size_t count(std::string_view text) const override;
};

struct BundleStats {
  std::size_t nl_tokens = 0;
  std::size_t formal_loc = 0;
  std::size_t formal_clauses = 0;
  std::optional<std::size_t> truth_loc;
  std::size_t n_tests = 0;
  std::string tokenizer_name;

  friend bool operator==(const BundleStats&, const BundleStats&) = default;
};

/// Number of ACSL clause keywords: requires, ensures, assigns, behavior,
/// assumes, decreases, complete behaviors, disjoint behaviors.
std::size_t count_acsl_clauses(std::string_view formal_spec);

/// Non-blank lines.
std::size_t count_nonblank_lines(std::string_view text);

BundleStats bundle_stats(const ProblemBundle& b, const Tokenizer& tokenizer);

}  // namespace verigen
