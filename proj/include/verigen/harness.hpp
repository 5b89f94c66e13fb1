#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "verigen/bundle.hpp"
#include "verigen/compile.hpp"
#include "verigen/workspace.hpp"

namespace verigen {

struct TestConfig {
  std::string cc = "cc";
  std::chrono::milliseconds per_test_timeout{2000};
  std::chrono::milliseconds build_timeout{60000};
  double rel_eps = 1e-9;
};

enum class TestStatus { Passed, WrongOutput, BadOutput, Crashed, TimedOut };
std::string_view to_string(TestStatus s);

struct TestCaseResult {
  std::size_t case_index = 0;
  bool passed = false;
  TestStatus status = TestStatus::WrongOutput;
  std::vector<Scalar> actual;
};

struct TestReport {
  std::vector<TestCaseResult> results;
  double pass_rate = 0.0;
  std::size_t ran = 0;

  std::size_t passed_count() const;
  /// Recomputes ran and pass_rate from results.
  void finalize();
};

/// Report for a candidate whose tests could not run at all (pass rate 0).
TestReport failed_test_report(std::size_t n_tests);

/// C source of a `main` that runs one test case: declares the inputs, calls
/// the function, and prints each output on its own line with enough digits
/// to round-trip. Throws UnsupportedType when a literal does not fit its
/// parameter type, and MalformedTest on an arity mismatch.
std::string generate_harness(const Signature& sig, const TestCase& tc);

/// Like generate_harness but for every case at once; the case to run is
/// selected by the 1-based index in argv[1].
std::string generate_suite_harness(const Signature& sig, const std::vector<TestCase>& tests);

/// Builds the candidate with the suite harness, then runs each case in its
/// own process under the per-test limit. Crashes and timeouts count as
/// failures. Throws HarnessBuildError if the harness cannot be built and
/// CompilerMissing if there is no compiler.
TestReport run_tests(std::string_view src, const ProblemBundle& b, const Workspace& ws,
                     const TestConfig& cfg = {});

}  // namespace verigen
