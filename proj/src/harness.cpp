#include "verigen/harness.hpp"

#include <charconv>
#include <limits>

#include "verigen/error.hpp"
#include "verigen/process.hpp"
#include "verigen/text.hpp"

namespace verigen {

namespace fs = std::filesystem;

std::string_view to_string(TestStatus s) {
  switch (s) {
    case TestStatus::Passed: return "passed";
    case TestStatus::WrongOutput: return "wrong_output";
    case TestStatus::BadOutput: return "bad_output";
    case TestStatus::Crashed: return "crashed";
    case TestStatus::TimedOut: return "timed_out";
  }
  return "wrong_output";
}

std::size_t TestReport::passed_count() const {
  std::size_t n = 0;
  for (const auto& r : results) n += r.passed ? 1 : 0;
  return n;
}

void TestReport::finalize() {
  ran = results.size();
  pass_rate = ran == 0 ? 0.0 : static_cast<double>(passed_count()) / static_cast<double>(ran);
}

TestReport failed_test_report(std::size_t n_tests) {
  TestReport r;
  for (std::size_t i = 0; i < n_tests; ++i)
    r.results.push_back({i, false, TestStatus::WrongOutput, {}});
  r.finalize();
  return r;
}

namespace {

std::string_view printf_format(BaseType t) {
  switch (t) {
    case BaseType::Int: return "%d";
    case BaseType::UInt: return "%u";
    case BaseType::Long: return "%ld";
    case BaseType::ULong: return "%lu";
    case BaseType::LongLong: return "%lld";
    case BaseType::ULongLong: return "%llu";
    case BaseType::Float: return "%.9g";
    case BaseType::Double: return "%.17g";
  }
  return "%d";
}

std::string c_literal(const Param& p, const Scalar& v) {
  auto type = std::string(c_type_name(p.base_type));
  if (is_floating(p.base_type)) {
    double d = v.as_double();
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
    std::string lit(buf, end);
    if (lit.find_first_of(".eE") == std::string::npos) lit += ".0";
    return "(" + type + ")" + lit;
  }
  if (!v.is_integer())
    throw UnsupportedType("parameter '" + p.name + "' has integer type " + type +
                          " but the test supplies " + v.to_string());
  auto i = v.as_integer();
  bool is_unsigned = p.base_type == BaseType::UInt || p.base_type == BaseType::ULong ||
                     p.base_type == BaseType::ULongLong;
  if (is_unsigned && i < 0)
    throw UnsupportedType("negative literal " + v.to_string() + " for unsigned parameter '" +
                          p.name + "'");
  if (p.base_type == BaseType::Int &&
      (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()))
    throw UnsupportedType("literal " + v.to_string() + " does not fit int parameter '" +
                          p.name + "'");
  if (p.base_type == BaseType::UInt && i > std::numeric_limits<unsigned>::max())
    throw UnsupportedType("literal " + v.to_string() + " does not fit unsigned int parameter '" +
                          p.name + "'");
  if (i == std::numeric_limits<std::int64_t>::min())
    return "(" + type + ")(-9223372036854775807LL - 1)";
  return "(" + type + ")" + std::to_string(i) + "LL";
}

void check_arity(const Signature& sig, const TestCase& tc, std::size_t index) {
  if (tc.inputs.size() != sig.inputs().size() || tc.expected.size() != sig.outputs().size())
    throw MalformedTest("test " + std::to_string(index + 1) + " arity does not match " +
                        sig.name);
}

// Body of one case: declarations, call, prints. Indented by `indent`.
std::string case_body(const Signature& sig, const TestCase& tc, const std::string& indent) {
  std::string s;
  std::size_t in_i = 0;
  for (const auto& p : sig.params) {
    auto type = std::string(c_type_name(p.base_type));
    if (p.is_pointer) s += indent + type + " out_" + p.name + " = 0;\n";
    else s += indent + type + " in_" + p.name + " = " + c_literal(p, tc.inputs[in_i++]) + ";\n";
  }
  s += indent + sig.name + "(";
  for (std::size_t i = 0; i < sig.params.size(); ++i) {
    const auto& p = sig.params[i];
    s += (i ? ", " : "") + (p.is_pointer ? "&out_" + p.name : "in_" + p.name);
  }
  s += ");\n";
  for (const auto& p : sig.outputs()) {
    std::string arg = "out_" + p.name;
    if (p.base_type == BaseType::Float) arg = "(double)" + arg;
    s += indent + "printf(\"" + std::string(printf_format(p.base_type)) + "\\n\", " + arg + ");\n";
  }
  return s;
}

}  // namespace

std::string generate_harness(const Signature& sig, const TestCase& tc) {
  check_arity(sig, tc, 0);
  std::string s = "#include <stdio.h>\n\n" + sig.declaration() + "\n\nint main(void)\n{\n";
  s += case_body(sig, tc, "    ");
  s += "    return 0;\n}\n";
  return s;
}

std::string generate_suite_harness(const Signature& sig, const std::vector<TestCase>& tests) {
  std::string s = "#include <stdio.h>\n#include <stdlib.h>\n\n" + sig.declaration() + "\n\n";
  for (std::size_t i = 0; i < tests.size(); ++i) {
    check_arity(sig, tests[i], i);
    s += "static void run_case_" + std::to_string(i + 1) + "(void)\n{\n";
    s += case_body(sig, tests[i], "    ");
    s += "}\n\n";
  }
  s += "int main(int argc, char **argv)\n{\n    int which = argc > 1 ? atoi(argv[1]) : 0;\n"
       "    switch (which) {\n";
  for (std::size_t i = 0; i < tests.size(); ++i) {
    auto k = std::to_string(i + 1);
    s += "    case " + k + ": run_case_" + k + "(); break;\n";
  }
  s += "    default: return 2;\n    }\n    return 0;\n}\n";
  return s;
}

TestReport run_tests(std::string_view src, const ProblemBundle& b, const Workspace& ws,
                     const TestConfig& cfg) {
  if (!find_executable(cfg.cc)) throw CompilerMissing("C compiler not found: " + cfg.cc);
  auto sig = parse_signature(b.signature);
  TestReport report;
  if (b.tests.empty()) {
    report.finalize();
    return report;
  }

  text::write_file(ws.file("test_candidate.c"), prepare_candidate_source(src, b));
  text::write_file(ws.file("harness.c"), generate_suite_harness(sig, b.tests));

  auto build = [&](const std::vector<std::string>& argv) {
    ProcessResult r;
    try {
      r = run_process(argv, {.cwd = ws.dir(), .stdin_data = {}, .timeout = cfg.build_timeout});
    } catch (const EnvironmentError& e) {
      throw CompilerMissing(e.what());
    }
    if (!r.ok()) throw HarnessBuildError("harness build failed:\n" + r.out + r.err);
  };
  // A candidate that ships its own main must not clash with the harness.
  build({cfg.cc, "-std=c11", "-Dmain=verigen_candidate_main", "-c", "test_candidate.c", "-o",
         "test_candidate.o"});
  build({cfg.cc, "-std=c11", "harness.c", "test_candidate.o", "-o", "harness", "-lm"});

  auto outputs = sig.outputs();
  for (std::size_t i = 0; i < b.tests.size(); ++i) {
    TestCaseResult res{i, false, TestStatus::WrongOutput, {}};
    auto r = run_process({(ws.dir() / "harness").string(), std::to_string(i + 1)},
                         {.cwd = ws.dir(), .stdin_data = {}, .timeout = cfg.per_test_timeout});
    if (r.timed_out) {
      res.status = TestStatus::TimedOut;
    } else if (r.signaled || r.exit_code != 0) {
      res.status = TestStatus::Crashed;
    } else {
      bool parsed = true;
      for (const auto& tok : text::split_whitespace(r.out)) {
        auto v = Scalar::parse(tok);
        if (!v) {
          parsed = false;
          break;
        }
        res.actual.push_back(*v);
      }
      if (!parsed || res.actual.size() != outputs.size()) {
        res.status = TestStatus::BadOutput;
      } else {
        bool all = true;
        for (std::size_t k = 0; k < outputs.size(); ++k)
          all = all && scalars_match(res.actual[k], b.tests[i].expected[k], cfg.rel_eps);
        res.passed = all;
        res.status = all ? TestStatus::Passed : TestStatus::WrongOutput;
      }
    }
    report.results.push_back(std::move(res));
  }
  report.finalize();
  return report;
}

}  // namespace verigen
