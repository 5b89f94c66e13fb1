// One PASS/FAIL/SKIP line per acceptance criterion.
//   acceptance                 run every criterion
//   acceptance --criterion N   run one; exit 0 pass, 1 fail, 77 skip

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "support.hpp"
#include "verigen/pool.hpp"
#include "verigen/process.hpp"
#include "verigen/prompt.hpp"
#include "verigen/session_log.hpp"
#include "verigen/text.hpp"
#include "verigen/verify.hpp"
#include "verigen/workspace.hpp"

using namespace verigen;
namespace fs = std::filesystem;

namespace {

enum class Result { Pass, Fail, Skip };

struct Outcome {
  Result result;
  std::string detail;
};

Outcome pass(std::string d) { return {Result::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Result::Fail, std::move(d)}; }

const std::string kCorrect = vgtest::add_positive_reply("*result = x + y;");
const std::string kWrong = vgtest::add_positive_reply("*result = x - y;");
const std::string kBroken = vgtest::add_positive_reply("*result = x + ;");

std::vector<std::string> wrong_batches(std::size_t batches) {
  std::vector<std::string> v;
  for (std::size_t b = 0; b < batches; ++b) {
    v.push_back(kWrong);
    for (int i = 0; i < 9; ++i) v.push_back(kBroken);
  }
  return v;
}

std::string first_line(const std::string& s) {
  auto t = text::trim(s);
  return t.substr(0, t.find('\n'));
}

ProcessResult generate(const fs::path& problem, const fs::path& mock, const fs::path& out,
                       std::vector<std::string> extra = {}) {
  std::vector<std::string> args{"generate", "--problem", problem.string(), "--out", out.string(),
                                "--provider", "mock", "--mock-dir", mock.string(),
                                "--frama-c", vgtest::session_verifier(), "--seed", "7"};
  args.insert(args.end(), extra.begin(), extra.end());
  return vgtest::run_cli(args);
}

std::string real_frama_c() {
  if (const char* v = std::getenv("VERIGEN_FRAMA_C"); v && *v) return v;
  auto p = find_executable("frama-c");
  return p ? p->string() : "";
}

Outcome criterion_1() {
  auto fc = real_frama_c();
  if (fc.empty()) return fail("frama-c not found on PATH and VERIGEN_FRAMA_C unset");
  auto problem = vgtest::problem_dir("add_positive").string();
  auto t0 = std::chrono::steady_clock::now();
  auto good = vgtest::run_cli({"--frama-c", fc, "verify", "--problem", problem});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (good.exit_code != 0 || good.out.find("verdict=verified") == std::string::npos)
    return fail("ground truth not verified: " + first_line(good.out + good.err));
  if (secs >= 30) return fail("ground truth took " + std::to_string(secs) + " s");
  auto mutant = (vgtest::fixtures() / "candidates" / "add_positive_mutant.c").string();
  auto bad = vgtest::run_cli({"--frama-c", fc, "verify", "--problem", problem, "--file", mutant});
  if (bad.out.find("verdict=unproved") == std::string::npos)
    return fail("mutant not reported unproved: " + first_line(bad.out + bad.err));
  std::ostringstream d;
  d << "ground truth verified in " << secs << " s, mutant unproved (" << fc << ")";
  return pass(d.str());
}

Outcome criterion_2() {
  TempDir tmp;
  auto problem = vgtest::problem_dir("add_positive");
  auto mock = vgtest::fixtures() / "mock_gt";
  std::string logs[2];
  for (int i = 0; i < 2; ++i) {
    auto out = tmp.path() / ("run" + std::to_string(i));
    auto r = generate(problem, mock, out);
    if (r.exit_code != 0) return fail("run " + std::to_string(i) + " exit " + std::to_string(r.exit_code) + ": " + r.err);
    logs[i] = strip_volatile_jsonl(text::read_file(out / "session.jsonl"));
  }
  if (logs[0] != logs[1]) return fail("stripped session logs differ");
  auto lines = text::split_lines(logs[0]);
  return pass("stripped session.jsonl byte-identical (" + std::to_string(lines.size()) + " events)");
}

Outcome criterion_3() {
  struct Shape {
    std::string name;
    std::vector<std::string> replies;
    int exit_code;
    nlohmann::json iterations;
    std::size_t generated;
  };
  std::vector<Shape> shapes;
  auto s0 = wrong_batches(1);
  s0[3] = kCorrect;
  shapes.push_back({"solve@0", s0, 0, 0, 10});
  auto s1 = wrong_batches(2);
  s1[15] = kCorrect;
  shapes.push_back({"solve@1", s1, 0, 1, 20});
  auto s3 = wrong_batches(4);
  s3[39] = kCorrect;
  shapes.push_back({"solve@3", s3, 0, 3, 40});
  shapes.push_back({"unsolved@10", wrong_batches(11), 1, nullptr, 110});

  TempDir tmp;
  std::string detail;
  for (const auto& s : shapes) {
    auto mock = tmp.path() / ("mock_" + s.name);
    vgtest::write_replies(mock, s.replies);
    auto out = tmp.path() / ("out_" + s.name);
    auto r = generate(vgtest::problem_dir("add_positive"), mock, out);
    if (r.exit_code != s.exit_code)
      return fail(s.name + ": exit " + std::to_string(r.exit_code) + " " + r.err);
    auto summary = nlohmann::json::parse(text::read_file(out / "summary.json"));
    if (summary["iterations"] != s.iterations || summary["candidates_generated"] != s.generated)
      return fail(s.name + ": summary " + summary.dump());
    auto log = SessionLog::read_jsonl(out / "session.jsonl");
    auto outcome = log.events_of("outcome");
    if (outcome.size() != 1 || outcome[0]["candidates_generated"] != s.generated)
      return fail(s.name + ": outcome event mismatch");
    if (log.events_of("prompt_built").size() != s.generated / 10)
      return fail(s.name + ": wrong number of model invocations");
    if (s.iterations.is_null() && outcome[0].contains("failure_reason"))
      return fail(s.name + ": ended early: " + outcome[0]["failure_reason"].get<std::string>());
    detail += (detail.empty() ? "" : ", ") + s.name + "=" + std::to_string(s.generated);
  }
  return pass(detail + " candidates");
}

Candidate pool_candidate(std::size_t i, std::size_t passed, std::size_t total) {
  Candidate c;
  c.iteration = i / 10;
  c.sample_index = i % 10;
  c.id = Candidate::make_id(c.iteration, c.sample_index);
  c.compile = CompileReport{true, "", {}};
  c.verify = VerifyReport{};
  c.verify->verdict = Verdict::Unproved;
  TestReport r;
  for (std::size_t k = 0; k < total; ++k)
    r.results.push_back({k, k < passed, k < passed ? TestStatus::Passed : TestStatus::WrongOutput, {}});
  r.finalize();
  c.tests = r;
  return c;
}

Outcome criterion_4() {
  std::mt19937_64 rng(4);
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    Pool p(rng());
    std::size_t n = 1 + rng() % 30, total = 1 + rng() % 12;
    double best = 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto c = pool_candidate(i, rng() % (total + 1), total);
      best = std::max(best, c.pass_rate());
      p.add(c);
    }
    if (p.select_best().pass_rate() != best) return fail("non-maximal pick in trial " + std::to_string(t));
  }
  Pool tie(7);
  for (std::size_t i = 0; i < 10; ++i) tie.add(pool_candidate(i, 1, 2));
  const int draws = 10000;
  std::map<std::string, int> freq;
  for (int d = 0; d < draws; ++d) ++freq[tie.select_best().id];
  double mean = draws / 10.0, sigma = std::sqrt(draws * 0.1 * 0.9), worst = 0;
  for (std::size_t i = 0; i < 10; ++i) {
    double dev = std::abs(freq[Candidate::make_id(0, i)] - mean) / sigma;
    worst = std::max(worst, dev);
  }
  if (freq.size() != 10 || worst > 3) return fail("tie frequencies off by " + std::to_string(worst) + " sigma");
  std::ostringstream d;
  d << trials << " random pools maximal; 10-way tie max deviation " << worst << " sigma over " << draws << " draws";
  return pass(d.str());
}

std::size_t occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

Outcome criterion_5() {
  auto b = load_bundle(vgtest::problem_dir("add_positive"));
  auto init = build_initialization_prompt(b, {}).render();
  for (const char* part : {"### A.", "### B.", "### C.", "### E."})
    if (occurrences(init, part) != 1) return fail(std::string("initialization prompt lacks ") + part);
  if (init.find("### D.") != std::string::npos) return fail("initialization prompt has feedback");

  auto goldens = vgtest::golden_prompts();
  for (const auto& [name, actual] : goldens) {
    auto path = vgtest::fixtures() / "golden" / name;
    if (!fs::exists(path)) return fail("missing golden " + name);
    if (text::read_file(path) != actual) return fail("golden mismatch: " + name);
    if (name.rfind("improve_", 0) == 0) {
      if (occurrences(actual, "### D.") != 1 || occurrences(actual, "```c\n") != 2)
        return fail(name + ": expected exactly one embedded candidate besides the example");
    }
    if (name == "improve_verify_nl_only.txt" &&
        actual.find(std::string(kDoesNotVerifyMessage)) == std::string::npos)
      return fail("nl_only feedback is not the fixed message");
    if (name == "improve_verify_nl_only.txt" && actual.find("typed_add_positive") != std::string::npos)
      return fail("nl_only feedback leaks verifier goals");
  }
  return pass(std::to_string(goldens.size()) + " golden prompts equal; parts A,B,C,E present; one candidate per improvement");
}

Outcome criterion_6() {
  struct Expected {
    std::string name;
    std::size_t total, proved;
    std::vector<std::string> unproved;
  };
  std::vector<Expected> cases = {
      {"all_proved", 6, 6, {}},
      {"partial", 6, 4, {"typed_add_positive_ensures", "typed_add_positive_assert_rte_signed_overflow"}},
      {"timeout", 9, 8, {"typed_calculateMinimumBrainsForStrategy_odd_ensures"}},
      {"crash", 0, 0, {}},
      {"empty", 0, 0, {}},
      {"garbage", 0, 0, {}},
      {"old_style", 3, 2, {"typed_add_positive_assert_rte_signed_overflow"}},
      {"syntax_error", 0, 0, {}},
  };
  for (const auto& e : cases) {
    auto p = parse_verifier_output(text::read_file(vgtest::fixtures() / "frama_c" / (e.name + ".txt")));
    std::vector<std::string> names;
    for (const auto& g : p.unproved) names.push_back(g.name);
    if (p.goals_total != e.total || p.goals_proved != e.proved || names != e.unproved)
      return fail(e.name + " parsed to " + std::to_string(p.goals_proved) + "/" + std::to_string(p.goals_total));
    bool should_verify = e.name == "all_proved";
    if ((decide_verdict(p, true) == Verdict::Verified) != should_verify) return fail(e.name + ": wrong verdict");
  }
  std::mt19937_64 rng(6);
  const int fuzz = 10000;
  for (int i = 0; i < fuzz; ++i) {
    std::string s(rng() % 1024, '\0');
    for (auto& c : s) c = static_cast<char>(rng() & 0xff);
    if (decide_verdict(parse_verifier_output(s), true) == Verdict::Verified)
      return fail("random input " + std::to_string(i) + " verified");
  }
  return pass(std::to_string(cases.size()) + " transcripts matched; " + std::to_string(fuzz) +
              " random inputs never verified");
}

Outcome criterion_7() {
  TempDir tmp;
  std::string detail;
  for (const char* name : {"brains", "max_of_three", "divmod", "abs_early_return"}) {
    try {
      auto eq = vgtest::check_transform_fixture(vgtest::fixtures() / "transform" / name, tmp.path() / name);
      if (!eq.ok) return fail(std::string(name) + ": " + eq.detail);
      detail += (detail.empty() ? "" : ", ") + std::string(name) + " " + eq.detail;
    } catch (const std::exception& e) {
      return fail(std::string(name) + ": " + e.what());
    }
  }
  return pass(detail);
}

std::map<std::string, std::string> stats_of(const std::string& problem) {
  auto r = vgtest::run_cli({"stats", "--problem", vgtest::problem_dir(problem).string()});
  std::map<std::string, std::string> kv;
  for (const auto& line : text::split_lines(r.out)) {
    auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

Outcome criterion_8() {
  auto a = stats_of("add_positive");
  if (a["formal_clauses"] != "4") return fail("add_positive formal_clauses=" + a["formal_clauses"]);
  auto m = stats_of("bounded_distance");
  if (m["formal_loc"] != "25" || m["n_tests"] != "34")
    return fail("median fixture formal_loc=" + m["formal_loc"] + " n_tests=" + m["n_tests"]);
  return pass("formal_clauses=4; median fixture formal_loc=25 n_tests=34");
}

// Runs every kind of session the suite drives, then re-verifies each emitted
// solution.c with a separate `verify` invocation.
Outcome criterion_9() {
  TempDir tmp;
  auto outs = tmp.path() / "outs";
  auto problem = vgtest::problem_dir("add_positive");
  int sessions = 0;

  auto run = [&](const std::string& tag, const fs::path& prob, const fs::path& mock,
                 std::vector<std::string> extra = {}) {
    generate(prob, mock, outs / tag, std::move(extra));
    ++sessions;
  };
  run("gt", problem, vgtest::fixtures() / "mock_gt");
  run("allwrong", problem, vgtest::fixtures() / "mock_allwrong", {"--iterations", "1"});
  for (auto mode : {"nl_only", "formal_only"})
    run(std::string("gt_") + mode, problem, vgtest::fixtures() / "mock_gt", {"--spec-mode", mode});

  // passes every test but must not be accepted
  auto overflow = wrong_batches(1);
  overflow[0] = vgtest::add_positive_reply("long s = (long)x + (long)y; *result = (int)s;");
  vgtest::write_replies(tmp.path() / "mock_overflow", overflow);
  run("overflow", problem, tmp.path() / "mock_overflow", {"--iterations", "0"});

  auto s3 = wrong_batches(4);
  s3[39] = kCorrect;
  vgtest::write_replies(tmp.path() / "mock_s3", s3);
  run("s3", problem, tmp.path() / "mock_s3");

  // bench over every fixture bundle, each answered with its reference body
  auto bench_mock = tmp.path() / "mock_bench";
  for (const auto& e : fs::directory_iterator(vgtest::fixtures() / "problems")) {
    auto truth = text::read_file(e.path() / "truth.c");
    vgtest::write_replies(bench_mock / e.path().filename(), {vgtest::fenced_reply(truth)});
  }
  vgtest::run_cli({"bench", "--problems-dir", (vgtest::fixtures() / "problems").string(), "--out",
                   (outs / "bench").string(), "--provider", "mock", "--mock-dir", bench_mock.string(),
                   "--frama-c", vgtest::session_verifier(), "--candidates", "1", "--iterations", "0"});
  ++sessions;

  int solved = 0, checked = 0;
  for (const auto& e : fs::recursive_directory_iterator(outs)) {
    if (e.path().filename() != "summary.json") continue;
    auto summary = nlohmann::json::parse(text::read_file(e.path()));
    auto dir = e.path().parent_path();
    bool has_solution = fs::exists(dir / "solution.c");
    if ((summary["status"] == "solved") != has_solution)
      return fail(dir.string() + ": status and solution.c disagree");
    if (!has_solution) continue;
    ++solved;
    // the problem bundle is named by summary["problem"]
    auto prob = vgtest::problem_dir(summary["problem"].get<std::string>());
    auto r = vgtest::run_cli({"--frama-c", vgtest::session_verifier(), "verify", "--problem", prob.string(),
                              "--file", (dir / "solution.c").string()});
    ++checked;
    if (r.exit_code != 0) return fail(dir.string() + "/solution.c fails re-verification: " + first_line(r.out));
  }
  if (fs::exists(outs / "overflow" / "solution.c")) return fail("overflow candidate accepted");
  if (solved == 0) return fail("no solved sessions to check");
  std::ostringstream d;
  d << sessions << " session runs, " << solved << " solved, " << checked << " re-verified with "
    << (vgtest::using_fake_verifier() ? "fake_frama_c" : vgtest::session_verifier());
  return pass(d.str());
}

Outcome criterion_10() {
  const char* gate = std::getenv("VERIGEN_LIVE_SMOKE");
  if (!gate || std::string(gate) != "1") return {Result::Skip, "set VERIGEN_LIVE_SMOKE=1 with LLM_API_KEY to run"};
  TempDir tmp;
  auto r = vgtest::run_cli({"generate", "--problem", vgtest::problem_dir("add_positive").string(), "--out",
                            (tmp.path() / "out").string(), "--provider", "http", "--frama-c",
                            vgtest::session_verifier(), "--iterations", "0", "--candidates", "2"});
  if (r.exit_code != 0 && r.exit_code != 1) return fail("generate exit " + std::to_string(r.exit_code) + ": " + r.err);
  auto lines = text::split_lines(text::read_file(tmp.path() / "out" / "session.jsonl"));
  std::size_t n = 0;
  for (const auto& line : lines) {
    if (text::trim(line).empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("event")) return fail("malformed log line");
    ++n;
  }
  if (n < 3) return fail("session log too short");
  return pass("live session completed, " + std::to_string(n) + " well-formed events");
}

const std::map<int, std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::map<int, std::pair<std::string, std::function<Outcome()>>> c = {
      {1, {"ground truth verification", criterion_1}},
      {2, {"deterministic replay", criterion_2}},
      {3, {"iteration accounting", criterion_3}},
      {4, {"selection policy", criterion_4}},
      {5, {"prompt snapshots", criterion_5}},
      {6, {"verifier output parser", criterion_6}},
      {7, {"transformer equivalence", criterion_7}},
      {8, {"stats", criterion_8}},
      {9, {"fail closed", criterion_9}},
      {10, {"live smoke", criterion_10}},
  };
  return c;
}

Result run_one(int n) {
  const auto& [name, fn] = criteria().at(n);
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = fail(std::string("exception: ") + e.what());
  }
  const char* tag = o.result == Result::Pass ? "PASS" : o.result == Result::Fail ? "FAIL" : "SKIP";
  std::cout << tag << " criterion " << n << " (" << name << "): " << o.detail << std::endl;
  return o.result;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.size() == 2 && args[0] == "--criterion") {
    int n = std::atoi(args[1].c_str());
    if (!criteria().count(n)) {
      std::cerr << "unknown criterion " << args[1] << "\n";
      return 64;
    }
    auto r = run_one(n);
    return r == Result::Pass ? 0 : r == Result::Skip ? 77 : 1;
  }
  if (!args.empty()) {
    std::cerr << "usage: acceptance [--criterion N]\n";
    return 64;
  }
  bool failed = false;
  for (const auto& [n, _] : criteria()) failed |= run_one(n) == Result::Fail;
  return failed ? 1 : 0;
}
