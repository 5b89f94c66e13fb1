#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli.hpp"
#include "verigen/bundle.hpp"
#include "verigen/engine.hpp"
#include "verigen/error.hpp"
#include "verigen/harness.hpp"
#include "verigen/text.hpp"
#include "verigen/transform.hpp"
#include "verigen/verify.hpp"
#include "verigen/workspace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace verigen::cli {

namespace {

struct Options {
  // shared
  std::string spec_mode = "both";
  std::size_t candidates = 10;
  std::size_t iterations = 10;
  double temperature = 1.0;
  std::string model = "gpt-3.5-turbo";
  std::size_t max_tokens = 2048;
  std::string provider = "mock";
  std::string mock_dir;
  std::string api_base;
  std::uint64_t seed = 0;
  std::string solvers = "alt-ergo,z3,cvc4";
  int wp_timeout = 10;
  int candidate_timeout = 120;
  double test_timeout = 2.0;
  std::string cc = "cc";
  std::string frama_c = "frama-c";
  std::string prompts_dir;
  bool no_one_shot = false;
  bool allow_loops = false;
  std::size_t verify_jobs = 0;
  // per command
  std::string problem;
  std::string problems_dir;
  std::string file;
  std::string out;
  std::size_t jobs = 0;
  bool sweep = false;
  bool verbose = false;
  std::string input;
  std::string name;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = text::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json options_json(const Options& o) {
  // Output locations are left out so that runs into different directories
  // produce the same log.
  return {{"spec_mode", o.spec_mode},     {"candidates", o.candidates},
          {"iterations", o.iterations},   {"temperature", o.temperature},
          {"model", o.model},             {"max_tokens", o.max_tokens},
          {"provider", o.provider},       {"mock_dir", o.mock_dir},
          {"api_base", o.api_base},       {"seed", o.seed},
          {"solvers", o.solvers},         {"wp_timeout", o.wp_timeout},
          {"candidate_timeout", o.candidate_timeout},
          {"test_timeout", o.test_timeout}, {"cc", o.cc},
          {"frama_c", o.frama_c},         {"prompts_dir", o.prompts_dir},
          {"one_shot", !o.no_one_shot},   {"no_loops", !o.allow_loops}};
}

SessionConfig session_config(const Options& o, SpecMode mode) {
  SessionConfig cfg;
  cfg.sampling.n = o.candidates;
  cfg.sampling.temperature = o.temperature;
  cfg.sampling.model = o.model;
  cfg.sampling.max_tokens = o.max_tokens;
  cfg.prompt.spec_mode = mode;
  cfg.prompt.one_shot = !o.no_one_shot;
  if (o.allow_loops) cfg.prompt.extra_constraints.clear();
  if (!o.prompts_dir.empty()) cfg.templates = PromptTemplates::load(o.prompts_dir);
  cfg.max_iterations = o.iterations;
  cfg.compile.cc = o.cc;
  cfg.tests.cc = o.cc;
  cfg.tests.per_test_timeout = std::chrono::milliseconds(static_cast<long>(o.test_timeout * 1000));
  cfg.verify.frama_c = o.frama_c;
  cfg.verify.solvers = split_list(o.solvers);
  cfg.verify.wp_timeout = std::chrono::seconds(o.wp_timeout);
  cfg.verify.candidate_timeout = std::chrono::seconds(o.candidate_timeout);
  cfg.rng_seed = o.seed;
  cfg.annotations = options_json(o);
  cfg.annotations["spec_mode"] = to_string(mode);
  return cfg;
}

SpecMode spec_mode_of(const Options& o) {
  auto m = parse_spec_mode(o.spec_mode);
  if (!m) throw UsageError("unknown spec mode: " + o.spec_mode);
  return *m;
}

// Reply directory for one session: <mock>/<mode>/<id>, then <mock>/<id>, then <mock>.
fs::path mock_dir_for(const Options& o, std::string_view mode, const std::string& id) {
  fs::path base = o.mock_dir;
  for (const auto& p : {base / std::string(mode) / id, base / id})
    if (fs::is_directory(p)) return p;
  return base;
}

std::unique_ptr<Provider> make_provider(const Options& o, const fs::path& mock_dir) {
  if (o.provider == "mock") {
    if (o.mock_dir.empty()) throw UsageError("--provider mock needs --mock-dir");
    if (!fs::is_directory(mock_dir)) throw UsageError("mock directory not found: " + mock_dir.string());
    return std::make_unique<MockProvider>(mock_dir);
  }
  auto cfg = HttpProviderConfig::from_env();
  if (!o.api_base.empty()) cfg.api_base = o.api_base;
  if (cfg.api_key.empty()) throw EnvironmentError("LLM_API_KEY is not set");
  return std::make_unique<HttpProvider>(cfg);
}

ProblemBundle load_problem(const std::string& dir) {
  if (dir.empty()) throw UsageError("--problem is required");
  if (!fs::is_directory(dir)) throw UsageError("problem directory not found: " + dir);
  return load_bundle(dir);
}

fs::path default_out(const Options& o, const std::string& id) {
  return o.out.empty() ? fs::path("verigen-out") / id : fs::path(o.out);
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

int cmd_generate(const Options& o) {
  auto mode = spec_mode_of(o);
  auto bundle = load_problem(o.problem);
  auto provider = make_provider(o, mock_dir_for(o, to_string(mode), bundle.id));
  auto cfg = session_config(o, mode);
  cfg.provider = provider.get();
  auto out = default_out(o, bundle.id);
  cfg.work_dir = fs::absolute(out / "work");

  SessionLog log;
  auto outcome = run_session(bundle, cfg, log);
  write_outputs(outcome, log, bundle, out);

  const auto& t = outcome.totals;
  if (outcome.status == SessionStatus::Solved) {
    std::cout << bundle.id << ": solved at iteration " << outcome.iterations_used << " by "
              << outcome.solution->id << " (" << t.candidates_generated
              << " candidates generated)\n"
              << "solution: " << (out / "solution.c").string() << "\n";
    return kExitOk;
  }
  std::cout << bundle.id << ": unsolved after " << outcome.iterations_used << " improvement iterations ("
            << t.candidates_generated << " candidates generated)\n";
  if (outcome.failure_reason) std::cout << "reason: " << *outcome.failure_reason << "\n";
  if (outcome.solution) std::cout << "last candidate: " << (out / "last_candidate.c").string() << "\n";
  return kExitFail;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchRow {
  std::string problem;
  std::string status;  // solved, unsolved, error
  std::optional<std::size_t> ss_iter;
  std::optional<std::size_t> ss_loc;
  double verify_time_s = 0;
  double total_time_s = 0;
  std::size_t candidates = 0;
  std::string note;
  bool environment_error = false;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << s;
  return os.str();
}

std::string opt_str(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }

void write_bench_csv(const fs::path& p, const std::vector<BenchRow>& rows) {
  std::string s = "problem,solved,ss_iter,ss_loc,verify_time_s,total_time_s,candidates_generated,note\n";
  for (const auto& r : rows) {
    s += csv_field(r.problem) + "," + (r.status == "solved" ? "yes" : r.status == "unsolved" ? "no" : "error") +
         "," + (r.ss_iter ? std::to_string(*r.ss_iter) : "") + "," +
         (r.ss_loc ? std::to_string(*r.ss_loc) : "") + "," + fmt_seconds(r.verify_time_s) + "," +
         fmt_seconds(r.total_time_s) + "," + std::to_string(r.candidates) + "," + csv_field(r.note) +
         "\n";
  }
  text::write_file(p, s);
}

void print_bench_table(const std::vector<BenchRow>& rows, std::string_view mode) {
  std::size_t w = 7;
  for (const auto& r : rows) w = std::max(w, r.problem.size());
  std::cout << "spec mode: " << mode << "\n";
  std::cout << std::left << std::setw(static_cast<int>(w)) << "problem"
            << "  solved  ss_iter  ss_loc  verify_s  total_s\n";
  std::size_t solved = 0;
  for (const auto& r : rows) {
    if (r.status == "solved") ++solved;
    std::cout << std::left << std::setw(static_cast<int>(w)) << r.problem << "  " << std::setw(6)
              << (r.status == "solved" ? "yes" : r.status == "unsolved" ? "no" : "error") << "  "
              << std::setw(7) << opt_str(r.ss_iter) << "  " << std::setw(6) << opt_str(r.ss_loc)
              << "  " << std::setw(8) << fmt_seconds(r.verify_time_s) << "  "
              << fmt_seconds(r.total_time_s) << "\n";
  }
  std::cout << "solved " << solved << "/" << rows.size() << "\n";
}

BenchRow bench_one(const Options& o, SpecMode mode, const fs::path& dir, const fs::path& out_root) {
  BenchRow row;
  row.problem = dir.filename().string();
  try {
    auto bundle = load_bundle(dir);
    auto provider = make_provider(o, mock_dir_for(o, to_string(mode), bundle.id));
    auto cfg = session_config(o, mode);
    cfg.provider = provider.get();
    auto out = out_root / bundle.id;
    cfg.work_dir = fs::absolute(out / "work");
    SessionLog log;
    auto outcome = run_session(bundle, cfg, log);
    write_outputs(outcome, log, bundle, out);
    row.status = std::string(to_string(outcome.status));
    row.candidates = outcome.totals.candidates_generated;
    row.verify_time_s = static_cast<double>(outcome.totals.verify_time.count()) / 1000.0;
    row.total_time_s = static_cast<double>(outcome.totals.wall_time.count()) / 1000.0;
    if (outcome.status == SessionStatus::Solved) {
      auto s = summary_json(outcome, bundle);
      row.ss_iter = outcome.iterations_used;
      row.ss_loc = s["solution_loc"].get<std::size_t>();
    }
    if (outcome.failure_reason) row.note = *outcome.failure_reason;
  } catch (const EnvironmentError& e) {
    row.status = "error";
    row.note = e.kind() + ": " + e.what();
    row.environment_error = true;
  } catch (const Error& e) {
    row.status = "error";
    row.note = e.kind() + ": " + e.what();
  } catch (const std::exception& e) {
    row.status = "error";
    row.note = e.what();
  }
  return row;
}

std::vector<BenchRow> bench_mode(const Options& o, SpecMode mode, const std::vector<fs::path>& dirs,
                                 const fs::path& out_root) {
  std::vector<BenchRow> rows(dirs.size());
  std::size_t jobs = o.jobs;
  if (jobs == 0) {
    std::size_t half = std::max<std::size_t>(1, std::thread::hardware_concurrency() / 2);
    jobs = std::min(dirs.size(), half);
  }
  jobs = std::max<std::size_t>(1, std::min(jobs, dirs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < dirs.size(); i = next++) rows[i] = bench_one(o, mode, dirs[i], out_root);
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

int cmd_bench(const Options& o) {
  if (o.problems_dir.empty()) throw UsageError("--problems-dir is required");
  if (!fs::is_directory(o.problems_dir)) throw UsageError("not a directory: " + o.problems_dir);
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(o.problems_dir))
    if (e.is_directory() && fs::exists(e.path() / "spec.acsl")) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) {
    std::cerr << "no problems found in " << o.problems_dir << "\n";
    return kExitEnvironment;
  }
  fs::path out = o.out.empty() ? fs::path("verigen-bench") : fs::path(o.out);

  std::vector<SpecMode> modes;
  if (o.sweep) modes = {SpecMode::NlOnly, SpecMode::FormalOnly, SpecMode::Both};
  else modes = {spec_mode_of(o)};

  bool env_error = false, any_error = false;
  std::string sweep_csv = "spec_mode,problems,solved_initial,solved_after_improvement\n";
  std::vector<std::string> sweep_lines;
  for (auto mode : modes) {
    auto mode_out = o.sweep ? out / std::string(to_string(mode)) : out;
    auto rows = bench_mode(o, mode, dirs, mode_out);
    auto csv = o.sweep ? out / ("bench_" + std::string(to_string(mode)) + ".csv") : out / "bench.csv";
    write_bench_csv(csv, rows);
    print_bench_table(rows, to_string(mode));
    std::size_t initial = 0, after = 0;
    for (const auto& r : rows) {
      env_error = env_error || r.environment_error;
      any_error = any_error || r.status == "error";
      if (r.status == "error") std::cerr << r.problem << ": " << r.note << "\n";
      if (r.status == "solved") {
        ++after;
        if (r.ss_iter == 0u) ++initial;
      }
    }
    sweep_csv += std::string(to_string(mode)) + "," + std::to_string(rows.size()) + "," +
                 std::to_string(initial) + "," + std::to_string(after) + "\n";
    sweep_lines.push_back(std::string(to_string(mode)) + ": initial " + std::to_string(initial) +
                          ", after improvement " + std::to_string(after) + " of " +
                          std::to_string(rows.size()));
    std::cout << "\n";
  }
  if (o.sweep) {
    text::write_file(out / "spec_modes.csv", sweep_csv);
    std::cout << "solved by specification type\n";
    for (const auto& l : sweep_lines) std::cout << "  " << l << "\n";
  }
  if (env_error) return kExitEnvironment;
  return any_error ? kExitFail : kExitOk;
}

// ---------------------------------------------------------------------------
// verify / test / stats / transform
// ---------------------------------------------------------------------------

std::string candidate_file(const Options& o, const ProblemBundle& b) {
  if (!o.file.empty()) return text::read_file(o.file);
  if (b.ground_truth) return *b.ground_truth;
  throw UsageError("--file is required (the problem has no truth.c)");
}

int cmd_verify(const Options& o) {
  auto bundle = load_problem(o.problem);
  auto src = candidate_file(o, bundle);
  VerifyConfig vc;
  vc.frama_c = o.frama_c;
  vc.solvers = split_list(o.solvers);
  vc.wp_timeout = std::chrono::seconds(o.wp_timeout);
  vc.candidate_timeout = std::chrono::seconds(o.candidate_timeout);
  TempDir tmp("verigen-verify");
  auto ws = Workspace::fresh(tmp.path() / "ws");
  auto rep = verify_candidate(src, bundle, ws, vc);
  std::cout << "verdict=" << to_string(rep.verdict) << "\n"
            << "goals_proved=" << rep.goals_proved << "\n"
            << "goals_total=" << rep.goals_total << "\n"
            << "time_s=" << fmt_seconds(static_cast<double>(rep.duration.count()) / 1000.0) << "\n";
  for (const auto& g : rep.unproved_goals)
    std::cout << "unproved: " << g.name << " " << to_string(g.status)
              << (g.prover ? " (" + *g.prover + ")" : "") << "\n";
  if (o.verbose || rep.verdict == Verdict::VerifierError) std::cout << rep.raw_output;
  return rep.verdict == Verdict::Verified ? kExitOk : kExitFail;
}

std::string join_scalars(const std::vector<Scalar>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x.to_string();
  return s;
}

int cmd_test(const Options& o) {
  auto bundle = load_problem(o.problem);
  auto src = candidate_file(o, bundle);
  TestConfig tc;
  tc.cc = o.cc;
  tc.per_test_timeout = std::chrono::milliseconds(static_cast<long>(o.test_timeout * 1000));
  TempDir tmp("verigen-test");
  auto ws = Workspace::fresh(tmp.path() / "ws");
  TestReport rep;
  try {
    rep = run_tests(src, bundle, ws, tc);
  } catch (const HarnessBuildError& e) {
    std::cout << "harness build failed:\n" << e.what() << "\n";
    return kExitFail;
  }
  std::cout << std::left << std::setw(6) << "case" << std::setw(14) << "status" << std::setw(24)
            << "expected"
            << "actual\n";
  for (const auto& r : rep.results) {
    std::cout << std::left << std::setw(6) << (r.case_index + 1) << std::setw(14) << to_string(r.status)
              << std::setw(24) << join_scalars(bundle.tests[r.case_index].expected)
              << join_scalars(r.actual) << "\n";
  }
  std::cout << "passed " << rep.passed_count() << "/" << rep.results.size()
            << " pass_rate=" << rep.pass_rate << "\n";
  return rep.passed_count() == rep.results.size() ? kExitOk : kExitFail;
}

int cmd_stats(const Options& o) {
  auto bundle = load_problem(o.problem);
  WhitespaceTokenizer tok;
  auto s = bundle_stats(bundle, tok);
  std::cout << "problem=" << bundle.id << "\n"
            << "nl_tokens=" << s.nl_tokens << "\n"
            << "tokenizer=" << s.tokenizer_name << "\n"
            << "formal_loc=" << s.formal_loc << "\n"
            << "formal_clauses=" << s.formal_clauses << "\n"
            << "truth_loc=" << (s.truth_loc ? std::to_string(*s.truth_loc) : "NA") << "\n"
            << "n_tests=" << s.n_tests << "\n";
  return kExitOk;
}

int cmd_transform(const Options& o) {
  auto src = text::read_file(o.input);
  TransformResult r;
  try {
    r = transform_main(src, o.name);
  } catch (const UnsupportedConstruct& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitFail;
  }
  fs::path out = o.out;
  text::write_file(out / "function.c", r.function_source);
  text::write_file(out / "signature.h", r.signature.declaration() + "\n");
  json mapping = json::array();
  for (const auto& m : r.mapping)
    mapping.push_back({{"io_call", m.io_call},
                       {"param", m.param_name},
                       {"direction", m.direction == IoDirection::Input ? "input" : "output"}});
  text::write_file(out / "mapping.json", mapping.dump(2) + "\n");
  std::cout << r.signature.declaration() << "\n";
  return kExitOk;
}

std::string default_config_path() {
  if (fs::exists("verigen.toml")) return "verigen.toml";
  if (const char* home = std::getenv("HOME")) {
    auto p = fs::path(home) / "verigen.toml";
    if (fs::exists(p)) return p.string();
  }
  return "";
}

bool flag_on_command_line(int argc, char** argv, std::string_view flag) {
  for (int i = 1; i < argc; ++i) {
    std::string_view a = argv[i];
    if (a == flag || a.substr(0, flag.size() + 1) == std::string(flag) + "=") return true;
  }
  return false;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"verigen: generate formally verified C functions with a language model"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", default_config_path(), "TOML config file (default ./verigen.toml, then ~/verigen.toml)");

  Options o;
  const std::vector<std::string> modes{"both", "nl", "formal", "nl_only", "formal_only"};
  app.add_option("--spec-mode", o.spec_mode, "Specifications given to the model")
      ->check(CLI::IsMember(modes))
      ->capture_default_str();
  app.add_option("--candidates", o.candidates, "Samples per model invocation")
      ->check(CLI::Range(1, 128))
      ->capture_default_str();
  app.add_option("--iterations", o.iterations, "Improvement iterations after the initial batch")
      ->capture_default_str();
  app.add_option("--temperature", o.temperature, "Sampling temperature")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--model", o.model, "Model name")->capture_default_str();
  app.add_option("--max-tokens", o.max_tokens, "Completion token limit")->capture_default_str();
  app.add_option("--provider", o.provider, "Model provider")
      ->check(CLI::IsMember({"mock", "http"}))
      ->capture_default_str();
  app.add_option("--mock-dir", o.mock_dir, "Directory of scripted replies for the mock provider");
  app.add_option("--api-base", o.api_base, "Chat completions base URL (env LLM_API_BASE)");
  app.add_option("--seed", o.seed, "Selection RNG seed")->capture_default_str();
  app.add_option("--solvers", o.solvers, "Comma separated WP provers")->capture_default_str();
  app.add_option("--wp-timeout", o.wp_timeout, "Per-goal prover timeout in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--candidate-timeout", o.candidate_timeout, "Verifier wall time per candidate in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--test-timeout", o.test_timeout, "Per test case time limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cc", o.cc, "C compiler")->capture_default_str();
  app.add_option("--frama-c", o.frama_c, "Frama-C executable")->capture_default_str();
  app.add_option("--prompts-dir", o.prompts_dir, "Load prompt templates from this directory");
  app.add_flag("--no-one-shot", o.no_one_shot, "Leave the worked example out of prompts");
  app.add_flag("--allow-loops", o.allow_loops, "Drop the no-loops constraint from prompts");
  app.add_option("--verify-jobs", o.verify_jobs, "Concurrent verifier runs (default: CPU count)");

  auto* gen = app.add_subcommand("generate", "Run one synthesis session");
  gen->add_option("--problem", o.problem, "Problem bundle directory")->required();
  gen->add_option("--out", o.out, "Output directory (default verigen-out/<problem>)");

  auto* bench = app.add_subcommand("bench", "Run sessions for every bundle in a directory");
  bench->add_option("--problems-dir", o.problems_dir, "Directory of problem bundles")->required();
  bench->add_option("--out", o.out, "Output directory (default verigen-bench)");
  bench->add_option("--jobs", o.jobs, "Parallel sessions (default min(problems, CPUs/2))");
  bench->add_flag("--spec-mode-sweep", o.sweep, "Run nl_only, formal_only and both and compare");

  auto* ver = app.add_subcommand("verify", "Verify a C file against a bundle's formal spec");
  ver->add_option("--problem", o.problem, "Problem bundle directory")->required();
  ver->add_option("--file", o.file, "C source (default: the bundle's truth.c)");
  ver->add_flag("--verbose,-v", o.verbose, "Print the verifier output");

  auto* tst = app.add_subcommand("test", "Run a bundle's unit tests against a C file");
  tst->add_option("--problem", o.problem, "Problem bundle directory")->required();
  tst->add_option("--file", o.file, "C source (default: the bundle's truth.c)");

  auto* st = app.add_subcommand("stats", "Print bundle size metrics");
  st->add_option("--problem", o.problem, "Problem bundle directory")->required();

  auto* tr = app.add_subcommand("transform", "Turn a stdin/stdout program into a function");
  tr->add_option("input", o.input, "C program with a main function")->required()->check(CLI::ExistingFile);
  tr->add_option("--name", o.name, "Function name")->required();
  tr->add_option("--out,-o", o.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  // flag > environment > config file
  if (!flag_on_command_line(argc, argv, "--api-base"))
    if (const char* env = std::getenv("LLM_API_BASE"); env && *env) o.api_base = env;

  try {
    if (o.verify_jobs) set_verify_concurrency(o.verify_jobs);
    if (gen->parsed()) return cmd_generate(o);
    if (bench->parsed()) return cmd_bench(o);
    if (ver->parsed()) return cmd_verify(o);
    if (tst->parsed()) return cmd_test(o);
    if (st->parsed()) return cmd_stats(o);
    if (tr->parsed()) return cmd_transform(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const EnvironmentError& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const InvalidBundle& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const MalformedTest& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const MissingFile& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace verigen::cli
