#include "support.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "verigen/harness.hpp"
#include "verigen/prompt.hpp"
#include "verigen/verify.hpp"
#include "verigen/text.hpp"
#include "verigen/transform.hpp"
#include "verigen/workspace.hpp"

namespace fs = std::filesystem;

namespace vgtest {

fs::path fixtures() { return VERIGEN_FIXTURES_DIR; }
fs::path problem_dir(const std::string& name) { return fixtures() / "problems" / name; }
std::string cli_path() { return VERIGEN_CLI_PATH; }
std::string fake_frama_c() { return FAKE_FRAMA_C_PATH; }

std::string session_verifier() {
  const char* v = std::getenv("VERIGEN_FRAMA_C");
  return v && *v ? v : fake_frama_c();
}

bool using_fake_verifier() { return session_verifier() == fake_frama_c(); }

std::string fenced_reply(const std::string& code) {
  return "Here is the implementation.\n\n```c\n" + code + "\n```\n";
}

std::string add_positive_reply(const std::string& body) {
  return fenced_reply("void add_positive(int x, int y, int* result)\n{\n    " + body + "\n}");
}

void write_replies(const fs::path& dir, const std::vector<std::string>& replies) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < replies.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "%05zu.txt", i);
    verigen::text::write_file(dir / name, replies[i]);
  }
}

verigen::SessionConfig session_config(verigen::Provider* provider, const fs::path& work_dir) {
  verigen::SessionConfig cfg;
  cfg.provider = provider;
  cfg.work_dir = work_dir;
  cfg.verify.frama_c = session_verifier();
  cfg.retry.sleep = [](std::chrono::milliseconds) {};
  return cfg;
}

Equivalence check_transform_fixture(const fs::path& fixture, const fs::path& work_dir) {
  using namespace verigen;
  Equivalence eq;
  std::string program = text::read_file(fixture / "program.c");
  std::string name = text::trim(text::read_file(fixture / "name"));
  TransformResult tr = transform_main(program, name);
  eq.function_source = tr.function_source;
  for (const char* bad : {"scanf", "printf", "stdio"}) {
    if (tr.function_source.find(bad) != std::string::npos) {
      eq.detail = std::string("output still mentions ") + bad;
      return eq;
    }
  }

  fs::create_directories(work_dir);
  auto exe = work_dir / "original";
  text::write_file(work_dir / "original.c", program);
  auto cr = run_process({"cc", "-std=c11", "-w", "-o", exe.string(), (work_dir / "original.c").string()},
                        {.cwd = {}, .stdin_data = {}, .timeout = std::chrono::minutes(1)});
  if (!cr.ok()) {
    eq.detail = "original does not compile: " + cr.err;
    return eq;
  }

  ProblemBundle b;
  b.id = name;
  b.nl_spec = "transformed";
  b.formal_spec = "/*@ assigns \\nothing; */";
  b.signature = tr.signature.declaration();
  std::vector<std::string> stems;
  for (const auto& e : fs::directory_iterator(fixture / "tests"))
    if (e.path().extension() == ".in") stems.push_back(e.path().stem().string());
  std::sort(stems.begin(), stems.end(), [](const std::string& a, const std::string& c) {
    return a.size() != c.size() ? a.size() < c.size() : a < c;
  });
  auto literals = [](const std::string& s) {
    std::vector<Scalar> v;
    for (const auto& t : text::split_whitespace(s)) v.push_back(*Scalar::parse(t));
    return v;
  };
  for (const auto& stem : stems) {
    std::string in = text::read_file(fixture / "tests" / (stem + ".in"));
    std::string out = text::read_file(fixture / "tests" / (stem + ".out"));
    auto r = run_process({exe.string()}, {.cwd = {}, .stdin_data = in, .timeout = std::chrono::seconds(5)});
    if (!r.ok() || text::split_whitespace(r.out) != text::split_whitespace(out)) {
      eq.detail = "original disagrees with " + stem + ".out: got '" + text::trim(r.out) + "'";
      return eq;
    }
    b.tests.push_back({literals(in), literals(out)});
  }
  if (b.tests.empty()) {
    eq.detail = "no tests";
    return eq;
  }
  auto report = run_tests(tr.function_source, b, Workspace::fresh(work_dir / "harness"));
  if (report.passed_count() != b.tests.size()) {
    eq.detail = "transformed function passed " + std::to_string(report.passed_count()) + "/" +
                std::to_string(b.tests.size());
    return eq;
  }
  eq.ok = true;
  eq.detail = std::to_string(b.tests.size()) + " cases identical";
  return eq;
}

std::vector<std::pair<std::string, std::string>> golden_prompts() {
  using namespace verigen;
  auto b = load_bundle(problem_dir("add_positive"));
  const std::string wrong = "void add_positive(int x, int y, int* result)\n{\n    *result = x - y;\n}\n";
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("init_both.txt", build_initialization_prompt(b, {}).render());

  CompileReport cr{false, "candidate.c:3:19: error: expected expression before ';' token", {}};
  auto cfb = render_feedback(cr, SpecMode::Both,
                             "void add_positive(int x, int y, int* result)\n{\n    *result = x + ;\n}\n");
  out.emplace_back("improve_compile_both.txt", build_improvement_prompt(b, {}, cfb).render());

  VerifyReport vr;
  vr.verdict = Verdict::Unproved;
  vr.goals_total = 6;
  vr.goals_proved = 5;
  vr.unproved_goals = {{"typed_add_positive_ensures", GoalStatus::Unknown, "Alt-Ergo"}};
  vr.raw_output = "[wp] [Unknown] typed_add_positive_ensures (Qed 1ms) (Alt-Ergo)\n[wp] Proved goals:    5 / 6\n";
  for (auto mode : {SpecMode::NlOnly, SpecMode::FormalOnly}) {
    PromptConfig cfg{.spec_mode = mode};
    auto fb = render_feedback(vr, mode, wrong);
    out.emplace_back("improve_verify_" + std::string(to_string(mode)) + ".txt",
                     build_improvement_prompt(b, cfg, fb).render());
  }
  return out;
}

verigen::ProcessResult run_cli(const std::vector<std::string>& args, const fs::path& cwd) {
  std::vector<std::string> argv{cli_path()};
  argv.insert(argv.end(), args.begin(), args.end());
  return verigen::run_process(argv, {.cwd = cwd, .stdin_data = {}, .timeout = std::chrono::minutes(10)});
}

}  // namespace vgtest
