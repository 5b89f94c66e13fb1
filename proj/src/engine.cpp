#include "verigen/engine.hpp"

#include <stdexcept>

#include "verigen/error.hpp"
#include "verigen/loc.hpp"
#include "verigen/process.hpp"
#include "verigen/text.hpp"

namespace verigen {

namespace fs = std::filesystem;
using json = nlohmann::json;
using std::chrono::milliseconds;

std::string_view to_string(SessionStatus s) {
  return s == SessionStatus::Solved ? "solved" : "unsolved";
}

namespace {

json prompt_json(const Prompt& p) {
  json messages = json::array();
  for (const auto& m : p.to_messages()) messages.push_back({{"role", m.role}, {"content", m.content}});
  return messages;
}

json config_json(const SessionConfig& cfg) {
  json solvers = cfg.verify.solvers;
  json constraints = cfg.prompt.extra_constraints;
  return {{"candidates", cfg.sampling.n},
          {"temperature", cfg.sampling.temperature},
          {"model", cfg.sampling.model},
          {"max_tokens", cfg.sampling.max_tokens},
          {"spec_mode", to_string(cfg.prompt.spec_mode)},
          {"one_shot", cfg.prompt.one_shot},
          {"extra_constraints", constraints},
          {"max_iterations", cfg.max_iterations},
          {"cc", cfg.compile.cc},
          {"frama_c", cfg.verify.frama_c},
          {"solvers", solvers},
          {"wp_timeout_s", cfg.verify.wp_timeout.count()},
          {"candidate_timeout_s", cfg.verify.candidate_timeout.count()},
          {"test_timeout_s", static_cast<double>(cfg.tests.per_test_timeout.count()) / 1000.0},
          {"rng_seed", cfg.rng_seed},
          {"provider", cfg.provider ? cfg.provider->name() : "none"},
          {"annotations", cfg.annotations}};
}

json goals_json(const std::vector<GoalOutcome>& goals) {
  json out = json::array();
  for (const auto& g : goals) {
    json j = {{"name", g.name}, {"status", to_string(g.status)}};
    if (g.prover) j["prover"] = *g.prover;
    out.push_back(j);
  }
  return out;
}

json tests_json(const TestReport& r) {
  json results = json::array();
  for (const auto& c : r.results) {
    json actual = json::array();
    for (const auto& v : c.actual) actual.push_back(v.to_string());
    results.push_back({{"case", c.case_index + 1},
                       {"passed", c.passed},
                       {"status", to_string(c.status)},
                       {"actual", actual}});
  }
  return {{"pass_rate", r.pass_rate}, {"ran", r.ran}, {"passed", r.passed_count()},
          {"results", results}};
}

FeedbackBlock feedback_for(const Candidate& c, const SessionConfig& cfg) {
  if (!c.compile || !c.compile->ok) {
    CompileReport rep = c.compile.value_or(CompileReport{});
    return render_feedback(rep, cfg.prompt.spec_mode, c.source, cfg.feedback);
  }
  if (c.verify) return render_feedback(*c.verify, cfg.prompt.spec_mode, c.source, cfg.feedback);
  throw InvalidState("selected candidate " + c.id + " has no failing stage");
}

}  // namespace

SessionOutcome run_session(const ProblemBundle& b, const SessionConfig& cfg, SessionLog& log) {
  auto started = std::chrono::steady_clock::now();
  if (!cfg.provider) throw std::invalid_argument("run_session: no provider configured");
  cfg.sampling.validate();
  if (!find_executable(cfg.compile.cc)) throw CompilerMissing("C compiler not found: " + cfg.compile.cc);
  if (!find_executable(cfg.tests.cc)) throw CompilerMissing("C compiler not found: " + cfg.tests.cc);
  if (!find_executable(cfg.verify.frama_c))
    throw VerifierMissing("frama-c not found: " + cfg.verify.frama_c);

  auto report = validate_bundle(b, {.require_tests = cfg.max_iterations > 0});
  if (!report.ok()) {
    std::string msg = "bundle " + b.id + " is invalid:";
    for (const auto& v : report.violations) msg += " " + v.code + ";";
    throw InvalidBundle(msg);
  }

  fs::path work = cfg.work_dir.empty() ? fs::temp_directory_path() / ("verigen-" + b.id)
                                       : cfg.work_dir;
  log.add("session_start", {{"problem", b.id},
                            {"config", config_json(cfg)},
                            {"compiler_version", compiler_version(cfg.compile.cc)},
                            {"verifier_version", verifier_version(cfg.verify.frama_c)}});

  SessionOutcome outcome;
  Pool pool(cfg.rng_seed);
  std::optional<FeedbackBlock> feedback;
  std::optional<std::string> feedback_from;

  for (std::size_t iteration = 0; iteration <= cfg.max_iterations; ++iteration) {
    outcome.iterations_used = iteration;
    Prompt prompt = feedback ? build_improvement_prompt(b, cfg.prompt, *feedback, cfg.templates)
                             : build_initialization_prompt(b, cfg.prompt, cfg.templates);
    json pe = {{"iteration", iteration},
               {"kind", feedback ? "improvement" : "initialization"},
               {"messages", prompt_json(prompt)}};
    if (feedback_from) pe["embedded_candidate"] = *feedback_from;
    log.add("prompt_built", pe);

    std::vector<RawResponse> responses;
    try {
      responses = sample_candidates(prompt, cfg.sampling, *cfg.provider, cfg.retry);
    } catch (const ProviderError& e) {
      outcome.failure_reason = e.kind() + ": " + e.what();
      log.add("provider_error", {{"iteration", iteration}, {"kind", e.kind()}, {"message", e.what()}});
      break;
    }
    outcome.totals.candidates_generated += responses.size();
    json rj = json::array();
    for (const auto& r : responses)
      rj.push_back({{"text", r.text}, {"provider", r.provider}, {"latency_ms", r.latency.count()}});
    log.add("responses_received", {{"iteration", iteration}, {"responses", rj}});

    for (std::size_t s = 0; s < responses.size(); ++s) {
      Candidate c;
      c.iteration = iteration;
      c.sample_index = s;
      c.id = Candidate::make_id(iteration, s);
      auto ws = Workspace::fresh(work / c.id);

      try {
        c.source = extract_code(responses[s]);
        c.compile = compile_candidate(c.source, b, ws, cfg.compile);
      } catch (const EmptyResponse& e) {
        c.compile = CompileReport{false, std::string("no code in reply: ") + e.what(), milliseconds(0)};
      }
      log.add("compile_result", {{"candidate", c.id},
                                 {"ok", c.compile->ok},
                                 {"diagnostics", c.compile->diagnostics},
                                 {"duration_ms", c.compile->duration.count()}});

      if (c.compile->ok) {
        c.verify = verify_candidate(c.source, b, ws, cfg.verify);
        outcome.totals.verify_time += c.verify->duration;
        log.add("verify_result", {{"candidate", c.id},
                                  {"verdict", to_string(c.verify->verdict)},
                                  {"goals_total", c.verify->goals_total},
                                  {"goals_proved", c.verify->goals_proved},
                                  {"unproved_goals", goals_json(c.verify->unproved_goals)},
                                  {"raw_output", c.verify->raw_output},
                                  {"duration_ms", c.verify->duration.count()}});
        try {
          c.tests = run_tests(c.source, b, ws, cfg.tests);
          log.add("test_result", {{"candidate", c.id}, {"report", tests_json(*c.tests)}});
        } catch (const HarnessBuildError& e) {
          c.tests = failed_test_report(b.tests.size());
          log.add("test_result", {{"candidate", c.id},
                                  {"report", tests_json(*c.tests)},
                                  {"harness_error", e.what()}});
        }
      } else {
        c.tests = failed_test_report(b.tests.size());
        log.add("test_result", {{"candidate", c.id},
                                {"report", tests_json(*c.tests)},
                                {"skipped", "compile_failed"}});
      }

      bool verified = c.verified();
      pool.add(std::move(c));
      ++outcome.totals.candidates_checked;
      if (verified) {
        outcome.status = SessionStatus::Solved;
        outcome.solution = pool.candidates().back();
        break;
      }
    }
    if (outcome.status == SessionStatus::Solved || iteration == cfg.max_iterations) break;

    const Candidate& selected = pool.select_best();
    feedback = feedback_for(selected, cfg);
    feedback_from = selected.id;
    log.add("selection", {{"for_iteration", iteration + 1},
                          {"candidate", selected.id},
                          {"pass_rate", selected.pass_rate()},
                          {"stage", to_string(feedback->stage)},
                          {"draw", pool.draws() - 1}});
  }

  if (outcome.status == SessionStatus::Unsolved && !pool.empty()) {
    const Candidate& last = pool.select_best();
    outcome.solution = last;
    log.add("selection", {{"final", true},
                          {"candidate", last.id},
                          {"pass_rate", last.pass_rate()},
                          {"draw", pool.draws() - 1}});
  }

  outcome.totals.wall_time = std::chrono::duration_cast<milliseconds>(
      std::chrono::steady_clock::now() - started);
  json oe = {{"status", to_string(outcome.status)},
             {"iterations_used", outcome.iterations_used},
             {"candidates_generated", outcome.totals.candidates_generated},
             {"candidates_checked", outcome.totals.candidates_checked},
             {"wall_time_ms", outcome.totals.wall_time.count()},
             {"verify_time_ms", outcome.totals.verify_time.count()}};
  if (outcome.solution) oe["solution"] = outcome.solution->id;
  if (outcome.failure_reason) oe["failure_reason"] = *outcome.failure_reason;
  log.add("outcome", oe);
  return outcome;
}

json summary_json(const SessionOutcome& outcome, const ProblemBundle& b) {
  json s = {{"problem", b.id},
            {"status", to_string(outcome.status)},
            {"candidates_generated", outcome.totals.candidates_generated},
            {"total_time_s", static_cast<double>(outcome.totals.wall_time.count()) / 1000.0},
            {"all_verify_time_s", static_cast<double>(outcome.totals.verify_time.count()) / 1000.0}};
  if (outcome.status == SessionStatus::Solved && outcome.solution) {
    s["iterations"] = outcome.iterations_used;
    s["solution_loc"] = count_function_loc(outcome.solution->source);
    s["solution_verify_time_s"] =
        static_cast<double>(outcome.solution->verify->duration.count()) / 1000.0;
  } else {
    s["iterations"] = nullptr;
    s["solution_loc"] = nullptr;
    s["solution_verify_time_s"] = nullptr;
    s["iterations_run"] = outcome.iterations_used;
  }
  if (outcome.failure_reason) s["failure_reason"] = *outcome.failure_reason;
  return s;
}

void write_outputs(const SessionOutcome& outcome, const SessionLog& log, const ProblemBundle& b,
                   const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  fs::remove(dir / "solution.c", ec);
  fs::remove(dir / "last_candidate.c", ec);
  if (outcome.solution) {
    auto name = outcome.status == SessionStatus::Solved ? "solution.c" : "last_candidate.c";
    auto src = outcome.solution->source;
    if (!src.empty() && src.back() != '\n') src += '\n';
    text::write_file(dir / name, src);
  }
  log.write_jsonl(dir / "session.jsonl");
  text::write_file(dir / "summary.json", summary_json(outcome, b).dump(2) + "\n");
}

}  // namespace verigen
