#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "verigen/bundle.hpp"
#include "verigen/compile.hpp"
#include "verigen/harness.hpp"
#include "verigen/llm.hpp"
#include "verigen/pool.hpp"
#include "verigen/prompt.hpp"
#include "verigen/session_log.hpp"
#include "verigen/verify.hpp"

namespace verigen {

struct SessionConfig {
  SamplingParams sampling;
  PromptConfig prompt;
  PromptTemplates templates = PromptTemplates::builtin();
  std::size_t max_iterations = 10;
  CompilerConfig compile;
  VerifyConfig verify;
  TestConfig tests;
  FeedbackOptions feedback;
  RetryPolicy retry;
  std::uint64_t rng_seed = 0;
  Provider* provider = nullptr;  // not owned
  /// Parent of the per-candidate workspaces.
  std::filesystem::path work_dir;
  /// Extra settings recorded verbatim in the log header (e.g. CLI flags).
  nlohmann::json annotations = nlohmann::json::object();
};

enum class SessionStatus { Solved, Unsolved };
std::string_view to_string(SessionStatus s);

struct SessionTotals {
  std::size_t candidates_generated = 0;  // replies sampled
  std::size_t candidates_checked = 0;    // replies that went through the gates
  std::chrono::milliseconds wall_time{0};
  std::chrono::milliseconds verify_time{0};
};

struct SessionOutcome {
  SessionStatus status = SessionStatus::Unsolved;
  /// The verified candidate, or the last selected one when unsolved.
  std::optional<Candidate> solution;
  std::size_t iterations_used = 0;
  SessionTotals totals;
  std::optional<std::string> failure_reason;
};

/// Initial generation followed by up to max_iterations improvement rounds.
///
/// Every candidate goes compile -> verify (if compiled) -> tests. Within a
/// batch candidates are checked in sample order and checking stops at the
/// first verified one. Between batches the best candidate by pass rate is
/// selected and its first failing stage becomes the improvement feedback.
///
/// Missing tools raise EnvironmentError before any sampling. Provider errors
/// that survive the retry policy end the session as unsolved with a reason.
SessionOutcome run_session(const ProblemBundle& b, const SessionConfig& cfg, SessionLog& log);

/// Writes `solution.c` (solved) or `last_candidate.c` (unsolved),
/// `session.jsonl`, and `summary.json` into `dir`. Throws IoError.
void write_outputs(const SessionOutcome& outcome, const SessionLog& log, const ProblemBundle& b,
                   const std::filesystem::path& dir);

/// Contents of summary.json.
nlohmann::json summary_json(const SessionOutcome& outcome, const ProblemBundle& b);

}  // namespace verigen
