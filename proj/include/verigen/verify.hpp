#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "verigen/bundle.hpp"
#include "verigen/compile.hpp"
#include "verigen/prompt.hpp"
#include "verigen/workspace.hpp"

namespace verigen {

enum class Verdict { Verified, Unproved, VerifierError };
std::string_view to_string(Verdict v);

enum class GoalStatus { Valid, Unknown, Timeout, Failed };
std::string_view to_string(GoalStatus s);

struct GoalOutcome {
  std::string name;
  GoalStatus status = GoalStatus::Unknown;
  std::optional<std::string> prover;

  friend bool operator==(const GoalOutcome&, const GoalOutcome&) = default;
};

struct VerifyConfig {
  std::string frama_c = "frama-c";
  std::vector<std::string> solvers{"alt-ergo", "z3", "cvc4"};
  std::chrono::seconds wp_timeout{10};
  std::chrono::seconds candidate_timeout{120};
  std::vector<std::string> extra_args;
};

struct VerifyReport {
  Verdict verdict = Verdict::VerifierError;
  std::size_t goals_total = 0;
  std::size_t goals_proved = 0;
  std::vector<GoalOutcome> unproved_goals;
  std::string raw_output;
  std::chrono::milliseconds duration{0};
};

/// What can be read from a verifier transcript.
struct ParsedGoals {
  std::size_t goals_total = 0;
  std::size_t goals_proved = 0;
  std::vector<GoalOutcome> unproved;  // first-seen order, final status wins

  friend bool operator==(const ParsedGoals&, const ParsedGoals&) = default;
};

/// Reads the WP console report. Recognizes the `Proved goals: X / Y` summary
/// (last one wins) and per-goal status lines in both layouts
///
///   [wp] [Timeout] typed_f_ensures (Qed 1ms) (Alt-Ergo) (Cached)
///   [wp] [Alt-Ergo 2.4.2] Goal typed_f_ensures : Unknown (Qed:2ms) (51ms)
///
/// Text without a summary yields zero totals. Total and pure.
ParsedGoals parse_verifier_output(std::string_view text);

/// Fail-closed verdict: Verified only for a clean exit whose summary has at
/// least one goal and every goal proved. A missing summary, zero goals, a
/// crash, or a timeout is VerifierError.
Verdict decide_verdict(const ParsedGoals& parsed, bool process_ok);

/// Inserts the formal spec immediately above the definition of `fn_name`
/// (above the whole source when no definition is found).
std::string annotate_candidate(std::string_view src, std::string_view formal_spec,
                               std::string_view fn_name);

/// Writes `<ws>/annotated.c` and runs
/// `frama-c -wp -wp-rte -wp-prover <solvers> -wp-timeout <t> annotated.c`.
/// Concurrent calls are bounded by a process-wide limit.
/// Throws VerifierMissing when frama-c cannot be found or started.
VerifyReport verify_candidate(std::string_view src, const ProblemBundle& b, const Workspace& ws,
                              const VerifyConfig& cfg = {});

/// Sets the process-wide cap on concurrent verifier runs (default: CPU count).
void set_verify_concurrency(std::size_t n);

/// Output of `frama-c -version`, or "unknown".
std::string verifier_version(const std::string& frama_c);

/// Feedback shown to the model in nl_only mode instead of goal details.
inline constexpr std::string_view kDoesNotVerifyMessage =
    "The code does not verify. Improve the code so that it is correct.";

struct FeedbackOptions {
  std::size_t diagnostics_cap = 8 * 1024;
};

/// Part D for a failed compile: the compiler output, truncated to the cap.
/// Throws InvalidState if the report is a success.
FeedbackBlock render_feedback(const CompileReport& r, SpecMode mode,
                              std::string_view candidate_source,
                              const FeedbackOptions& opts = {});

/// Part D for a failed verification. In nl_only mode this is exactly
/// kDoesNotVerifyMessage; otherwise each unproved goal with its status,
/// followed by an excerpt of the verifier output.
/// Throws InvalidState if the report is Verified.
FeedbackBlock render_feedback(const VerifyReport& r, SpecMode mode,
                              std::string_view candidate_source,
                              const FeedbackOptions& opts = {});

}  // namespace verigen
