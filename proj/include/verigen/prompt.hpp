#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "verigen/bundle.hpp"

namespace verigen {

/// Which specifications enter the prompt.
enum class SpecMode { Both, NlOnly, FormalOnly };

std::string_view to_string(SpecMode m);
/// Accepts `both`, `nl`, `nl_only`, `formal`, `formal_only`.
std::optional<SpecMode> parse_spec_mode(std::string_view s);

/// Default extra constraint: generated programs must be loop-free.
inline constexpr std::string_view kNoLoopsConstraint =
    "Do not use loops (for, while, do-while), goto, or recursion.";

struct PromptConfig {
  SpecMode spec_mode = SpecMode::Both;
  bool one_shot = true;
  std::vector<std::string> extra_constraints{std::string(kNoLoopsConstraint)};
};

enum class FeedbackStage { CompileFailed, VerifyFailed };
std::string_view to_string(FeedbackStage s);

/// Part D: one earlier candidate and what went wrong with it.
struct FeedbackBlock {
  std::string candidate_source;
  std::string diagnostics;
  FeedbackStage stage = FeedbackStage::VerifyFailed;
};

struct ChatMessage {
  std::string role;  // "system" or "user"
  std::string content;
};

/// Parts A..E. Absent parts are skipped when rendering; order never changes.
struct Prompt {
  std::string system;                     // A
  std::optional<std::string> shot;        // B
  std::string task;                       // C
  std::optional<FeedbackBlock> feedback;  // D
  std::string call_to_action;             // E

  /// Part A as the system message; B, C, D, E joined into one user message.
  std::vector<ChatMessage> to_messages() const;

  /// Human-readable rendering with one `### X` header per present part.
  std::string render() const;
};

/// Renders part D text for a feedback block.
std::string render_feedback_section(const FeedbackBlock& fb);

/// Static template text, with `{{placeholder}}` markers in instructions and
/// call_to_action.
struct PromptTemplates {
  std::string system;
  std::string one_shot;
  std::string instructions;
  std::string call_to_action;

  /// Templates compiled into the library from the repository's prompts/.
  static const PromptTemplates& builtin();
  /// Reads system.txt, one_shot.txt, instructions.txt, call_to_action.txt.
  static PromptTemplates load(const std::filesystem::path& dir);
};

Prompt build_initialization_prompt(const ProblemBundle& b, const PromptConfig& cfg,
                                   const PromptTemplates& t = PromptTemplates::builtin());

/// Throws InvalidState when fb carries no diagnostics.
Prompt build_improvement_prompt(const ProblemBundle& b, const PromptConfig& cfg,
                                const FeedbackBlock& fb,
                                const PromptTemplates& t = PromptTemplates::builtin());

}  // namespace verigen
