#include "verigen/prompt.hpp"

#include "verigen/error.hpp"
#include "verigen/text.hpp"
#include "verigen_prompt_templates.hpp"

namespace verigen {

std::string_view to_string(SpecMode m) {
  switch (m) {
    case SpecMode::Both: return "both";
    case SpecMode::NlOnly: return "nl_only";
    case SpecMode::FormalOnly: return "formal_only";
  }
  return "both";
}

std::optional<SpecMode> parse_spec_mode(std::string_view s) {
  if (s == "both") return SpecMode::Both;
  if (s == "nl" || s == "nl_only") return SpecMode::NlOnly;
  if (s == "formal" || s == "formal_only") return SpecMode::FormalOnly;
  return std::nullopt;
}

std::string_view to_string(FeedbackStage s) {
  return s == FeedbackStage::CompileFailed ? "compile_failed" : "verify_failed";
}

const PromptTemplates& PromptTemplates::builtin() {
  static const PromptTemplates kBuiltin{
      std::string(embedded::kSystem), std::string(embedded::kOneShot),
      std::string(embedded::kInstructions), std::string(embedded::kCallToAction)};
  return kBuiltin;
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
  return {text::read_file(dir / "system.txt"), text::read_file(dir / "one_shot.txt"),
          text::read_file(dir / "instructions.txt"), text::read_file(dir / "call_to_action.txt")};
}

std::string render_feedback_section(const FeedbackBlock& fb) {
  std::string s = "The following program was generated earlier but is not correct:\n```c\n";
  s += text::trim(fb.candidate_source);
  s += "\n```\n";
  s += fb.stage == FeedbackStage::CompileFailed ? "It does not compile. Compiler output:\n"
                                                 : "It does not verify. Verifier feedback:\n";
  s += text::trim(fb.diagnostics);
  s += "\nFix the program so that it is correct.";
  return s;
}

std::vector<ChatMessage> Prompt::to_messages() const {
  std::string user;
  auto append = [&](std::string_view part) {
    if (!user.empty()) user += "\n\n";
    user += text::trim(part);
  };
  if (shot) append(*shot);
  append(task);
  if (feedback) append(render_feedback_section(*feedback));
  append(call_to_action);
  return {{"system", text::trim(system)}, {"user", user}};
}

std::string Prompt::render() const {
  std::string out;
  auto part = [&](std::string_view header, std::string_view body) {
    out += "### ";
    out += header;
    out += "\n";
    out += text::trim(body);
    out += "\n\n";
  };
  part("A. System", system);
  if (shot) part("B. Example", *shot);
  part("C. Task", task);
  if (feedback) part("D. Feedback", render_feedback_section(*feedback));
  part("E. Call to action", call_to_action);
  return out;
}

namespace {

Prompt assemble(const ProblemBundle& b, const PromptConfig& cfg, const PromptTemplates& t) {
  std::string specs;
  if (cfg.spec_mode != SpecMode::FormalOnly)
    specs += "Natural language specification:\n" + text::trim(b.nl_spec);
  if (cfg.spec_mode != SpecMode::NlOnly) {
    if (!specs.empty()) specs += "\n\n";
    specs += "Formal specification (ACSL):\n" + text::trim(b.formal_spec);
  }
  std::string constraints;
  for (const auto& c : cfg.extra_constraints) constraints += "- " + c + "\n";

  std::string fn_name;
  try {
    fn_name = parse_signature(b.signature).name;
  } catch (const SignatureParseError&) {
    fn_name = "described above";
  }

  Prompt p;
  p.system = text::trim(t.system);
  if (cfg.one_shot) p.shot = text::trim(t.one_shot);
  p.task = text::trim(text::substitute(t.instructions, {{"specifications", specs},
                                                        {"signature", text::trim(b.signature)},
                                                        {"constraints", constraints}}));
  p.call_to_action = text::trim(text::substitute(t.call_to_action, {{"function_name", fn_name}}));
  return p;
}

}  // namespace

Prompt build_initialization_prompt(const ProblemBundle& b, const PromptConfig& cfg,
                                   const PromptTemplates& t) {
  return assemble(b, cfg, t);
}

Prompt build_improvement_prompt(const ProblemBundle& b, const PromptConfig& cfg,
                                const FeedbackBlock& fb, const PromptTemplates& t) {
  if (text::trim(fb.diagnostics).empty())
    throw InvalidState("feedback block has empty diagnostics");
  Prompt p = assemble(b, cfg, t);
  p.feedback = fb;
  return p;
}

}  // namespace verigen
