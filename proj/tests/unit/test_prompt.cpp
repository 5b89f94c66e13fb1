#include <gtest/gtest.h>

#include <cstdlib>

#include "support.hpp"
#include "verigen/error.hpp"
#include "verigen/prompt.hpp"
#include "verigen/text.hpp"
#include "verigen/verify.hpp"

using namespace verigen;

namespace {

ProblemBundle add_positive() { return load_bundle(vgtest::problem_dir("add_positive")); }

std::size_t occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Prompt, InitializationHasPartsABCE) {
  auto p = build_initialization_prompt(add_positive(), {});
  auto r = p.render();
  EXPECT_NE(r.find("### A. System"), std::string::npos);
  EXPECT_NE(r.find("### B. Example"), std::string::npos);
  EXPECT_NE(r.find("### C. Task"), std::string::npos);
  EXPECT_EQ(r.find("### D."), std::string::npos);
  EXPECT_NE(r.find("### E. Call to action"), std::string::npos);
  EXPECT_LT(r.find("### A"), r.find("### B"));
  EXPECT_LT(r.find("### B"), r.find("### C"));
  EXPECT_LT(r.find("### C"), r.find("### E"));
  EXPECT_NE(p.task.find("ensures *result == x + y;"), std::string::npos);
  EXPECT_NE(p.task.find("sum of two positive integers"), std::string::npos);
  EXPECT_NE(p.task.find(std::string(kNoLoopsConstraint)), std::string::npos);
  EXPECT_NE(p.call_to_action.find("add_positive"), std::string::npos);
}

TEST(Prompt, SpecModesSelectSpecifications) {
  auto b = add_positive();
  auto nl = build_initialization_prompt(b, {.spec_mode = SpecMode::NlOnly});
  EXPECT_EQ(nl.task.find("ensures"), std::string::npos);
  EXPECT_NE(nl.task.find("sum of two positive"), std::string::npos);
  auto formal = build_initialization_prompt(b, {.spec_mode = SpecMode::FormalOnly});
  EXPECT_NE(formal.task.find("ensures"), std::string::npos);
  EXPECT_EQ(formal.task.find("sum of two positive"), std::string::npos);
  auto no_shot = build_initialization_prompt(b, {.one_shot = false});
  EXPECT_FALSE(no_shot.shot.has_value());
}

TEST(Prompt, MessagesSplitSystemAndUser) {
  auto p = build_initialization_prompt(add_positive(), {});
  auto m = p.to_messages();
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].role, "system");
  EXPECT_EQ(m[0].content, text::trim(p.system));
  EXPECT_EQ(m[1].role, "user");
  EXPECT_NE(m[1].content.find(p.task), std::string::npos);
}

TEST(Prompt, ImprovementEmbedsExactlyOneCandidate) {
  FeedbackBlock fb{"void add_positive(int x, int y, int* result)\n{\n    *result = x - y;\n}",
                   "Proved goals: 5 / 6", FeedbackStage::VerifyFailed};
  auto p = build_improvement_prompt(add_positive(), {}, fb);
  auto r = p.render();
  EXPECT_EQ(occurrences(r, "### D. Feedback"), 1u);
  EXPECT_EQ(occurrences(r, "*result = x - y;"), 1u);
  EXPECT_EQ(occurrences(r, "not correct:"), 1u);
}

TEST(Prompt, EmptyDiagnosticsRejected) {
  FeedbackBlock fb{"x", "  ", FeedbackStage::VerifyFailed};
  EXPECT_THROW(build_improvement_prompt(add_positive(), {}, fb), InvalidState);
}

TEST(Prompt, TemplatesLoadFromDirectory) {
  auto t = PromptTemplates::load(std::filesystem::path(VERIGEN_SOURCE_DIR) / "prompts");
  const auto& b = PromptTemplates::builtin();
  EXPECT_EQ(t.system, b.system);
  EXPECT_EQ(t.call_to_action, b.call_to_action);
}

// Golden files live in fixtures/golden. VERIGEN_UPDATE_GOLDEN=1 rewrites them.
TEST(Golden, PromptSnapshots) {
  const char* update = std::getenv("VERIGEN_UPDATE_GOLDEN");
  for (const auto& [name, actual] : vgtest::golden_prompts()) {
    auto path = vgtest::fixtures() / "golden" / name;
    if (update && std::string(update) == "1") text::write_file(path, actual);
    EXPECT_EQ(actual, text::read_file(path)) << "golden mismatch: " << path;
  }
}

TEST(Golden, NlOnlyFeedbackIsFixedMessage) {
  VerifyReport vr;
  vr.verdict = Verdict::Unproved;
  vr.goals_total = 6;
  vr.goals_proved = 5;
  vr.unproved_goals = {{"typed_add_positive_ensures", GoalStatus::Unknown, "Alt-Ergo"}};
  auto fb = render_feedback(vr, SpecMode::NlOnly, "void f(void) {}\n");
  EXPECT_EQ(fb.diagnostics, std::string(kDoesNotVerifyMessage));
  EXPECT_EQ(fb.diagnostics.find("ensures"), std::string::npos);
}
