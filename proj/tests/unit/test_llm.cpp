#include <gtest/gtest.h>

#include "support.hpp"
#include "verigen/error.hpp"
#include "verigen/llm.hpp"
#include "verigen/workspace.hpp"

using namespace verigen;

namespace {

// Fails with a scripted sequence of errors before delegating to a mock.
class FlakyProvider : public Provider {
 public:
  FlakyProvider(std::vector<std::string> errors, std::vector<std::string> replies, std::size_t per_call)
      : errors_(std::move(errors)), mock_(std::move(replies)), per_call_(per_call) {}
  std::string name() const override { return "flaky"; }
  std::vector<RawResponse> request(const Prompt& p, const SamplingParams& sp, std::size_t count) override {
    ++calls;
    if (!errors_.empty()) {
      auto e = errors_.front();
      errors_.erase(errors_.begin());
      if (e == "unreachable") throw ProviderUnreachable("down");
      if (e == "rate") throw RateLimited("slow down");
      if (e == "auth") throw AuthFailure("bad key");
    }
    return mock_.request(p, sp, std::min(count, per_call_));
  }
  int calls = 0;

 private:
  std::vector<std::string> errors_;
  MockProvider mock_;
  std::size_t per_call_;
};

std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("reply " + std::to_string(i));
  return v;
}

}  // namespace

TEST(Llm, MockServesRepliesInOrder) {
  MockProvider m(numbered(5));
  Prompt p;
  auto a = m.request(p, {}, 2);
  EXPECT_EQ(a[0].text, "reply 0");
  EXPECT_EQ(a[1].text, "reply 1");
  EXPECT_EQ(m.consumed(), 2u);
  EXPECT_THROW(m.request(p, {}, 4), ScriptExhausted);
  EXPECT_EQ(m.remaining(), 3u);  // nothing consumed by the failed call
}

TEST(Llm, MockReadsDirectoryLexicographically) {
  TempDir tmp;
  vgtest::write_replies(tmp.path(), numbered(12));
  MockProvider m(tmp.path());
  auto r = m.request({}, {}, 12);
  EXPECT_EQ(r[10].text, "reply 10");
  EXPECT_THROW(MockProvider(tmp.path() / "missing"), MissingFile);
}

TEST(Llm, SamplingParamsValidate) {
  EXPECT_THROW((SamplingParams{.n = 0}).validate(), std::invalid_argument);
  EXPECT_THROW((SamplingParams{.temperature = 1.5}).validate(), std::invalid_argument);
  EXPECT_NO_THROW(SamplingParams{}.validate());
  SamplingParams d;
  EXPECT_EQ(d.n, 10u);
  EXPECT_EQ(d.temperature, 1.0);
  EXPECT_EQ(d.model, "gpt-3.5-turbo");
}

TEST(Llm, SampleCollectsAcrossPartialBatches) {
  FlakyProvider f({}, numbered(10), 3);
  std::vector<std::string> seen;
  auto r = sample_candidates({}, {.n = 10}, f, {}, [&](const RawResponse& x) { seen.push_back(x.text); });
  EXPECT_EQ(r.size(), 10u);
  EXPECT_EQ(f.calls, 4);
  EXPECT_EQ(seen.size(), 10u);
  EXPECT_EQ(r[9].text, "reply 9");
}

TEST(Llm, RetriesTransientErrorsWithBackoff) {
  FlakyProvider f({"unreachable", "rate"}, numbered(10), 10);
  std::vector<long> sleeps;
  RetryPolicy rp{.attempts = 3, .initial_backoff = std::chrono::milliseconds(100),
                 .sleep = [&](std::chrono::milliseconds d) { sleeps.push_back(d.count()); }};
  auto r = sample_candidates({}, {}, f, rp);
  EXPECT_EQ(r.size(), 10u);
  EXPECT_EQ(sleeps, (std::vector<long>{100, 200}));
}

TEST(Llm, GivesUpAfterAttempts) {
  FlakyProvider f({"unreachable", "unreachable", "unreachable"}, numbered(10), 10);
  RetryPolicy rp{.attempts = 3, .initial_backoff = std::chrono::milliseconds(1),
                 .sleep = [](std::chrono::milliseconds) {}};
  EXPECT_THROW(sample_candidates({}, {}, f, rp), ProviderUnreachable);
}

TEST(Llm, AuthFailureIsNotRetried) {
  FlakyProvider f({"auth"}, numbered(10), 10);
  RetryPolicy rp{.sleep = [](std::chrono::milliseconds) {}};
  EXPECT_THROW(sample_candidates({}, {}, f, rp), AuthFailure);
  EXPECT_EQ(f.calls, 1);
}

TEST(Llm, ExtractCode) {
  EXPECT_EQ(extract_code("text\n```c\nint x;\n```\nmore ```c\nint y;\n```"), "int x;\n");
  EXPECT_EQ(extract_code("```\nint z;\n```"), "int z;\n");
  EXPECT_EQ(extract_code("void f(void) {}"), "void f(void) {}");
  EXPECT_EQ(extract_code("```c\nint open;"), "int open;");
  EXPECT_THROW(extract_code("   \n"), EmptyResponse);
  EXPECT_THROW(extract_code("```c\n\n```"), EmptyResponse);
}
