#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "verigen/prompt.hpp"

namespace verigen {

struct SamplingParams {
  std::size_t n = 10;
  double temperature = 1.0;
  std::string model = "gpt-3.5-turbo";
  std::size_t max_tokens = 2048;

  /// Throws std::invalid_argument unless n >= 1 and 0 <= temperature <= 1.
  void validate() const;
};

struct TokenUsage {
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
};

/// One reply. Empty text is kept as a degenerate sample.
struct RawResponse {
  std::string text;
  std::string provider;
  std::chrono::milliseconds latency{0};
  std::optional<TokenUsage> usage;
};

/// A chat-completion backend. `request` asks for up to `count` samples and
/// returns at least one of them; callers loop until they have enough.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual std::string name() const = 0;
  virtual std::vector<RawResponse> request(const Prompt& p, const SamplingParams& sp,
                                           std::size_t count) = 0;
};

/// Replays reply files from a directory in lexicographic filename order, one
/// file per sample. Throws ScriptExhausted if a request needs more files
/// than remain; nothing is consumed in that case.
class MockProvider final : public Provider {
 public:
  explicit MockProvider(const std::filesystem::path& dir);
  explicit MockProvider(std::vector<std::string> replies);

  std::string name() const override { return "mock"; }
  std::vector<RawResponse> request(const Prompt& p, const SamplingParams& sp,
                                   std::size_t count) override;

  std::size_t consumed() const { return next_; }
  std::size_t remaining() const { return replies_.size() - next_; }

 private:
  std::vector<std::string> replies_;
  std::size_t next_ = 0;
};

struct HttpProviderConfig {
  /// Base URL up to and including the version segment, e.g.
  /// `https://api.openai.com/v1`. `/chat/completions` is appended.
  std::string api_base = "https://api.openai.com/v1";
  std::string api_key;
  std::chrono::seconds timeout{120};

  /// Fills api_base/api_key from LLM_API_BASE and LLM_API_KEY when set.
  static HttpProviderConfig from_env();
};

/// Speaks the `/v1/chat/completions` wire format. Sends `n` in one request;
/// endpoints that return fewer choices are asked again for the remainder.
class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig cfg);

  std::string name() const override { return "http"; }
  std::vector<RawResponse> request(const Prompt& p, const SamplingParams& sp,
                                   std::size_t count) override;

  /// Request body for a prompt; exposed for wire-format tests.
  static std::string request_body(const Prompt& p, const SamplingParams& sp, std::size_t count);

 private:
  HttpProviderConfig cfg_;
};

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  /// Injectable for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

/// Collects exactly sp.n responses in provider order. Each response is passed
/// to `on_response` as soon as it arrives. ProviderUnreachable and
/// RateLimited are retried with exponential backoff; anything else is fatal.
std::vector<RawResponse> sample_candidates(
    const Prompt& p, const SamplingParams& sp, Provider& provider,
    const RetryPolicy& retry = {},
    const std::function<void(const RawResponse&)>& on_response = {});

/// First fenced code block without its fence and language tag; the whole
/// text when there is no fence. Throws EmptyResponse for blank text.
std::string extract_code(std::string_view reply);
inline std::string extract_code(const RawResponse& r) { return extract_code(r.text); }

}  // namespace verigen
