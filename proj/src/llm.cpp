#include "verigen/llm.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "verigen/error.hpp"
#include "verigen/text.hpp"

#include <httplib.h>
#include <json.hpp>

namespace verigen {

namespace fs = std::filesystem;
using json = nlohmann::json;

void SamplingParams::validate() const {
  if (n < 1) throw std::invalid_argument("sampling: n must be at least 1");
  if (!(temperature >= 0.0 && temperature <= 1.0))
    throw std::invalid_argument("sampling: temperature must lie in [0, 1]");
}

MockProvider::MockProvider(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw MissingFile("mock script directory missing: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().filename().string().front() != '.') files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) replies_.push_back(text::read_file(f));
}

MockProvider::MockProvider(std::vector<std::string> replies) : replies_(std::move(replies)) {}

std::vector<RawResponse> MockProvider::request(const Prompt&, const SamplingParams&,
                                               std::size_t count) {
  if (remaining() < count)
    throw ScriptExhausted("mock script has " + std::to_string(remaining()) +
                          " replies left, " + std::to_string(count) + " requested");
  std::vector<RawResponse> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({replies_[next_++], "mock", {}, {}});
  return out;
}

HttpProviderConfig HttpProviderConfig::from_env() {
  HttpProviderConfig c;
  if (const char* b = std::getenv("LLM_API_BASE"); b && *b) c.api_base = b;
  if (const char* k = std::getenv("LLM_API_KEY"); k && *k) c.api_key = k;
  return c;
}

HttpProvider::HttpProvider(HttpProviderConfig cfg) : cfg_(std::move(cfg)) {}

std::string HttpProvider::request_body(const Prompt& p, const SamplingParams& sp,
                                       std::size_t count) {
  json messages = json::array();
  for (const auto& m : p.to_messages()) messages.push_back({{"role", m.role}, {"content", m.content}});
  json body = {{"model", sp.model},
               {"messages", messages},
               {"n", count},
               {"temperature", sp.temperature},
               {"max_tokens", sp.max_tokens}};
  return body.dump();
}

std::vector<RawResponse> HttpProvider::request(const Prompt& p, const SamplingParams& sp,
                                               std::size_t count) {
  // Split "scheme://host[:port]/prefix" for httplib.
  const std::string& base = cfg_.api_base;
  auto scheme_end = base.find("://");
  auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  auto path_start = base.find('/', host_start);
  std::string origin = base.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : base.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

  httplib::Client client(origin);
  client.set_connection_timeout(std::chrono::seconds(10));
  client.set_read_timeout(cfg_.timeout);
  client.set_write_timeout(std::chrono::seconds(30));
  httplib::Headers headers;
  if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);

  auto start = std::chrono::steady_clock::now();
  auto res = client.Post(prefix + "/chat/completions", headers, request_body(p, sp, count),
                         "application/json");
  auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  if (!res)
    throw ProviderUnreachable("cannot reach " + base + ": " + httplib::to_string(res.error()));
  if (res->status == 401 || res->status == 403)
    throw AuthFailure("provider rejected credentials (HTTP " + std::to_string(res->status) + ")");
  if (res->status == 429) throw RateLimited("provider rate limit (HTTP 429)");
  if (res->status >= 500)
    throw ProviderUnreachable("provider error HTTP " + std::to_string(res->status));
  if (res->status != 200)
    throw ProviderError("provider returned HTTP " + std::to_string(res->status) + ": " +
                        text::truncate_bytes(res->body, 512));

  json reply = json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("choices") || !reply["choices"].is_array() ||
      reply["choices"].empty())
    throw ProviderError("malformed chat-completion reply");

  std::optional<TokenUsage> usage;
  if (reply.contains("usage") && reply["usage"].is_object()) {
    usage = TokenUsage{reply["usage"].value("prompt_tokens", std::size_t{0}),
                       reply["usage"].value("completion_tokens", std::size_t{0})};
  }
  std::vector<RawResponse> out;
  for (const auto& choice : reply["choices"]) {
    std::string content;
    if (choice.contains("message") && choice["message"].contains("content") &&
        choice["message"]["content"].is_string())
      content = choice["message"]["content"].get<std::string>();
    out.push_back({std::move(content), "http", latency, usage});
  }
  return out;
}

std::vector<RawResponse> sample_candidates(
    const Prompt& p, const SamplingParams& sp, Provider& provider, const RetryPolicy& retry,
    const std::function<void(const RawResponse&)>& on_response) {
  sp.validate();
  std::vector<RawResponse> out;
  out.reserve(sp.n);
  while (out.size() < sp.n) {
    std::vector<RawResponse> batch;
    auto backoff = retry.initial_backoff;
    for (int attempt = 1;; ++attempt) {
      try {
        batch = provider.request(p, sp, sp.n - out.size());
        break;
      } catch (const ProviderUnreachable&) {
        if (attempt >= retry.attempts) throw;
      } catch (const RateLimited&) {
        if (attempt >= retry.attempts) throw;
      }
      if (retry.sleep) retry.sleep(backoff);
      else std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    if (batch.empty()) throw ProviderError(provider.name() + " returned no samples");
    for (auto& r : batch) {
      if (out.size() == sp.n) break;
      if (on_response) on_response(r);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string extract_code(std::string_view reply) {
  if (text::trim(reply).empty()) throw EmptyResponse("reply contains no text");
  auto open = reply.find("```");
  if (open == std::string_view::npos) return std::string(reply);
  auto body_start = reply.find('\n', open);
  if (body_start == std::string_view::npos) return std::string(reply);
  ++body_start;
  auto close = reply.find("```", body_start);
  auto body = reply.substr(body_start, close == std::string_view::npos ? std::string_view::npos
                                                                       : close - body_start);
  std::string out(body);
  if (text::trim(out).empty()) throw EmptyResponse("first code block is empty");
  return out;
}

}  // namespace verigen
