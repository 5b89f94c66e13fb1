#include "verigen/session_log.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "verigen/error.hpp"
#include "verigen/text.hpp"

namespace verigen {

using json = nlohmann::json;

namespace {

std::string utc_now() {
  auto now = std::chrono::system_clock::now();
  auto secs = std::chrono::system_clock::to_time_t(now);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()) % 1000;
  std::tm tm{};
  ::gmtime_r(&secs, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms.count()));
  return out;
}

bool is_volatile_key(const std::string& k) {
  return k == "timestamp" || (k.size() > 3 && k.compare(k.size() - 3, 3, "_ms") == 0);
}

}  // namespace

void SessionLog::add(const std::string& event, json payload) {
  json e = {{"seq", events_.size()}, {"event", event}, {"timestamp", utc_now()}};
  if (payload.is_object()) {
    for (auto& [k, v] : payload.items()) e[k] = std::move(v);
  } else {
    e["payload"] = std::move(payload);
  }
  events_.push_back(std::move(e));
}

std::vector<json> SessionLog::events_of(const std::string& event) const {
  std::vector<json> out;
  for (const auto& e : events_)
    if (e.value("event", "") == event) out.push_back(e);
  return out;
}

std::string SessionLog::to_jsonl() const {
  std::string out;
  for (const auto& e : events_) out += e.dump() + "\n";
  return out;
}

void SessionLog::write_jsonl(const std::filesystem::path& p) const { text::write_file(p, to_jsonl()); }

SessionLog SessionLog::read_jsonl(const std::filesystem::path& p) {
  SessionLog log;
  auto lines = text::split_lines(text::read_file(p));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    auto e = json::parse(lines[i], nullptr, false);
    if (e.is_discarded())
      throw IoError(p.string() + ":" + std::to_string(i + 1) + ": invalid JSON");
    log.events_.push_back(std::move(e));
  }
  return log;
}

json strip_volatile(const json& v) {
  if (v.is_object()) {
    json out = json::object();
    for (const auto& [k, child] : v.items())
      if (!is_volatile_key(k)) out[k] = strip_volatile(child);
    return out;
  }
  if (v.is_array()) {
    json out = json::array();
    for (const auto& child : v) out.push_back(strip_volatile(child));
    return out;
  }
  return v;
}

std::string strip_volatile_jsonl(std::string_view jsonl) {
  std::string out;
  for (const auto& line : text::split_lines(jsonl)) {
    if (text::trim(line).empty()) continue;
    auto e = json::parse(line, nullptr, false);
    out += (e.is_discarded() ? line : strip_volatile(e).dump()) + "\n";
  }
  return out;
}

void export_mock_script(const SessionLog& log, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::size_t k = 0;
  for (const auto& e : log.events_of("responses_received")) {
    for (const auto& r : e.at("responses")) {
      char name[32];
      std::snprintf(name, sizeof name, "%05zu.txt", k++);
      text::write_file(dir / name, r.at("text").get<std::string>());
    }
  }
}

}  // namespace verigen
