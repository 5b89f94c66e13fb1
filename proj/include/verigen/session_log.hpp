#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace verigen {

/// Ordered record of a session. Each event is a JSON object with `seq`,
/// `event`, `timestamp`, and the event's payload fields. Time-dependent
/// fields are `timestamp` and any key ending in `_ms`.
class SessionLog {
 public:
  void add(const std::string& event, nlohmann::json payload = nlohmann::json::object());

  const std::vector<nlohmann::json>& events() const { return events_; }
  std::vector<nlohmann::json> events_of(const std::string& event) const;

  /// One compact JSON object per line.
  std::string to_jsonl() const;
  void write_jsonl(const std::filesystem::path& p) const;
  static SessionLog read_jsonl(const std::filesystem::path& p);

 private:
  std::vector<nlohmann::json> events_;
};

/// Copy of `v` without `timestamp` and `*_ms` keys, at any depth.
nlohmann::json strip_volatile(const nlohmann::json& v);

/// JSONL text with volatile fields removed from every line.
std::string strip_volatile_jsonl(std::string_view jsonl);

/// Writes every sampled reply recorded in `log` as numbered files that a
/// MockProvider replays in the original order.
void export_mock_script(const SessionLog& log, const std::filesystem::path& dir);

}  // namespace verigen
