#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace verigen {

struct ProcessOptions {
  std::filesystem::path cwd;
  std::string stdin_data;
  std::optional<std::chrono::milliseconds> timeout;
};

struct ProcessResult {
  int exit_code = -1;  // valid when !signaled && !timed_out
  bool signaled = false;
  int signal = 0;
  bool timed_out = false;
  std::string out;
  std::string err;
  std::chrono::milliseconds duration{0};

  bool ok() const { return !signaled && !timed_out && exit_code == 0; }
};

/// Resolves `program` against PATH unless it already contains a slash.
std::optional<std::filesystem::path> find_executable(const std::string& program);

/// Runs argv[0] with the given arguments, capturing both output streams.
/// The child gets its own process group so a timeout kills every descendant.
/// Throws EnvironmentError if the process cannot be spawned at all.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const ProcessOptions& opts = {});

}  // namespace verigen
