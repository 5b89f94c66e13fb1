#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "verigen/engine.hpp"
#include "verigen/process.hpp"

namespace vgtest {

std::filesystem::path fixtures();
std::filesystem::path problem_dir(const std::string& name);
std::string cli_path();
std::string fake_frama_c();

/// Verifier for session-level tests: $VERIGEN_FRAMA_C when set, else the fake.
std::string session_verifier();
bool using_fake_verifier();

/// `reply` wrapped the way a chat model usually answers.
std::string fenced_reply(const std::string& code);
std::string add_positive_reply(const std::string& body);

/// Writes replies as 00000.txt, 00001.txt, ... into dir.
void write_replies(const std::filesystem::path& dir, const std::vector<std::string>& replies);

/// Session config wired to the local cc and the session verifier.
verigen::SessionConfig session_config(verigen::Provider* provider,
                                      const std::filesystem::path& work_dir);

/// Outcome of checking one transform fixture (program.c, name, tests/).
struct Equivalence {
  bool ok = false;
  std::string detail;
  std::string function_source;
};

/// Transforms program.c, runs the original on each tests/<k>.in as stdin and
/// the transformed function through the test harness, and requires both to
/// match tests/<k>.out exactly. Also rejects leftover stdio in the output.
Equivalence check_transform_fixture(const std::filesystem::path& fixture,
                                    const std::filesystem::path& work_dir);

/// (file name, rendered prompt) pairs compared against fixtures/golden.
std::vector<std::pair<std::string, std::string>> golden_prompts();

verigen::ProcessResult run_cli(const std::vector<std::string>& args,
                               const std::filesystem::path& cwd = {});

}  // namespace vgtest
