#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "verigen/bundle.hpp"
#include "verigen/workspace.hpp"

namespace verigen {

struct CompilerConfig {
  std::string cc = "cc";
  std::vector<std::string> flags{"-std=c11", "-Wall"};
  std::chrono::milliseconds timeout{60000};
};

struct CompileReport {
  bool ok = false;
  std::string diagnostics;  // full compiler output
  std::chrono::milliseconds duration{0};
};

/// Candidate text as handed to the compiler: the bundle's declaration is
/// prepended unless the source already contains it verbatim (modulo
/// whitespace), so a definition with a different signature fails to compile.
std::string prepare_candidate_source(std::string_view src, const ProblemBundle& b);

/// Compiles `<ws>/candidate.c` to an object file without linking.
/// Throws CompilerMissing when the compiler cannot be found or started.
CompileReport compile_candidate(std::string_view src, const ProblemBundle& b,
                                const Workspace& ws, const CompilerConfig& cfg = {});

/// First line of `<cc> --version`, or "unknown".
std::string compiler_version(const std::string& cc);

}  // namespace verigen
