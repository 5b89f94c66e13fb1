#include "verigen/compile.hpp"

#include "verigen/error.hpp"
#include "verigen/process.hpp"
#include "verigen/text.hpp"

namespace verigen {

namespace fs = std::filesystem;

std::string prepare_candidate_source(std::string_view src, const ProblemBundle& b) {
  auto decl = text::trim(b.signature);
  auto decl_norm = text::normalize_space(decl);
  if (text::normalize_space(src).find(decl_norm) != std::string::npos) return std::string(src);
  std::string out = decl;
  out += "\n\n";
  out += src;
  if (out.back() != '\n') out += '\n';
  return out;
}

CompileReport compile_candidate(std::string_view src, const ProblemBundle& b, const Workspace& ws,
                                const CompilerConfig& cfg) {
  if (!find_executable(cfg.cc)) throw CompilerMissing("C compiler not found: " + cfg.cc);
  text::write_file(ws.file("candidate.c"), prepare_candidate_source(src, b));
  std::error_code ec;
  fs::remove(ws.file("candidate.o"), ec);

  std::vector<std::string> argv{cfg.cc};
  argv.insert(argv.end(), cfg.flags.begin(), cfg.flags.end());
  argv.insert(argv.end(), {"-c", "candidate.c", "-o", "candidate.o"});

  ProcessResult r;
  try {
    r = run_process(argv, {.cwd = ws.dir(), .stdin_data = {}, .timeout = cfg.timeout});
  } catch (const EnvironmentError& e) {
    throw CompilerMissing(e.what());
  }
  CompileReport rep;
  rep.duration = r.duration;
  rep.diagnostics = r.err;
  if (!r.out.empty()) rep.diagnostics = r.out + rep.diagnostics;
  if (r.timed_out) rep.diagnostics += "\ncompiler timed out\n";
  rep.ok = r.ok() && fs::exists(ws.file("candidate.o"));
  return rep;
}

std::string compiler_version(const std::string& cc) {
  try {
    auto r = run_process({cc, "--version"}, {.cwd = {}, .stdin_data = {},
                                              .timeout = std::chrono::seconds(10)});
    auto lines = text::split_lines(r.out);
    if (r.ok() && !lines.empty()) return text::trim(lines.front());
  } catch (const EnvironmentError&) {
  }
  return "unknown";
}

}  // namespace verigen
