#include "verigen/verify.hpp"

#include <algorithm>
#include <cctype>
#include <condition_variable>
#include <mutex>
#include <regex>
#include <thread>

#include "verigen/error.hpp"
#include "verigen/process.hpp"
#include "verigen/text.hpp"

namespace verigen {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Unproved: return "unproved";
    case Verdict::VerifierError: return "verifier_error";
  }
  return "verifier_error";
}

std::string_view to_string(GoalStatus s) {
  switch (s) {
    case GoalStatus::Valid: return "valid";
    case GoalStatus::Unknown: return "unknown";
    case GoalStatus::Timeout: return "timeout";
    case GoalStatus::Failed: return "failed";
  }
  return "unknown";
}

namespace {

std::optional<GoalStatus> status_from_word(std::string_view w) {
  if (w == "Valid" || w == "Proved") return GoalStatus::Valid;
  if (w == "Unknown") return GoalStatus::Unknown;
  if (w == "Timeout" || w == "Stepout") return GoalStatus::Timeout;
  if (w == "Failed" || w == "Failure" || w == "Unsuccess" || w == "Error")
    return GoalStatus::Failed;
  return std::nullopt;
}

bool is_prover_label(std::string_view s) {
  static const std::regex kProver(R"((Alt-Ergo|Z3|z3|CVC4|CVC5|cvc4|cvc5|Qed|Script|Coq)( [0-9][0-9.]*)?)");
  return std::regex_match(s.begin(), s.end(), kProver);
}

}  // namespace

ParsedGoals parse_verifier_output(std::string_view text) {
  static const std::regex kSummary(R"(Proved goals:\s*([0-9]{1,9})\s*/\s*([0-9]{1,9}))");
  static const std::regex kNewStyle(R"(^\[wp\] \[([A-Za-z]+)\] (?:Goal )?([A-Za-z_][A-Za-z0-9_]*)(.*)$)");
  static const std::regex kOldStyle(
      R"(^\[wp\] \[([^\]]+)\] Goal ([A-Za-z_][A-Za-z0-9_]*) : ([A-Za-z]+)(.*)$)");
  static const std::regex kParen(R"(\(([^()]*)\))");

  ParsedGoals out;
  std::vector<GoalOutcome> goals;
  auto record = [&](GoalOutcome g) {
    auto it = std::find_if(goals.begin(), goals.end(),
                           [&](const GoalOutcome& o) { return o.name == g.name; });
    if (it == goals.end()) goals.push_back(std::move(g));
    else *it = std::move(g);
  };

  for (const auto& raw : text::split_lines(text)) {
    // std::regex recurses per character; real report lines are short.
    if (raw.size() > 4096) continue;
    std::string line = text::trim(raw);
    std::smatch m;
    if (std::regex_search(line, m, kSummary)) {
      out.goals_proved = std::stoul(m[1].str());
      out.goals_total = std::stoul(m[2].str());
      continue;
    }
    if (std::regex_match(line, m, kOldStyle)) {
      if (auto st = status_from_word(m[3].str())) {
        GoalOutcome g{m[2].str(), *st, std::nullopt};
        auto label = m[1].str();
        if (is_prover_label(label)) g.prover = label;
        record(std::move(g));
      }
      continue;
    }
    if (std::regex_match(line, m, kNewStyle)) {
      auto st = status_from_word(m[1].str());
      if (!st) continue;
      GoalOutcome g{m[2].str(), *st, std::nullopt};
      std::string rest = m[3].str();
      for (std::sregex_iterator it(rest.begin(), rest.end(), kParen), end; it != end; ++it) {
        auto inner = (*it)[1].str();
        // "(Qed 1ms)" is a timing; a bare prover name is the deciding prover.
        if (is_prover_label(inner) && inner != "Qed") g.prover = inner;
        else if (inner.rfind("Qed", 0) == 0 && !g.prover && *st == GoalStatus::Valid) g.prover = "Qed";
      }
      record(std::move(g));
    }
  }
  for (auto& g : goals)
    if (g.status != GoalStatus::Valid) out.unproved.push_back(std::move(g));
  if (out.goals_proved > out.goals_total) {
    // Inconsistent summary; treat as unreadable.
    out.goals_total = 0;
    out.goals_proved = 0;
  }
  return out;
}

Verdict decide_verdict(const ParsedGoals& parsed, bool process_ok) {
  if (!process_ok || parsed.goals_total == 0) return Verdict::VerifierError;
  return parsed.goals_proved == parsed.goals_total && parsed.unproved.empty()
             ? Verdict::Verified
             : Verdict::Unproved;
}

std::string annotate_candidate(std::string_view src, std::string_view formal_spec,
                               std::string_view fn_name) {
  std::string masked = text::mask_comments_and_strings(src);
  auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };

  std::size_t insert_at = std::string::npos;
  int depth = 0;
  for (std::size_t i = 0; i < masked.size(); ++i) {
    char c = masked[i];
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (depth != 0 || masked.compare(i, fn_name.size(), fn_name) != 0) continue;
    if ((i > 0 && is_ident(masked[i - 1])) ||
        (i + fn_name.size() < masked.size() && is_ident(masked[i + fn_name.size()])))
      continue;
    // Name must be followed by a parameter list and then a body.
    std::size_t j = i + fn_name.size();
    while (j < masked.size() && std::isspace(static_cast<unsigned char>(masked[j]))) ++j;
    if (j >= masked.size() || masked[j] != '(') continue;
    int parens = 0;
    for (; j < masked.size(); ++j) {
      if (masked[j] == '(') ++parens;
      if (masked[j] == ')' && --parens == 0) break;
    }
    ++j;
    while (j < masked.size() && std::isspace(static_cast<unsigned char>(masked[j]))) ++j;
    if (j >= masked.size() || masked[j] != '{') continue;
    // Walk back over the return type and specifiers to the declaration start.
    std::size_t k = i;
    while (k > 0) {
      char p = masked[k - 1];
      if (is_ident(p) || p == '*' || std::isspace(static_cast<unsigned char>(p))) --k;
      else break;
    }
    while (k < i && std::isspace(static_cast<unsigned char>(masked[k]))) ++k;
    insert_at = masked.rfind('\n', k == 0 ? 0 : k - 1);
    insert_at = (insert_at == std::string::npos || k == 0) ? 0 : insert_at + 1;
    if (insert_at > k) insert_at = k;
    break;
  }
  std::string spec = text::trim(formal_spec);
  if (insert_at == std::string::npos) return spec + "\n" + std::string(src);
  std::string out(src.substr(0, insert_at));
  out += spec;
  out += "\n";
  out += src.substr(insert_at);
  return out;
}

namespace {

class Limiter {
 public:
  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return active_ < limit_; });
    ++active_;
  }
  void release() {
    {
      std::lock_guard lock(mu_);
      --active_;
    }
    cv_.notify_one();
  }
  void set_limit(std::size_t n) {
    {
      std::lock_guard lock(mu_);
      limit_ = std::max<std::size_t>(1, n);
    }
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::size_t active_ = 0;
  std::size_t limit_ = std::max(1u, std::thread::hardware_concurrency());
};

Limiter& verify_limiter() {
  static Limiter l;
  return l;
}

}  // namespace

void set_verify_concurrency(std::size_t n) { verify_limiter().set_limit(n); }

VerifyReport verify_candidate(std::string_view src, const ProblemBundle& b, const Workspace& ws,
                              const VerifyConfig& cfg) {
  if (!find_executable(cfg.frama_c)) throw VerifierMissing("frama-c not found: " + cfg.frama_c);
  auto sig = parse_signature(b.signature);
  text::write_file(ws.file("annotated.c"), annotate_candidate(src, b.formal_spec, sig.name));

  std::string provers;
  for (const auto& s : cfg.solvers) provers += (provers.empty() ? "" : ",") + s;
  std::vector<std::string> argv{cfg.frama_c, "-wp", "-wp-rte"};
  if (!provers.empty()) argv.insert(argv.end(), {"-wp-prover", provers});
  argv.insert(argv.end(), {"-wp-timeout", std::to_string(cfg.wp_timeout.count())});
  argv.insert(argv.end(), cfg.extra_args.begin(), cfg.extra_args.end());
  argv.push_back("annotated.c");

  ProcessResult r;
  verify_limiter().acquire();
  try {
    r = run_process(argv, {.cwd = ws.dir(), .stdin_data = {},
                           .timeout = std::chrono::milliseconds(cfg.candidate_timeout)});
  } catch (const EnvironmentError& e) {
    verify_limiter().release();
    throw VerifierMissing(e.what());
  }
  verify_limiter().release();

  VerifyReport rep;
  rep.duration = r.duration;
  rep.raw_output = r.out + r.err;
  if (r.timed_out)
    rep.raw_output += "\n[verigen] verifier exceeded the candidate timeout of " +
                      std::to_string(cfg.candidate_timeout.count()) + " s\n";
  auto parsed = parse_verifier_output(rep.raw_output);
  rep.verdict = decide_verdict(parsed, r.ok());
  if (rep.verdict == Verdict::VerifierError) {
    // Counts from an abnormal run are not trusted.
    rep.goals_total = 0;
    rep.goals_proved = 0;
  } else {
    rep.goals_total = parsed.goals_total;
    rep.goals_proved = parsed.goals_proved;
  }
  rep.unproved_goals = std::move(parsed.unproved);
  return rep;
}

std::string verifier_version(const std::string& frama_c) {
  try {
    auto r = run_process({frama_c, "-version"}, {.cwd = {}, .stdin_data = {},
                                                  .timeout = std::chrono::seconds(30)});
    auto lines = text::split_lines(r.out);
    if (r.ok() && !lines.empty()) return text::trim(lines.front());
  } catch (const EnvironmentError&) {
  }
  return "unknown";
}

FeedbackBlock render_feedback(const CompileReport& r, SpecMode, std::string_view candidate_source,
                              const FeedbackOptions& opts) {
  if (r.ok) throw InvalidState("render_feedback: candidate compiled successfully");
  std::string diag = text::trim(r.diagnostics);
  if (diag.empty()) diag = "compilation failed without diagnostics";
  return {std::string(candidate_source), text::truncate_bytes(diag, opts.diagnostics_cap),
          FeedbackStage::CompileFailed};
}

FeedbackBlock render_feedback(const VerifyReport& r, SpecMode mode,
                              std::string_view candidate_source, const FeedbackOptions& opts) {
  if (r.verdict == Verdict::Verified)
    throw InvalidState("render_feedback: candidate verified successfully");
  FeedbackBlock fb{std::string(candidate_source), {}, FeedbackStage::VerifyFailed};
  if (mode == SpecMode::NlOnly) {
    fb.diagnostics = std::string(kDoesNotVerifyMessage);
    return fb;
  }
  std::string d;
  if (r.verdict == Verdict::VerifierError) {
    d = "The verifier could not check the program.\n";
  } else {
    d = "Proved goals: " + std::to_string(r.goals_proved) + " / " + std::to_string(r.goals_total) +
        "\n";
  }
  if (!r.unproved_goals.empty()) {
    d += "Unproved goals:\n";
    for (const auto& g : r.unproved_goals) {
      d += "- " + g.name + ": " + std::string(to_string(g.status));
      if (g.prover) d += " (" + *g.prover + ")";
      d += "\n";
    }
  }
  auto raw = text::trim(r.raw_output);
  if (!raw.empty()) d += "Verifier output:\n" + raw;
  fb.diagnostics = text::truncate_bytes(text::trim(d), opts.diagnostics_cap);
  return fb;
}

}  // namespace verigen
