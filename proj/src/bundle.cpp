#include "verigen/bundle.hpp"

#include <algorithm>
#include <cctype>

#include "verigen/error.hpp"
#include "verigen/loc.hpp"
#include "verigen/text.hpp"

namespace verigen {

namespace fs = std::filesystem;

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

ValidationReport validate_bundle(const ProblemBundle& b, const ValidationOptions& opts) {
  ValidationReport r;
  auto add = [&](std::string code, std::string msg) {
    r.violations.push_back({std::move(code), std::move(msg)});
  };

  std::optional<Signature> sig;
  try {
    sig = parse_signature(b.signature);
  } catch (const SignatureParseError& e) {
    bool non_void = e.reason().find("non-void") != std::string::npos;
    add(non_void ? "non-void-return" : "signature-parse", e.what());
  }

  if (!text::contains_word(b.formal_spec, "ensures"))
    add("missing-ensures", "formal spec has no ensures clause");
  if (!text::contains_word(b.formal_spec, "requires") &&
      !text::contains_word(b.formal_spec, "assigns"))
    add("missing-requires-or-assigns", "formal spec has neither requires nor assigns clause");

  if (b.tests.empty() && opts.require_tests)
    add("no-tests", "bundle has no tests but the improvement loop needs them");

  if (sig) {
    for (const auto& p : sig->params) {
      if (!text::contains_word(b.formal_spec, p.name) && !text::contains_word(b.nl_spec, p.name))
        add("param-not-mentioned",
            "parameter '" + p.name + "' appears in neither specification");
    }
    auto n_in = sig->inputs().size();
    auto n_out = sig->outputs().size();
    if (!b.tests.empty() && n_out == 0)
      add("no-output-param", "signature has no pointer parameter to carry test outputs");
    for (std::size_t i = 0; i < b.tests.size(); ++i) {
      const auto& t = b.tests[i];
      if (t.inputs.size() != n_in || t.expected.size() != n_out)
        add("test-arity", "test " + std::to_string(i + 1) + " has " +
                              std::to_string(t.inputs.size()) + " inputs / " +
                              std::to_string(t.expected.size()) + " outputs, signature needs " +
                              std::to_string(n_in) + " / " + std::to_string(n_out));
    }
  }
  return r;
}

namespace {

std::vector<Scalar> parse_literals(const fs::path& file) {
  std::string contents = text::read_file(file);
  std::vector<Scalar> out;
  auto lines = text::split_lines(contents);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    for (const auto& tok : text::split_whitespace(lines[ln])) {
      auto v = Scalar::parse(tok);
      if (!v)
        throw MalformedTest(file.string() + ":" + std::to_string(ln + 1) +
                            ": not a scalar literal: '" + tok + "'");
      out.push_back(*v);
    }
  }
  return out;
}

bool is_numeric(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string read_required(const fs::path& dir, const char* name) {
  auto p = dir / name;
  if (!fs::is_regular_file(p)) throw MissingFile("bundle file missing: " + p.string());
  return text::read_file(p);
}

}  // namespace

ProblemBundle load_bundle(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw MissingFile("bundle directory missing: " + dir.string());
  ProblemBundle b;
  b.id = fs::weakly_canonical(dir).filename().string();
  b.formal_spec = read_required(dir, "spec.acsl");
  b.nl_spec = read_required(dir, "spec.md");
  b.signature = read_required(dir, "signature.h");
  if (fs::is_regular_file(dir / "truth.c")) b.ground_truth = text::read_file(dir / "truth.c");

  Signature sig = parse_signature(b.signature);

  auto tests_dir = dir / "tests";
  if (fs::is_directory(tests_dir)) {
    std::vector<std::string> stems;
    for (const auto& e : fs::directory_iterator(tests_dir)) {
      if (e.path().extension() == ".in") stems.push_back(e.path().stem().string());
    }
    bool numeric = std::all_of(stems.begin(), stems.end(), is_numeric);
    std::sort(stems.begin(), stems.end(), [&](const std::string& a, const std::string& c) {
      if (numeric && a.size() != c.size()) return std::stoull(a) < std::stoull(c);
      return a < c;
    });
    for (const auto& stem : stems) {
      auto out = tests_dir / (stem + ".out");
      if (!fs::is_regular_file(out)) throw MissingFile("test output missing: " + out.string());
      TestCase tc{parse_literals(tests_dir / (stem + ".in")), parse_literals(out)};
      if (tc.inputs.size() != sig.inputs().size() || tc.expected.size() != sig.outputs().size())
        throw MalformedTest((tests_dir / (stem + ".in")).string() + ":1: expected " +
                            std::to_string(sig.inputs().size()) + " inputs and " +
                            std::to_string(sig.outputs().size()) + " outputs, got " +
                            std::to_string(tc.inputs.size()) + " and " +
                            std::to_string(tc.expected.size()));
      b.tests.push_back(std::move(tc));
    }
  }

  auto report = validate_bundle(b, {.require_tests = false});
  if (!report.ok()) {
    std::string msg = "bundle " + dir.string() + " is invalid:";
    for (const auto& v : report.violations) msg += "\n  " + v.code + ": " + v.message;
    throw InvalidBundle(msg);
  }
  return b;
}

void write_bundle(const ProblemBundle& b, const fs::path& dir) {
  fs::create_directories(dir);
  text::write_file(dir / "spec.acsl", b.formal_spec);
  text::write_file(dir / "spec.md", b.nl_spec);
  text::write_file(dir / "signature.h", b.signature);
  if (b.ground_truth) text::write_file(dir / "truth.c", *b.ground_truth);
  else fs::remove(dir / "truth.c");
  std::error_code ec;
  fs::remove_all(dir / "tests", ec);
  if (b.tests.empty()) return;
  auto join = [](const std::vector<Scalar>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + vs[i].to_string();
    return s + "\n";
  };
  for (std::size_t i = 0; i < b.tests.size(); ++i) {
    auto stem = std::to_string(i + 1);
    text::write_file(dir / "tests" / (stem + ".in"), join(b.tests[i].inputs));
    text::write_file(dir / "tests" / (stem + ".out"), join(b.tests[i].expected));
  }
}

std::size_t WhitespaceTokenizer::count(std::string_view text) const {
  return text::split_whitespace(text).size();
}

std::size_t count_acsl_clauses(std::string_view formal_spec) {
  static constexpr std::string_view kSingle[] = {"requires", "ensures", "assigns",
                                                 "behavior", "assumes", "decreases"};
  std::size_t n = 0;
  for (auto kw : kSingle) n += text::count_word(formal_spec, kw);
  // `complete behaviors` / `disjoint behaviors` are two-word clauses; any
  // whitespace may separate the words.
  auto words = text::split_whitespace(formal_spec);
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    if ((words[i] == "complete" || words[i] == "disjoint") &&
        text::starts_with_word(words[i + 1], "behaviors"))
      ++n;
  }
  return n;
}

std::size_t count_nonblank_lines(std::string_view s) {
  std::size_t n = 0;
  for (const auto& line : text::split_lines(s))
    if (!text::trim(line).empty()) ++n;
  return n;
}

BundleStats bundle_stats(const ProblemBundle& b, const Tokenizer& tokenizer) {
  BundleStats s;
  s.nl_tokens = tokenizer.count(b.nl_spec);
  s.formal_loc = count_nonblank_lines(b.formal_spec);
  s.formal_clauses = count_acsl_clauses(b.formal_spec);
  if (b.ground_truth) s.truth_loc = count_function_loc(*b.ground_truth);
  s.n_tests = b.tests.size();
  s.tokenizer_name = tokenizer.name();
  return s;
}

}  // namespace verigen
