#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "verigen/compile.hpp"
#include "verigen/harness.hpp"
#include "verigen/verify.hpp"

namespace verigen {

struct Candidate {
  std::string id;  // "i<iteration>-s<sample>"
  std::size_t iteration = 0;
  std::size_t sample_index = 0;
  std::string source;
  std::optional<CompileReport> compile;
  std::optional<VerifyReport> verify;
  std::optional<TestReport> tests;

  static std::string make_id(std::size_t iteration, std::size_t sample_index);
  double pass_rate() const { return tests ? tests->pass_rate : 0.0; }
  bool verified() const { return verify && verify->verdict == Verdict::Verified; }
};

/// Every candidate of one session, in the order they were checked.
class Pool {
 public:
  explicit Pool(std::uint64_t rng_seed = 0) : rng_seed_(rng_seed) {}

  /// Throws std::invalid_argument on a duplicate id, or when a verify report
  /// is attached to a candidate that did not compile.
  void add(Candidate c);

  const std::vector<Candidate>& candidates() const { return candidates_; }
  std::size_t size() const { return candidates_.size(); }
  bool empty() const { return candidates_.empty(); }
  std::uint64_t rng_seed() const { return rng_seed_; }
  std::uint64_t draws() const { return draws_; }

  /// Uniformly random candidate among those with the maximal pass rate. The
  /// choice depends only on the seed, the number of earlier draws, and the
  /// pool contents. Throws EmptyPool, or InvalidState if a candidate has no
  /// test report.
  const Candidate& select_best();

 private:
  std::vector<Candidate> candidates_;
  std::uint64_t rng_seed_;
  std::uint64_t draws_ = 0;
};

/// Uniform index in [0, bound) derived from (seed, draw). Portable across
/// standard libraries, unlike std::uniform_int_distribution.
std::size_t seeded_index(std::uint64_t seed, std::uint64_t draw, std::size_t bound);

}  // namespace verigen
