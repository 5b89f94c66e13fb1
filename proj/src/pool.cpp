#include "verigen/pool.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

#include "verigen/error.hpp"

namespace verigen {

std::string Candidate::make_id(std::size_t iteration, std::size_t sample_index) {
  return "i" + std::to_string(iteration) + "-s" + std::to_string(sample_index);
}

void Pool::add(Candidate c) {
  for (const auto& o : candidates_)
    if (o.id == c.id) throw std::invalid_argument("duplicate candidate id " + c.id);
  if (c.verify && !(c.compile && c.compile->ok))
    throw std::invalid_argument("candidate " + c.id + " has a verify report but did not compile");
  candidates_.push_back(std::move(c));
}

std::size_t seeded_index(std::uint64_t seed, std::uint64_t draw, std::size_t bound) {
  if (bound <= 1) return 0;
  // mt19937_64's output sequence is fixed by the standard.
  std::mt19937_64 gen(seed ^ (0x9E3779B97F4A7C15ULL * (draw + 1)));
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

const Candidate& Pool::select_best() {
  if (candidates_.empty()) throw EmptyPool("select_best on an empty pool");
  double best = -1.0;
  for (const auto& c : candidates_) {
    if (!c.tests) throw InvalidState("candidate " + c.id + " has no test report");
    best = std::max(best, c.tests->pass_rate);
  }
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < candidates_.size(); ++i)
    if (candidates_[i].tests->pass_rate == best) tied.push_back(i);
  auto pick = tied[seeded_index(rng_seed_, draws_++, tied.size())];
  return candidates_[pick];
}

}  // namespace verigen
