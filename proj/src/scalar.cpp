#include "verigen/scalar.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace verigen {

std::optional<Scalar> Scalar::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string_view digits = s;
  if (digits.front() == '+') digits.remove_prefix(1);
  bool integral = !digits.empty() &&
                  std::all_of(digits.begin() + (digits.front() == '-' ? 1 : 0), digits.end(),
                              [](char c) { return c >= '0' && c <= '9'; }) &&
                  digits != "-";
  if (integral) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
    return Scalar(v);
  }
  bool has_digit = std::any_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (!has_digit) return std::nullopt;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || c == '.' || c == 'e' || c == 'E' || c == '+' || c == '-'))
      return std::nullopt;
  }
  double d = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || !std::isfinite(d))
    return std::nullopt;
  return Scalar(d);
}

double Scalar::as_double() const {
  if (is_integer()) return static_cast<double>(as_integer());
  return std::get<double>(value_);
}

std::string Scalar::to_string() const {
  if (is_integer()) return std::to_string(as_integer());
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  std::string out(buf, ptr);
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

bool scalars_match(const Scalar& actual, const Scalar& expected, double rel_eps) {
  if (actual.is_integer() && expected.is_integer())
    return actual.as_integer() == expected.as_integer();
  double a = actual.as_double(), e = expected.as_double();
  if (a == e) return true;
  return std::fabs(a - e) <= rel_eps * std::max(std::fabs(a), std::fabs(e));
}

}  // namespace verigen
