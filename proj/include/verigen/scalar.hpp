#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace verigen {

/// A test-case value: a signed 64-bit integer or a decimal float.
class Scalar {
 public:
  Scalar() = default;
  Scalar(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(double v) : value_(v) {}        // NOLINT(google-explicit-constructor)

  /// Parses an integer (`-12`) or a decimal float (`2.5`, `1e9`). Returns
  /// nullopt for anything else, including integers that overflow 64 bits.
  static std::optional<Scalar> parse(std::string_view literal);

  bool is_integer() const { return std::holds_alternative<std::int64_t>(value_); }
  std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
  double as_double() const;

  /// Shortest text that parses back to the same value and kind.
  std::string to_string() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  std::variant<std::int64_t, double> value_{std::int64_t{0}};
};

/// Value comparison used by the test runner: integers compare exactly, and if
/// either side is a float the two compare within a relative tolerance.
bool scalars_match(const Scalar& actual, const Scalar& expected, double rel_eps);

}  // namespace verigen
