#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace verigen {

enum class BaseType {
  Int,
  UInt,
  Long,
  ULong,
  LongLong,
  ULongLong,
  Float,
  Double,
};

/// C spelling, e.g. "unsigned long long".
std::string_view c_type_name(BaseType t);
bool is_floating(BaseType t);

struct Param {
  std::string name;
  BaseType base_type = BaseType::Int;
  bool is_pointer = false;

  friend bool operator==(const Param&, const Param&) = default;
};

/// A `void` function declaration. Non-pointer parameters are inputs and
/// pointer parameters are outputs, each kept in declaration order.
struct Signature {
  std::string name;
  std::vector<Param> params;

  std::vector<Param> inputs() const;
  std::vector<Param> outputs() const;

  /// Canonical declaration text, e.g. `void f(int x, int *out);`.
  std::string declaration() const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Parses one C declaration. Comments are ignored and a trailing `;` is
/// optional. Throws SignatureParseError with the offending offset.
Signature parse_signature(std::string_view text);

}  // namespace verigen
