#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "verigen/signature.hpp"

namespace verigen {

enum class IoDirection { Input, Output };

struct IoMapping {
  std::string io_call;  // source text of the scanf/printf call
  std::string param_name;
  IoDirection direction = IoDirection::Input;
};

struct TransformResult {
  std::string function_source;
  Signature signature;
  std::vector<IoMapping> mapping;
};

/// Rewrites a loop-free stdin/stdout program whose only function is `main`
/// into `void fn_name(inputs..., outputs*...)`:
///
///  - each scanf target becomes an input parameter (scanf order) and its
///    local declaration is dropped;
///  - the k-th value printed on any path is assigned to output pointer k
///    (`out`, or `out1..outN` when there are several), typed by the printf
///    conversion; branches must print the same number of values;
///  - `return x;` becomes `return;` and a final `return 0;` is dropped;
///  - `#include <stdio.h>` is removed, other preprocessor lines are kept.
///
/// Supported statements: declarations of int/long/long long/unsigned/float/
/// double variables, expression statements, if/else, blocks, return, scanf
/// and printf with numeric conversions. Anything else throws
/// UnsupportedConstruct naming the construct.
TransformResult transform_main(std::string_view src, const std::string& fn_name);

}  // namespace verigen
