#pragma once

#include <string_view>

namespace verigen {

/// Lines of code of a single-function source: non-blank, non-comment lines
/// strictly inside the outermost braces of the first function definition.
/// A body written on the brace line counts as one line. Sources without a
/// definition fall back to every non-blank, non-preprocessor line.
std::size_t count_function_loc(std::string_view source);

}  // namespace verigen
