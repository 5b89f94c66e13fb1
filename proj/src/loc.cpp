#include "verigen/loc.hpp"

#include "verigen/text.hpp"

namespace verigen {

std::size_t count_function_loc(std::string_view source) {
  std::string clean = text::strip_c_comments(source);

  // First top-level '{' that follows a ')' opens the definition body.
  std::size_t open = std::string::npos;
  int parens = 0;
  char last_sig = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    char c = clean[i];
    if (c == '#' && (i == 0 || clean[i - 1] == '\n')) {
      while (i < clean.size() && clean[i] != '\n') ++i;
      continue;
    }
    if (c == '(') ++parens;
    if (c == ')') --parens;
    if (c == '{' && parens == 0 && last_sig == ')') {
      open = i;
      break;
    }
    if (c == ';') last_sig = 0;
    if (!std::isspace(static_cast<unsigned char>(c))) last_sig = c;
  }

  std::size_t n = 0;
  if (open == std::string::npos) {
    for (const auto& line : text::split_lines(clean)) {
      auto t = text::trim(line);
      if (!t.empty() && t[0] != '#') ++n;
    }
    return n;
  }

  int depth = 0;
  std::size_t close = clean.size();
  for (std::size_t i = open; i < clean.size(); ++i) {
    if (clean[i] == '{') ++depth;
    if (clean[i] == '}' && --depth == 0) {
      close = i;
      break;
    }
  }
  for (const auto& line : text::split_lines(std::string_view(clean).substr(open + 1, close - open - 1)))
    if (!text::trim(line).empty()) ++n;
  return n;
}

}  // namespace verigen
