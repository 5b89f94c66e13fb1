#include "verigen/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "verigen/error.hpp"

namespace verigen::text {

namespace {
bool is_ident(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
}  // namespace

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto nl = s.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < s.size()) out.emplace_back(s.substr(start));
      break;
    }
    auto line = s.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.emplace_back(line);
    start = nl + 1;
  }
  return out;
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool starts_with_word(std::string_view s, std::string_view word) {
  return s.substr(0, word.size()) == word &&
         (s.size() == word.size() || !is_ident(s[word.size()]));
}

std::size_t count_word(std::string_view haystack, std::string_view word) {
  if (word.empty()) return 0;
  std::size_t n = 0;
  for (auto pos = haystack.find(word); pos != std::string_view::npos;
       pos = haystack.find(word, pos + 1)) {
    bool left_ok = pos == 0 || !is_ident(haystack[pos - 1]);
    auto end = pos + word.size();
    bool right_ok = end >= haystack.size() || !is_ident(haystack[end]);
    if (left_ok && right_ok) ++n;
  }
  return n;
}

bool contains_word(std::string_view haystack, std::string_view word) {
  return count_word(haystack, word) > 0;
}

std::string substitute(std::string_view tmpl,
                       const std::vector<std::pair<std::string, std::string>>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    auto open = tmpl.find("{{", i);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(i));
      break;
    }
    auto close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      out.append(tmpl.substr(i));
      break;
    }
    out.append(tmpl.substr(i, open - i));
    auto key = trim(tmpl.substr(open + 2, close - open - 2));
    bool found = false;
    for (const auto& [k, v] : values) {
      if (k == key) {
        out.append(v);
        found = true;
        break;
      }
    }
    if (!found) out.append(tmpl.substr(open, close + 2 - open));
    i = close + 2;
  }
  return out;
}

std::string strip_c_comments(std::string_view src) {
  std::string out;
  out.reserve(src.size());
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (c == '"' || c == '\'') {
      char q = c;
      out.push_back(c);
      ++i;
      while (i < src.size() && src[i] != q && src[i] != '\n') {
        if (src[i] == '\\' && i + 1 < src.size()) out.push_back(src[i++]);
        out.push_back(src[i++]);
      }
      if (i < src.size()) out.push_back(src[i++]);
    } else if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      i += 2;
      while (i < src.size() && !(src[i] == '*' && i + 1 < src.size() && src[i + 1] == '/')) {
        if (src[i] == '\n') out.push_back('\n');
        ++i;
      }
      i = std::min(src.size(), i + 2);
      out.push_back(' ');
    } else {
      out.push_back(c);
      ++i;
    }
  }
  return out;
}

std::string mask_comments_and_strings(std::string_view src) {
  std::string out(src);
  std::size_t i = 0;
  auto blank = [&](std::size_t j) {
    if (out[j] != '\n') out[j] = ' ';
  };
  while (i < out.size()) {
    char c = out[i];
    if (c == '"' || c == '\'') {
      ++i;
      while (i < out.size() && out[i] != c && out[i] != '\n') {
        if (out[i] == '\\' && i + 1 < out.size()) blank(i++);
        blank(i++);
      }
      if (i < out.size()) ++i;
    } else if (c == '/' && i + 1 < out.size() && out[i + 1] == '/') {
      while (i < out.size() && out[i] != '\n') blank(i++);
    } else if (c == '/' && i + 1 < out.size() && out[i + 1] == '*') {
      auto end = out.find("*/", i + 2);
      end = end == std::string::npos ? out.size() : end + 2;
      while (i < end) blank(i++);
    } else {
      ++i;
    }
  }
  return out;
}

std::string normalize_space(std::string_view s) {
  std::string out;
  for (const auto& w : split_whitespace(s)) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

std::string truncate_bytes(std::string_view s, std::size_t cap) {
  if (s.size() <= cap) return std::string(s);
  std::string out(s.substr(0, cap));
  out += "\n[... truncated " + std::to_string(s.size() - cap) + " bytes]\n";
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw MissingFile("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, std::string_view contents) {
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("short write to " + p.string());
}

}  // namespace verigen::text
