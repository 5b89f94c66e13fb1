#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace verigen::text {

std::string trim(std::string_view s);
std::vector<std::string> split_lines(std::string_view s);
std::vector<std::string> split_whitespace(std::string_view s);
bool starts_with_word(std::string_view s, std::string_view word);

/// Occurrences of `word` delimited by non-identifier characters.
std::size_t count_word(std::string_view haystack, std::string_view word);
bool contains_word(std::string_view haystack, std::string_view word);

/// Replaces every `{{key}}` marker. Unknown markers are left untouched.
std::string substitute(std::string_view tmpl,
                       const std::vector<std::pair<std::string, std::string>>& values);

/// Removes C block and line comments, keeping newlines so line structure holds.
std::string strip_c_comments(std::string_view src);

/// Same length as `src` with comment and string-literal contents replaced by
/// spaces (newlines kept), so offsets into the result index the original.
std::string mask_comments_and_strings(std::string_view src);

/// Collapses every whitespace run to a single space and trims.
std::string normalize_space(std::string_view s);

/// Cuts `s` to at most `cap` bytes, appending a marker when truncated.
std::string truncate_bytes(std::string_view s, std::size_t cap);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, std::string_view contents);

}  // namespace verigen::text
