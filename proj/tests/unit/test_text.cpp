#include <gtest/gtest.h>

#include "verigen/error.hpp"
#include "verigen/text.hpp"
#include "verigen/workspace.hpp"

using namespace verigen;

TEST(Text, TrimAndSplit) {
  EXPECT_EQ(text::trim("  a b \n"), "a b");
  EXPECT_EQ(text::trim(""), "");
  auto lines = text::split_lines("a\r\nb\n\nc");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "a");
  EXPECT_EQ(lines[2], "");
  auto words = text::split_whitespace("  x\t y\nz ");
  EXPECT_EQ(words, (std::vector<std::string>{"x", "y", "z"}));
}

TEST(Text, WordCountsRespectIdentifierBoundaries) {
  std::string_view s = "requires a; requires_b; xrequires; requires\\valid(p);";
  EXPECT_EQ(text::count_word(s, "requires"), 2u);
  EXPECT_TRUE(text::contains_word("if (x) printf(y)", "printf"));
  EXPECT_FALSE(text::contains_word("my_printf(y)", "printf"));
}

TEST(Text, Substitute) {
  EXPECT_EQ(text::substitute("a {{x}} b {{ y }} {{z}}", {{"x", "1"}, {"y", "2"}}), "a 1 b 2 {{z}}");
}

TEST(Text, CommentsAndMasking) {
  std::string src = "int a; /* c */ // d\n\"s /* */\" b";
  auto stripped = text::strip_c_comments(src);
  EXPECT_EQ(stripped.find("c */"), std::string::npos);
  EXPECT_NE(stripped.find("\"s /* */\""), std::string::npos);
  auto masked = text::mask_comments_and_strings(src);
  EXPECT_EQ(masked.size(), src.size());
  EXPECT_EQ(masked.find("/*"), std::string::npos);
}

TEST(Text, TruncateReportsDroppedBytes) {
  EXPECT_EQ(text::truncate_bytes("abc", 5), "abc");
  auto t = text::truncate_bytes(std::string(100, 'x'), 10);
  EXPECT_EQ(t.substr(0, 10), std::string(10, 'x'));
  EXPECT_NE(t.find("truncated 90 bytes"), std::string::npos);
}

TEST(Text, FileRoundTripAndMissingFile) {
  TempDir tmp;
  text::write_file(tmp.path() / "a" / "b.txt", "hello\n");
  EXPECT_EQ(text::read_file(tmp.path() / "a" / "b.txt"), "hello\n");
  EXPECT_THROW(text::read_file(tmp.path() / "nope"), MissingFile);
}

TEST(Workspace, FreshClearsDirectory) {
  TempDir tmp;
  auto ws = Workspace::fresh(tmp.path() / "w");
  text::write_file(ws.file("x.c"), "x");
  auto again = Workspace::fresh(tmp.path() / "w");
  EXPECT_FALSE(std::filesystem::exists(again.file("x.c")));
  EXPECT_TRUE(again.dir().is_absolute());
}
