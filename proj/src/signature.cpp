#include "verigen/signature.hpp"

#include <cctype>
#include <set>

#include "verigen/error.hpp"
#include "verigen/text.hpp"

namespace verigen {

std::string_view c_type_name(BaseType t) {
  switch (t) {
    case BaseType::Int: return "int";
    case BaseType::UInt: return "unsigned int";
    case BaseType::Long: return "long";
    case BaseType::ULong: return "unsigned long";
    case BaseType::LongLong: return "long long";
    case BaseType::ULongLong: return "unsigned long long";
    case BaseType::Float: return "float";
    case BaseType::Double: return "double";
  }
  return "int";
}

bool is_floating(BaseType t) { return t == BaseType::Float || t == BaseType::Double; }

std::vector<Param> Signature::inputs() const {
  std::vector<Param> out;
  for (const auto& p : params)
    if (!p.is_pointer) out.push_back(p);
  return out;
}

std::vector<Param> Signature::outputs() const {
  std::vector<Param> out;
  for (const auto& p : params)
    if (p.is_pointer) out.push_back(p);
  return out;
}

std::string Signature::declaration() const {
  std::string s = "void " + name + "(";
  if (params.empty()) s += "void";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) s += ", ";
    s += c_type_name(params[i].base_type);
    s += params[i].is_pointer ? " *" : " ";
    s += params[i].name;
  }
  return s + ");";
}

namespace {

struct Token {
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view src) {
  // Comments are blanked in place so offsets stay aligned with the input.
  std::string clean(src);
  for (std::size_t i = 0; i + 1 < clean.size(); ++i) {
    if (clean[i] == '/' && clean[i + 1] == '*') {
      auto end = clean.find("*/", i + 2);
      end = end == std::string::npos ? clean.size() : end + 2;
      for (auto j = i; j < end; ++j)
        if (clean[j] != '\n') clean[j] = ' ';
    } else if (clean[i] == '/' && clean[i + 1] == '/') {
      for (auto j = i; j < clean.size() && clean[j] != '\n'; ++j) clean[j] = ' ';
    }
  }
  std::vector<Token> toks;
  std::size_t i = 0;
  while (i < clean.size()) {
    unsigned char c = static_cast<unsigned char>(clean[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < clean.size() &&
             (std::isalnum(static_cast<unsigned char>(clean[j])) || clean[j] == '_'))
        ++j;
      toks.push_back({clean.substr(i, j - i), i});
      i = j;
    } else {
      toks.push_back({std::string(1, clean[i]), i});
      ++i;
    }
  }
  return toks;
}

class SigParser {
 public:
  explicit SigParser(std::string_view src) : src_(src), toks_(lex(src)) {}

  Signature parse() {
    Signature sig;
    while (peek() == "extern" || peek() == "static" || peek() == "inline") ++i_;
    if (peek() != "void") {
      if (at_end()) fail("empty declaration");
      fail("non-void return type (only void functions are supported)");
    }
    ++i_;
    if (peek() == "*") fail("non-void return type (pointer return)");
    sig.name = expect_ident("function name");
    expect("(");
    if (peek() == "void" && peek(1) == ")") {
      i_ += 2;
    } else if (peek() == ")") {
      ++i_;
    } else {
      std::set<std::string> seen;
      while (true) {
        auto param_pos = pos();
        Param p = parse_param();
        if (!seen.insert(p.name).second)
          throw SignatureParseError(param_pos, "duplicate parameter name '" + p.name + "'");
        sig.params.push_back(std::move(p));
        if (peek() == ",") {
          ++i_;
          continue;
        }
        expect(")");
        break;
      }
    }
    if (peek() == ";") ++i_;
    if (!at_end()) fail("unexpected trailing text '" + peek() + "'");
    return sig;
  }

 private:
  Param parse_param() {
    bool is_unsigned = false, is_signed = false;
    int longs = 0;
    bool saw_int = false;
    std::string base;
    auto start = pos();
    while (true) {
      const auto& t = peek();
      if (t == "const" || t == "volatile") {
        ++i_;
      } else if (t == "unsigned") {
        is_unsigned = true;
        ++i_;
      } else if (t == "signed") {
        is_signed = true;
        ++i_;
      } else if (t == "long") {
        ++longs;
        ++i_;
      } else if (t == "int") {
        saw_int = true;
        ++i_;
      } else if (t == "float" || t == "double") {
        base = t;
        ++i_;
      } else {
        break;
      }
    }
    Param p;
    if (!base.empty()) {
      if (is_unsigned || is_signed || saw_int || longs > 1 || (base == "float" && longs))
        throw SignatureParseError(start, "invalid floating type specifiers");
      if (longs == 1) throw SignatureParseError(start, "unsupported type 'long double'");
      p.base_type = base == "float" ? BaseType::Float : BaseType::Double;
    } else if (longs == 0 && !saw_int && !is_unsigned && !is_signed) {
      throw SignatureParseError(start, "unsupported parameter type '" + peek() + "'");
    } else if (longs > 2) {
      throw SignatureParseError(start, "too many 'long' specifiers");
    } else {
      static constexpr BaseType kSigned[] = {BaseType::Int, BaseType::Long, BaseType::LongLong};
      static constexpr BaseType kUnsigned[] = {BaseType::UInt, BaseType::ULong,
                                               BaseType::ULongLong};
      p.base_type = is_unsigned ? kUnsigned[longs] : kSigned[longs];
    }
    while (peek() == "const") ++i_;
    if (peek() == "*") {
      p.is_pointer = true;
      ++i_;
      while (peek() == "const" || peek() == "restrict") ++i_;
      if (peek() == "*") fail("multi-level pointers are not supported");
    }
    p.name = expect_ident("parameter name");
    if (peek() == "[") fail("array parameters are not supported");
    return p;
  }

  const std::string& peek(std::size_t ahead = 0) const {
    static const std::string kEnd;
    return i_ + ahead < toks_.size() ? toks_[i_ + ahead].text : kEnd;
  }
  bool at_end() const { return i_ >= toks_.size(); }
  std::size_t pos() const { return at_end() ? src_.size() : toks_[i_].pos; }

  [[noreturn]] void fail(const std::string& why) const { throw SignatureParseError(pos(), why); }

  void expect(const std::string& t) {
    if (peek() != t) fail("expected '" + t + "'" + (at_end() ? "" : " before '" + peek() + "'"));
    ++i_;
  }

  std::string expect_ident(const char* what) {
    const auto& t = peek();
    if (t.empty() || !(std::isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_'))
      fail(std::string("expected ") + what);
    static const std::set<std::string> kKeywords = {
        "int", "long", "unsigned", "signed", "float", "double", "void", "const", "char", "short"};
    if (kKeywords.count(t)) fail(std::string("expected ") + what + ", found keyword '" + t + "'");
    ++i_;
    return toks_[i_ - 1].text;
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Signature parse_signature(std::string_view text) { return SigParser(text).parse(); }

}  // namespace verigen
