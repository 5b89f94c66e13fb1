#include "verigen/transform.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "verigen/error.hpp"
#include "verigen/text.hpp"

namespace verigen {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tk { Ident, Number, String, Char, Punct, Preproc };

struct Tok {
  Tk kind;
  std::string text;
  std::size_t begin;
  std::size_t end;
  int line;
};

std::vector<Tok> lex(std::string_view src) {
  static const std::vector<std::string_view> kMulti = {
      "<<=", ">>=", "->", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=",
      "-=",  "*=",  "/=", "%=", "&=", "|=", "^=", "<<", ">>"};
  std::vector<Tok> toks;
  std::size_t i = 0;
  int line = 1;
  bool line_start = true;
  auto push = [&](Tk k, std::size_t b, std::size_t e) {
    toks.push_back({k, std::string(src.substr(b, e - b)), b, e, line});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      line_start = true;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      auto end = src.find("*/", i + 2);
      end = end == std::string_view::npos ? src.size() : end + 2;
      line += static_cast<int>(std::count(src.begin() + i, src.begin() + end, '\n'));
      i = end;
      continue;
    }
    if (c == '#' && line_start) {
      std::size_t b = i;
      while (i < src.size() && src[i] != '\n') {
        if (src[i] == '\\' && i + 1 < src.size() && src[i + 1] == '\n') {
          i += 2;
          ++line;
          continue;
        }
        ++i;
      }
      push(Tk::Preproc, b, i);
      continue;
    }
    line_start = false;
    std::size_t b = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      push(Tk::Ident, b, i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      while (i < src.size()) {
        char d = src[i];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '.' || d == '_') {
          ++i;
        } else if ((d == '+' || d == '-') && (src[i - 1] == 'e' || src[i - 1] == 'E' ||
                                              src[i - 1] == 'p' || src[i - 1] == 'P')) {
          ++i;
        } else {
          break;
        }
      }
      push(Tk::Number, b, i);
    } else if (c == '"' || c == '\'') {
      ++i;
      while (i < src.size() && src[i] != c && src[i] != '\n') {
        if (src[i] == '\\') ++i;
        ++i;
      }
      if (i >= src.size() || src[i] != c)
        throw UnsupportedConstruct("unterminated literal on line " + std::to_string(line));
      ++i;
      push(c == '"' ? Tk::String : Tk::Char, b, i);
    } else {
      std::size_t len = 1;
      for (auto m : kMulti) {
        if (src.substr(i, m.size()) == m) {
          len = m.size();
          break;
        }
      }
      i += len;
      push(Tk::Punct, b, i);
    }
  }
  return toks;
}

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

struct Declarator {
  std::string name;
  std::optional<std::string> init;
};

struct Stmt {
  enum class Kind { Block, Empty, If, Return, Decl, Scanf, Printf, Expr } kind;
  std::vector<std::unique_ptr<Stmt>> children;  // Block
  std::string cond;                             // If
  std::unique_ptr<Stmt> then_s, else_s;         // If
  std::optional<std::string> expr;              // Return
  std::string type_text;                        // Decl
  BaseType type = BaseType::Int;                // Decl
  std::vector<Declarator> decls;                // Decl
  std::vector<std::string> targets;             // Scanf
  std::vector<std::string> args;                // Printf
  std::vector<BaseType> arg_types;              // Printf
  std::vector<std::size_t> slots;               // Printf, filled by analysis
  std::string text;                             // Expr, and call text for Scanf/Printf
  int line = 0;
};
using StmtPtr = std::unique_ptr<Stmt>;

[[noreturn]] void unsupported(const std::string& what, int line) {
  throw UnsupportedConstruct(what + " (line " + std::to_string(line) + ")");
}

struct Conversion {
  std::string length;
  char conv;
};

// Conversions of a printf/scanf format given the raw string literal tokens.
std::vector<Conversion> parse_format(const std::string& fmt, int line, bool* has_literal_text) {
  std::vector<Conversion> out;
  if (has_literal_text) *has_literal_text = false;
  for (std::size_t i = 0; i < fmt.size(); ++i) {
    if (fmt[i] == '\\') {
      ++i;
      continue;
    }
    if (fmt[i] != '%') {
      if (has_literal_text && !std::isspace(static_cast<unsigned char>(fmt[i])))
        *has_literal_text = true;
      continue;
    }
    ++i;
    if (i < fmt.size() && fmt[i] == '%') {
      if (has_literal_text) *has_literal_text = true;
      continue;
    }
    while (i < fmt.size() && std::strchr("-+ #0", fmt[i])) ++i;
    if (i < fmt.size() && fmt[i] == '*') unsupported("'*' in format string", line);
    while (i < fmt.size() && (std::isdigit(static_cast<unsigned char>(fmt[i])) || fmt[i] == '.')) ++i;
    std::string length;
    while (i < fmt.size() && std::strchr("hlLqjztI6432", fmt[i])) length += fmt[i++];
    if (i >= fmt.size()) unsupported("truncated conversion in format string", line);
    out.push_back({length, fmt[i]});
  }
  return out;
}

BaseType conversion_type(const Conversion& c, int line) {
  const auto& l = c.length;
  switch (c.conv) {
    case 'd':
    case 'i':
      if (l.empty()) return BaseType::Int;
      if (l == "l") return BaseType::Long;
      if (l == "ll" || l == "I64" || l == "q") return BaseType::LongLong;
      break;
    case 'u':
      if (l.empty()) return BaseType::UInt;
      if (l == "l") return BaseType::ULong;
      if (l == "ll" || l == "I64" || l == "q") return BaseType::ULongLong;
      break;
    case 'f':
    case 'F':
    case 'e':
    case 'E':
    case 'g':
    case 'G':
      if (l.empty() || l == "l") return BaseType::Double;
      break;
    default:
      break;
  }
  unsupported("format conversion '%" + l + std::string(1, c.conv) + "'", line);
}

std::optional<BaseType> base_type_from(const std::vector<std::string>& specs, int line) {
  int longs = 0;
  bool is_unsigned = false, any = false;
  std::string fp;
  for (const auto& s : specs) {
    if (s == "const" || s == "volatile" || s == "register" || s == "auto") continue;
    any = true;
    if (s == "unsigned") is_unsigned = true;
    else if (s == "signed" || s == "int") {
    } else if (s == "long") ++longs;
    else if (s == "float" || s == "double") fp = s;
    else unsupported("variable type '" + s + "'", line);
  }
  if (!any) return std::nullopt;
  if (!fp.empty()) {
    if (longs || is_unsigned) unsupported("variable type 'long double'", line);
    return fp == "float" ? BaseType::Float : BaseType::Double;
  }
  if (longs > 2) unsupported("too many 'long' specifiers", line);
  static constexpr BaseType kS[] = {BaseType::Int, BaseType::Long, BaseType::LongLong};
  static constexpr BaseType kU[] = {BaseType::UInt, BaseType::ULong, BaseType::ULongLong};
  return is_unsigned ? kU[longs] : kS[longs];
}

bool is_type_word(const std::string& s) {
  static const std::set<std::string> kWords = {"int",    "long",     "short",    "unsigned",
                                               "signed", "float",    "double",   "char",
                                               "const",  "volatile", "register", "auto",
                                               "struct", "union",    "enum",     "_Bool",
                                               "bool",   "static"};
  return kWords.count(s) > 0;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  Parser(std::string_view src, std::vector<Tok> toks) : src_(src), toks_(std::move(toks)) {}

  std::vector<std::string> preproc;
  StmtPtr body;

  void parse_program() {
    bool saw_main = false;
    while (i_ < toks_.size()) {
      if (cur().kind == Tk::Preproc) {
        preproc.push_back(cur().text);
        ++i_;
        continue;
      }
      if (saw_main) unsupported("code after main (only a single main function is supported)", cur().line);
      parse_main();
      saw_main = true;
    }
    if (!saw_main) throw UnsupportedConstruct("no main function found");
  }

 private:
  const Tok& cur() const { return toks_[std::min(i_, toks_.size() - 1)]; }
  bool at_end() const { return i_ >= toks_.size(); }
  bool is(std::string_view t) const { return !at_end() && cur().text == t; }
  int line() const { return toks_.empty() ? 0 : cur().line; }

  void expect(std::string_view t) {
    if (!is(t))
      unsupported("expected '" + std::string(t) + "'" +
                      (at_end() ? " at end of input" : " before '" + cur().text + "'"),
                  line());
    ++i_;
  }

  std::string slice(std::size_t from_tok, std::size_t to_tok) const {
    // Tokens [from_tok, to_tok), comments dropped and whitespace collapsed.
    if (from_tok >= to_tok) return {};
    auto b = toks_[from_tok].begin, e = toks_[to_tok - 1].end;
    return text::normalize_space(text::strip_c_comments(src_.substr(b, e - b)));
  }

  void check_expression(std::size_t from, std::size_t to) const {
    static const std::set<std::string> kLoops = {"for", "while", "do", "goto", "switch"};
    static const std::set<std::string> kIo = {"scanf",   "printf",  "puts",   "putchar",
                                              "getchar", "gets",    "fgets",  "fscanf",
                                              "fprintf", "sscanf",  "sprintf", "exit",
                                              "main",    "cin",     "cout",   "getline"};
    for (auto k = from; k < to; ++k) {
      const auto& t = toks_[k];
      if (t.kind != Tk::Ident) continue;
      if (kLoops.count(t.text)) unsupported("loop or jump '" + t.text + "'", t.line);
      if (kIo.count(t.text)) unsupported("'" + t.text + "' used inside an expression", t.line);
    }
  }

  // Index one past the matching close of the bracket at i_.
  std::size_t match(std::size_t open) const {
    int depth = 0;
    for (auto k = open; k < toks_.size(); ++k) {
      const auto& t = toks_[k].text;
      if (toks_[k].kind != Tk::Punct) continue;
      if (t == "(" || t == "[" || t == "{") ++depth;
      if ((t == ")" || t == "]" || t == "}") && --depth == 0) return k + 1;
    }
    unsupported("unbalanced brackets", toks_[open].line);
  }

  // Scans to the first of `stops` at bracket depth 0.
  std::size_t scan_to(std::size_t from, std::initializer_list<std::string_view> stops) const {
    auto k = from;
    while (k < toks_.size()) {
      const auto& t = toks_[k];
      if (t.kind == Tk::Punct) {
        for (auto s : stops)
          if (t.text == s) return k;
        if (t.text == "(" || t.text == "[" || t.text == "{") {
          k = match(k);
          continue;
        }
      }
      ++k;
    }
    unsupported("missing ';'", toks_.empty() ? 0 : toks_.back().line);
  }

  void parse_main() {
    int ln = line();
    if (is("int") || is("void")) ++i_;
    if (!is("main")) {
      for (auto k = i_; k + 1 < toks_.size() && toks_[k].text != ";" && toks_[k].text != "{"; ++k)
        if (toks_[k].kind == Tk::Ident && toks_[k + 1].text == "(")
          unsupported("function '" + toks_[k].text + "' (only main is supported)", ln);
      unsupported("top-level declaration outside main", ln);
    }
    ++i_;
    expect("(");
    if (is("void")) ++i_;
    if (!is(")")) unsupported("main with parameters", ln);
    expect(")");
    if (!is("{")) unsupported("main without a body", ln);
    body = parse_statement();
  }

  StmtPtr parse_statement() {
    if (at_end()) unsupported("unexpected end of input", line());
    auto s = std::make_unique<Stmt>();
    s->line = line();
    const auto& t = cur();
    if (t.kind == Tk::Preproc) unsupported("preprocessor directive inside main", t.line);
    if (t.text == "{") {
      s->kind = Stmt::Kind::Block;
      ++i_;
      while (!is("}")) {
        if (at_end()) unsupported("unterminated block", s->line);
        s->children.push_back(parse_statement());
      }
      ++i_;
      return s;
    }
    if (t.text == ";") {
      s->kind = Stmt::Kind::Empty;
      ++i_;
      return s;
    }
    if (t.kind == Tk::Ident) {
      if (t.text == "for" || t.text == "while" || t.text == "do")
        unsupported("loop '" + t.text + "'", t.line);
      if (t.text == "switch" || t.text == "goto" || t.text == "break" || t.text == "continue" ||
          t.text == "case" || t.text == "default")
        unsupported("statement '" + t.text + "'", t.line);
      if (t.text == "if") return parse_if();
      if (t.text == "return") {
        s->kind = Stmt::Kind::Return;
        ++i_;
        auto end = scan_to(i_, {";"});
        check_expression(i_, end);
        if (end > i_) s->expr = slice(i_, end);
        i_ = end + 1;
        return s;
      }
      if (t.text == "scanf") return parse_scanf();
      if (t.text == "printf") return parse_printf();
      if (is_type_word(t.text)) return parse_decl();
    }
    s->kind = Stmt::Kind::Expr;
    auto end = scan_to(i_, {";"});
    check_expression(i_, end);
    s->text = slice(i_, end);
    i_ = end + 1;
    return s;
  }

  StmtPtr parse_if() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::If;
    s->line = line();
    ++i_;
    if (!is("(")) unsupported("expected '(' after if", s->line);
    auto close = match(i_);
    check_expression(i_ + 1, close - 1);
    s->cond = slice(i_ + 1, close - 1);
    i_ = close;
    s->then_s = parse_statement();
    if (is("else")) {
      ++i_;
      s->else_s = parse_statement();
    }
    return s;
  }

  StmtPtr parse_decl() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::Decl;
    s->line = line();
    std::vector<std::string> specs;
    auto type_begin = i_;
    while (!at_end() && cur().kind == Tk::Ident && is_type_word(cur().text)) {
      if (cur().text == "struct" || cur().text == "union" || cur().text == "enum" ||
          cur().text == "char" || cur().text == "short" || cur().text == "_Bool" ||
          cur().text == "bool" || cur().text == "static")
        unsupported("variable type '" + cur().text + "'", s->line);
      specs.push_back(cur().text);
      ++i_;
    }
    auto bt = base_type_from(specs, s->line);
    if (!bt) unsupported("declaration without a type", s->line);
    s->type = *bt;
    s->type_text = slice(type_begin, i_);
    while (true) {
      if (is("*")) unsupported("pointer variable", s->line);
      if (at_end() || cur().kind != Tk::Ident) unsupported("expected a variable name", s->line);
      Declarator d{cur().text, std::nullopt};
      ++i_;
      if (is("[")) unsupported("array variable '" + d.name + "'", s->line);
      if (is("(")) unsupported("nested function declaration '" + d.name + "'", s->line);
      if (is("=")) {
        ++i_;
        auto end = scan_to(i_, {",", ";"});
        check_expression(i_, end);
        d.init = slice(i_, end);
        i_ = end;
      }
      s->decls.push_back(std::move(d));
      if (is(",")) {
        ++i_;
        continue;
      }
      expect(";");
      break;
    }
    return s;
  }

  // Reads adjacent string literal tokens, returning their unquoted contents.
  std::string read_format(int ln) {
    if (at_end() || cur().kind != Tk::String) unsupported("format must be a string literal", ln);
    std::string fmt;
    while (!at_end() && cur().kind == Tk::String) {
      fmt += cur().text.substr(1, cur().text.size() - 2);
      ++i_;
    }
    return fmt;
  }

  StmtPtr parse_scanf() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::Scanf;
    s->line = line();
    auto start = i_;
    ++i_;
    expect("(");
    auto convs = parse_format(read_format(s->line), s->line, nullptr);
    for (const auto& c : convs) (void)conversion_type(c, s->line);
    while (is(",")) {
      ++i_;
      if (!is("&")) unsupported("scanf argument that is not '&variable'", s->line);
      ++i_;
      if (at_end() || cur().kind != Tk::Ident) unsupported("scanf target must be a variable", s->line);
      s->targets.push_back(cur().text);
      ++i_;
      if (!is(",") && !is(")")) unsupported("scanf target must be a plain variable", s->line);
    }
    expect(")");
    s->text = slice(start, i_);
    expect(";");
    if (convs.size() != s->targets.size())
      unsupported("scanf conversions do not match its arguments", s->line);
    return s;
  }

  StmtPtr parse_printf() {
    auto s = std::make_unique<Stmt>();
    s->kind = Stmt::Kind::Printf;
    s->line = line();
    auto start = i_;
    ++i_;
    expect("(");
    bool literal = false;
    auto convs = parse_format(read_format(s->line), s->line, &literal);
    for (const auto& c : convs) s->arg_types.push_back(conversion_type(c, s->line));
    while (is(",")) {
      ++i_;
      auto end = scan_to(i_, {",", ")"});
      check_expression(i_, end);
      s->args.push_back(slice(i_, end));
      i_ = end;
    }
    expect(")");
    s->text = slice(start, i_);
    expect(";");
    if (convs.size() != s->args.size())
      unsupported("printf conversions do not match its arguments", s->line);
    if (convs.empty() && literal) unsupported("printf of literal text", s->line);
    return s;
  }

  std::string_view src_;
  std::vector<Tok> toks_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Analysis: assign parameters to scanf targets and output slots to printf
// arguments.
// ---------------------------------------------------------------------------

class Analyzer {
 public:
  std::vector<Param> inputs;
  std::vector<std::string> input_calls;
  std::set<std::string> promoted;
  std::vector<std::optional<BaseType>> out_types;
  std::vector<std::size_t> return_counts;

  std::optional<std::size_t> walk(Stmt& s, std::size_t count, bool top) {
    switch (s.kind) {
      case Stmt::Kind::Block: {
        std::optional<std::size_t> c = count;
        for (auto& child : s.children) {
          if (!c) unsupported("unreachable code after return", child->line);
          c = walk(*child, *c, top);
        }
        return c;
      }
      case Stmt::Kind::Decl:
        for (const auto& d : s.decls) declared_[d.name] = s.type;
        if (top)
          for (const auto& d : s.decls) top_level_.insert(d.name);
        return count;
      case Stmt::Kind::Scanf:
        if (!top) unsupported("scanf inside a branch or nested block", s.line);
        for (const auto& t : s.targets) {
          if (!top_level_.count(t)) unsupported("scanf target '" + t + "' is not declared", s.line);
          if (!promoted.insert(t).second) unsupported("variable '" + t + "' is read twice", s.line);
          inputs.push_back({t, declared_.at(t), false});
          input_calls.push_back(s.text);
        }
        return count;
      case Stmt::Kind::Printf:
        s.slots.clear();
        for (std::size_t k = 0; k < s.args.size(); ++k) {
          auto slot = count + k;
          if (out_types.size() <= slot) out_types.resize(slot + 1);
          if (out_types[slot] && *out_types[slot] != s.arg_types[k])
            unsupported("output " + std::to_string(slot + 1) + " printed with different types",
                        s.line);
          out_types[slot] = s.arg_types[k];
          s.slots.push_back(slot);
        }
        return count + s.args.size();
      case Stmt::Kind::If: {
        auto t = walk(*s.then_s, count, false);
        auto e = s.else_s ? walk(*s.else_s, count, false) : std::optional<std::size_t>(count);
        if (!t) return e;
        if (!e) return t;
        if (*t != *e) unsupported("branches print different numbers of values", s.line);
        return t;
      }
      case Stmt::Kind::Return:
        return_counts.push_back(count);
        return std::nullopt;
      case Stmt::Kind::Empty:
      case Stmt::Kind::Expr:
        return count;
    }
    return count;
  }

 private:
  std::map<std::string, BaseType> declared_;
  std::set<std::string> top_level_;
};

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

class Printer {
 public:
  Printer(const std::set<std::string>& promoted, std::vector<std::string> out_names,
          const Stmt* final_return)
      : promoted_(promoted), out_names_(std::move(out_names)), final_return_(final_return) {}

  // Flat statement lines for a non-block statement at `indent`.
  std::vector<std::string> lines(const Stmt& s, int indent) const {
    std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    std::vector<std::string> out;
    switch (s.kind) {
      case Stmt::Kind::Block:
        out.push_back(pad + "{");
        for (const auto& c : s.children) {
          auto inner = lines(*c, indent + 1);
          out.insert(out.end(), inner.begin(), inner.end());
        }
        out.push_back(pad + "}");
        break;
      case Stmt::Kind::Empty:
      case Stmt::Kind::Scanf:
        break;
      case Stmt::Kind::Expr:
        out.push_back(pad + s.text + ";");
        break;
      case Stmt::Kind::Return:
        if (&s != final_return_) out.push_back(pad + "return;");
        break;
      case Stmt::Kind::Decl: {
        std::string d;
        for (const auto& decl : s.decls) {
          if (promoted_.count(decl.name)) continue;
          if (!d.empty()) d += ", ";
          d += decl.name;
          if (decl.init) d += " = " + *decl.init;
        }
        if (!d.empty()) out.push_back(pad + s.type_text + " " + d + ";");
        break;
      }
      case Stmt::Kind::Printf:
        for (std::size_t k = 0; k < s.args.size(); ++k)
          out.push_back(pad + "*" + out_names_[s.slots[k]] + " = " + s.args[k] + ";");
        break;
      case Stmt::Kind::If: {
        out.push_back(pad + "if (" + s.cond + ")");
        append_body(out, *s.then_s, indent);
        const Stmt* e = s.else_s.get();
        while (e) {
          if (e->kind == Stmt::Kind::If) {
            out.push_back(pad + "else if (" + e->cond + ")");
            append_body(out, *e->then_s, indent);
            e = e->else_s.get();
          } else {
            out.push_back(pad + "else");
            append_body(out, *e, indent);
            e = nullptr;
          }
        }
        break;
      }
    }
    return out;
  }

 private:
  void append_body(std::vector<std::string>& out, const Stmt& body, int indent) const {
    std::string pad(static_cast<std::size_t>(indent) * 4, ' ');
    if (body.kind == Stmt::Kind::Block) {
      auto b = lines(body, indent);
      out.insert(out.end(), b.begin(), b.end());
      return;
    }
    auto b = lines(body, indent + 1);
    if (b.size() == 1) {
      out.push_back(b.front());
      return;
    }
    out.push_back(pad + "{");
    out.insert(out.end(), b.begin(), b.end());
    out.push_back(pad + "}");
  }

  const std::set<std::string>& promoted_;
  std::vector<std::string> out_names_;
  const Stmt* final_return_;
};

bool is_stdio_include(const std::string& line) {
  auto t = text::normalize_space(line);
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  return t == "#include<stdio.h>" || t == "#include\"stdio.h\"";
}

std::set<std::string> identifiers(const std::vector<Tok>& toks) {
  std::set<std::string> out;
  for (const auto& t : toks)
    if (t.kind == Tk::Ident) out.insert(t.text);
  return out;
}

}  // namespace

TransformResult transform_main(std::string_view src, const std::string& fn_name) {
  auto toks = lex(src);
  auto idents = identifiers(toks);
  Parser parser(src, toks);
  parser.parse_program();

  Analyzer an;
  auto final_count = an.walk(*parser.body, 0, true);

  std::set<std::size_t> path_counts(an.return_counts.begin(), an.return_counts.end());
  if (final_count) path_counts.insert(*final_count);
  if (path_counts.size() > 1)
    throw UnsupportedConstruct("execution paths print different numbers of values");
  std::size_t n_out = path_counts.empty() ? 0 : *path_counts.begin();
  if (n_out == 0) throw UnsupportedConstruct("program prints no values, so it has no output channel");
  for (std::size_t k = 0; k < n_out; ++k)
    if (k >= an.out_types.size() || !an.out_types[k])
      throw UnsupportedConstruct("output " + std::to_string(k + 1) + " has no printf site");

  std::vector<std::string> out_names;
  for (std::size_t k = 0; k < n_out; ++k) {
    std::string name = n_out == 1 ? "out" : "out" + std::to_string(k + 1);
    while (idents.count(name) || name == fn_name) name += "_";
    out_names.push_back(name);
  }

  TransformResult result;
  result.signature.name = fn_name;
  for (std::size_t k = 0; k < an.inputs.size(); ++k) {
    result.signature.params.push_back(an.inputs[k]);
    result.mapping.push_back({an.input_calls[k], an.inputs[k].name, IoDirection::Input});
  }
  for (std::size_t k = 0; k < n_out; ++k)
    result.signature.params.push_back({out_names[k], *an.out_types[k], true});

  std::vector<const Stmt*> printfs;
  std::function<void(const Stmt&)> collect = [&](const Stmt& s) {
    if (s.kind == Stmt::Kind::Printf) printfs.push_back(&s);
    for (const auto& c : s.children) collect(*c);
    if (s.then_s) collect(*s.then_s);
    if (s.else_s) collect(*s.else_s);
  };
  collect(*parser.body);
  for (const auto* p : printfs)
    for (auto slot : p->slots)
      result.mapping.push_back({p->text, out_names[slot], IoDirection::Output});

  const Stmt* final_return = nullptr;
  if (!parser.body->children.empty() && parser.body->children.back()->kind == Stmt::Kind::Return)
    final_return = parser.body->children.back().get();

  std::string out;
  bool any_pre = false;
  for (const auto& p : parser.preproc) {
    if (is_stdio_include(p)) continue;
    out += p + "\n";
    any_pre = true;
  }
  if (any_pre) out += "\n";
  auto decl = result.signature.declaration();
  out += decl.substr(0, decl.size() - 1) + "\n";
  Printer printer(an.promoted, out_names, final_return);
  for (const auto& l : printer.lines(*parser.body, 0)) out += l + "\n";

  for (auto banned : {"scanf", "printf", "stdio"}) {
    if (text::contains_word(out, banned))
      throw UnsupportedConstruct(std::string("'") + banned + "' remains after transformation");
  }
  result.function_source = std::move(out);
  return result;
}

}  // namespace verigen
