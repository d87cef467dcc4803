/*
 * Copyright (c) 2026, The SCOOP Workbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "scoopwb/lang/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace scoopwb::lang {

namespace {

enum class Tok {
  Ident,
  Int,
  Keyword,
  Symbol,
  Eof,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  SourcePos pos;
};

const std::set<std::string, std::less<>> kKeywords = {
    "and",    "attribute", "class",  "command", "create",   "do",
    "else",   "end",       "false",  "if",      "not",      "or",
    "query",  "repeat",    "require", "result", "root",     "separate",
    "then",   "times",     "true",   "INTEGER", "BOOLEAN",
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Eof:
      return "end of input";
    case Tok::Ident:
      return "identifier '" + t.text + "'";
    case Tok::Int:
      return "integer " + t.text;
    default:
      return "'" + t.text + "'";
  }
}

std::string join_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += ", ";
    out += expected[i];
  }
  return out;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.pos = {line_, col_};
      if (at_end()) {
        t.kind = Tok::Eof;
        out.push_back(std::move(t));
        return out;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
          word += advance();
        }
        t.kind = kKeywords.count(word) ? Tok::Keyword : Tok::Ident;
        t.text = std::move(word);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
        t.kind = Tok::Int;
        t.text = std::move(digits);
      } else {
        t.kind = Tok::Symbol;
        if (c == ':' && peek(1) == '=') {
          t.text = ":=";
          advance();
          advance();
        } else if (c == '<' && peek(1) == '=') {
          t.text = "<=";
          advance();
          advance();
        } else if (std::string_view(":,.();+-=<").find(c) != std::string_view::npos) {
          t.text = std::string(1, advance());
        } else {
          throw ParseError(t.pos, {}, std::string("character '") + c + "'");
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }
  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_space_and_comments() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == '-' && peek(1) == '-') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    Program p;
    while (check_kw("class")) p.classes.push_back(class_decl());
    expect_kw("root");
    p.root = stmts();
    expect_kw("end");
    if (cur().kind != Tok::Eof) {
      note("end of input");
      fail();
    }
    return p;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& ahead(std::size_t n) const {
    return toks_[std::min(i_ + n, toks_.size() - 1)];
  }

  void note(std::string what) {
    if (expected_at_ != i_) {
      expected_.clear();
      expected_at_ = i_;
    }
    expected_.insert(std::move(what));
  }

  [[noreturn]] void fail() {
    std::vector<std::string> exp;
    if (expected_at_ == i_) exp.assign(expected_.begin(), expected_.end());
    throw ParseError(cur().pos, std::move(exp), describe(cur()));
  }

  Token take() { return toks_[i_++]; }

  bool check_kw(std::string_view kw) {
    note("'" + std::string(kw) + "'");
    return cur().kind == Tok::Keyword && cur().text == kw;
  }
  bool check_sym(std::string_view s) {
    note("'" + std::string(s) + "'");
    return cur().kind == Tok::Symbol && cur().text == s;
  }
  bool check_ident() {
    note("identifier");
    return cur().kind == Tok::Ident;
  }
  bool accept_kw(std::string_view kw) {
    if (!check_kw(kw)) return false;
    take();
    return true;
  }
  bool accept_sym(std::string_view s) {
    if (!check_sym(s)) return false;
    take();
    return true;
  }
  Token expect_kw(std::string_view kw) {
    if (!check_kw(kw)) fail();
    return take();
  }
  Token expect_sym(std::string_view s) {
    if (!check_sym(s)) fail();
    return take();
  }
  Token expect_ident() {
    if (!check_ident()) fail();
    return take();
  }

  std::int64_t expect_int() {
    note("integer");
    if (cur().kind != Tok::Int) fail();
    const Token& t = cur();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
      throw ParseError(t.pos, {"integer within 64-bit range"}, describe(t));
    }
    take();
    return v;
  }

  ClassDecl class_decl() {
    ClassDecl c;
    c.pos = expect_kw("class").pos;
    c.name = expect_ident().text;
    while (check_kw("attribute")) {
      AttributeDecl a;
      a.pos = take().pos;
      a.name = expect_ident().text;
      expect_sym(":");
      a.type = typeref();
      c.attributes.push_back(std::move(a));
    }
    for (;;) {
      bool is_cmd = check_kw("command");
      bool is_query = check_kw("query");
      if (!is_cmd && !is_query) break;
      c.methods.push_back(method_decl());
    }
    expect_kw("end");
    return c;
  }

  MethodDecl method_decl() {
    MethodDecl m;
    Token kw = take();
    m.pos = kw.pos;
    m.kind = kw.text == "query" ? MethodKind::Query : MethodKind::Command;
    m.name = expect_ident().text;
    if (accept_sym("(")) {
      do {
        Param p;
        p.pos = cur().pos;
        p.name = expect_ident().text;
        expect_sym(":");
        p.type = typeref();
        m.params.push_back(std::move(p));
      } while (accept_sym(","));
      expect_sym(")");
    }
    if (m.kind == MethodKind::Query) {
      expect_sym(":");
      m.result_type = typeref();
    }
    expect_kw("do");
    m.body = stmts();
    if (m.kind == MethodKind::Query) {
      if (accept_kw("result")) {
        expect_sym(":=");
        m.result_expr = expr();
        accept_sym(";");
      }
    }
    expect_kw("end");
    return m;
  }

  TypeRef typeref() {
    bool sep = accept_kw("separate");
    if (accept_kw("INTEGER")) {
      if (sep) throw ParseError(toks_[i_ - 1].pos, {"class name"}, "'INTEGER' after 'separate'");
      return TypeRef::integer();
    }
    if (accept_kw("BOOLEAN")) {
      if (sep) throw ParseError(toks_[i_ - 1].pos, {"class name"}, "'BOOLEAN' after 'separate'");
      return TypeRef::boolean();
    }
    if (!sep) {
      note("'INTEGER'");
      note("'BOOLEAN'");
    }
    return TypeRef::of_class(expect_ident().text, sep);
  }

  bool starts_stmt() {
    bool yes = false;
    yes |= check_kw("create");
    yes |= check_kw("separate");
    yes |= check_kw("if");
    yes |= check_kw("repeat");
    yes |= check_ident();
    return yes;
  }

  std::vector<Stmt> stmts() {
    std::vector<Stmt> out;
    for (;;) {
      while (accept_sym(";")) {
      }
      if (!starts_stmt()) break;
      out.push_back(stmt());
    }
    return out;
  }

  Stmt stmt() {
    SourcePos pos = cur().pos;
    if (accept_kw("create")) {
      bool sep = accept_kw("separate");
      std::string var = expect_ident().text;
      expect_sym(":");
      std::string cls = expect_ident().text;
      return Stmt::create(std::move(var), std::move(cls), sep, pos);
    }
    if (accept_kw("separate")) {
      std::vector<std::string> targets;
      do {
        targets.push_back(expect_ident().text);
      } while (accept_sym(","));
      std::optional<Expr> guard;
      if (accept_kw("require")) guard = expr();
      expect_kw("do");
      auto body = stmts();
      expect_kw("end");
      return Stmt::separate_block(std::move(targets), std::move(guard), std::move(body), pos);
    }
    if (accept_kw("if")) {
      Expr cond = expr();
      expect_kw("then");
      auto then_body = stmts();
      std::vector<Stmt> else_body;
      if (accept_kw("else")) else_body = stmts();
      expect_kw("end");
      return Stmt::if_else(std::move(cond), std::move(then_body), std::move(else_body), pos);
    }
    if (accept_kw("repeat")) {
      SourcePos count_pos = cur().pos;
      std::int64_t n = expect_int();
      if (n <= 0) throw ParseError(count_pos, {"positive repeat count"}, "integer " + std::to_string(n));
      expect_kw("times");
      auto body = stmts();
      expect_kw("end");
      return Stmt::repeat(n, std::move(body), pos);
    }
    std::string name = expect_ident().text;
    if (accept_sym(":=")) return Stmt::assign(std::move(name), expr(), pos);
    expect_sym(".");
    std::string method = expect_ident().text;
    return Stmt::call(std::move(name), std::move(method), call_args(), pos);
  }

  std::vector<Expr> call_args() {
    std::vector<Expr> args;
    if (accept_sym("(")) {
      do {
        args.push_back(expr());
      } while (accept_sym(","));
      expect_sym(")");
    }
    return args;
  }

  Expr expr() { return or_expr(); }

  Expr or_expr() {
    Expr lhs = and_expr();
    for (;;) {
      SourcePos pos = cur().pos;
      if (!accept_kw("or")) return lhs;
      lhs = Expr::binary(BinaryOp::Or, std::move(lhs), and_expr(), pos);
    }
  }

  Expr and_expr() {
    Expr lhs = not_expr();
    for (;;) {
      SourcePos pos = cur().pos;
      if (!accept_kw("and")) return lhs;
      lhs = Expr::binary(BinaryOp::And, std::move(lhs), not_expr(), pos);
    }
  }

  Expr not_expr() {
    SourcePos pos = cur().pos;
    if (accept_kw("not")) return Expr::negate(not_expr(), pos);
    return cmp_expr();
  }

  Expr cmp_expr() {
    Expr lhs = add_expr();
    SourcePos pos = cur().pos;
    if (accept_sym("=")) return Expr::binary(BinaryOp::Eq, std::move(lhs), add_expr(), pos);
    if (accept_sym("<=")) return Expr::binary(BinaryOp::Le, std::move(lhs), add_expr(), pos);
    if (accept_sym("<")) return Expr::binary(BinaryOp::Lt, std::move(lhs), add_expr(), pos);
    return lhs;
  }

  Expr add_expr() {
    Expr lhs = primary();
    for (;;) {
      SourcePos pos = cur().pos;
      if (accept_sym("+")) {
        lhs = Expr::binary(BinaryOp::Add, std::move(lhs), primary(), pos);
      } else if (accept_sym("-")) {
        lhs = Expr::binary(BinaryOp::Sub, std::move(lhs), primary(), pos);
      } else {
        return lhs;
      }
    }
  }

  Expr primary() {
    SourcePos pos = cur().pos;
    note("integer");
    if (cur().kind == Tok::Int) return Expr::int_lit(expect_int(), pos);
    if (accept_kw("true")) return Expr::bool_lit(true, pos);
    if (accept_kw("false")) return Expr::bool_lit(false, pos);
    if (accept_sym("(")) {
      Expr e = expr();
      expect_sym(")");
      return e;
    }
    std::string name = expect_ident().text;
    if (accept_sym(".")) {
      std::string method = expect_ident().text;
      return Expr::query(std::move(name), std::move(method), call_args(), pos);
    }
    return Expr::var(std::move(name), pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::set<std::string> expected_;
  std::size_t expected_at_ = static_cast<std::size_t>(-1);
};

// ---------------------------------------------------------------------------
// Printing

int precedence(const Expr& e) {
  if (e.kind == Expr::Kind::Not) return 3;
  if (e.kind != Expr::Kind::Binary) return 6;
  switch (e.op) {
    case BinaryOp::Or:
      return 1;
    case BinaryOp::And:
      return 2;
    case BinaryOp::Eq:
    case BinaryOp::Lt:
    case BinaryOp::Le:
      return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub:
      return 5;
  }
  return 6;
}

void print_expr(std::ostream& os, const Expr& e);

void print_operand(std::ostream& os, const Expr& e, int min_prec) {
  if (precedence(e) < min_prec) {
    os << '(';
    print_expr(os, e);
    os << ')';
  } else {
    print_expr(os, e);
  }
}

void print_args(std::ostream& os, const std::vector<Expr>& args) {
  if (args.empty()) return;
  os << " (";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) os << ", ";
    print_expr(os, args[i]);
  }
  os << ')';
}

void print_expr(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::IntLit:
      os << e.int_value;
      break;
    case Expr::Kind::BoolLit:
      os << (e.bool_value ? "true" : "false");
      break;
    case Expr::Kind::Var:
      os << e.name;
      break;
    case Expr::Kind::QueryCall:
      os << e.name << '.' << e.method;
      print_args(os, e.operands);
      break;
    case Expr::Kind::Not:
      os << "not ";
      print_operand(os, e.operands[0], 3);
      break;
    case Expr::Kind::Binary: {
      int p = precedence(e);
      // Comparisons do not chain and +/- are left-associative, so the right
      // operand needs one level more than the operator itself.
      bool is_cmp = p == 4;
      print_operand(os, e.operands[0], is_cmp ? p + 1 : p);
      os << ' ' << to_string(e.op) << ' ';
      print_operand(os, e.operands[1], p + 1);
      break;
    }
  }
}

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void print_stmts(std::ostream& os, const std::vector<Stmt>& body, int depth);

void print_stmt(std::ostream& os, const Stmt& s, int depth) {
  indent(os, depth);
  switch (s.kind) {
    case Stmt::Kind::Create:
      os << "create " << (s.separate ? "separate " : "") << s.var << " : " << s.class_name << '\n';
      break;
    case Stmt::Kind::Assign:
      os << s.var << " := ";
      print_expr(os, *s.value);
      os << '\n';
      break;
    case Stmt::Kind::Call:
      os << s.var << '.' << s.method;
      print_args(os, s.args);
      os << '\n';
      break;
    case Stmt::Kind::SeparateBlock:
      os << "separate ";
      for (std::size_t i = 0; i < s.targets.size(); ++i) {
        if (i > 0) os << ", ";
        os << s.targets[i];
      }
      if (s.value) {
        os << " require ";
        print_expr(os, *s.value);
      }
      os << " do\n";
      print_stmts(os, s.body, depth + 1);
      indent(os, depth);
      os << "end\n";
      break;
    case Stmt::Kind::If:
      os << "if ";
      print_expr(os, *s.value);
      os << " then\n";
      print_stmts(os, s.body, depth + 1);
      if (!s.else_body.empty()) {
        indent(os, depth);
        os << "else\n";
        print_stmts(os, s.else_body, depth + 1);
      }
      indent(os, depth);
      os << "end\n";
      break;
    case Stmt::Kind::Repeat:
      os << "repeat " << s.count << " times\n";
      print_stmts(os, s.body, depth + 1);
      indent(os, depth);
      os << "end\n";
      break;
  }
}

void print_stmts(std::ostream& os, const std::vector<Stmt>& body, int depth) {
  for (const auto& s : body) print_stmt(os, s, depth);
}

}  // namespace

ParseError::ParseError(SourcePos pos, std::vector<std::string> expected, std::string found)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << pos << ": syntax error: unexpected " << found;
        if (!expected.empty()) msg << "; expected one of: " << join_expected(expected);
        return msg.str();
      }()),
      pos_(pos),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

Program parse(std::string_view source) {
  Lexer lexer(source);
  Parser parser(lexer.run());
  return parser.program();
}

std::string print(const Expr& expr) {
  std::ostringstream os;
  print_expr(os, expr);
  return os.str();
}

std::string print(const Program& program) {
  std::ostringstream os;
  for (const auto& c : program.classes) {
    os << "class " << c.name << '\n';
    for (const auto& a : c.attributes) {
      os << "  attribute " << a.name << " : " << to_string(a.type) << '\n';
    }
    for (const auto& m : c.methods) {
      os << "  " << (m.kind == MethodKind::Query ? "query " : "command ") << m.name;
      if (!m.params.empty()) {
        os << " (";
        for (std::size_t i = 0; i < m.params.size(); ++i) {
          if (i > 0) os << ", ";
          os << m.params[i].name << " : " << to_string(m.params[i].type);
        }
        os << ')';
      }
      if (m.result_type) os << " : " << to_string(*m.result_type);
      os << " do\n";
      print_stmts(os, m.body, 2);
      if (m.result_expr) {
        os << "    result := ";
        print_expr(os, *m.result_expr);
        os << '\n';
      }
      os << "  end\n";
    }
    os << "end\n\n";
  }
  os << "root\n";
  print_stmts(os, program.root, 1);
  os << "end\n";
  return os.str();
}

}  // namespace scoopwb::lang
