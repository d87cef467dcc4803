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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "scoopwb/cli/corpus.hpp"
#include "scoopwb/lang/parser.hpp"
#include "scoopwb/lang/validate.hpp"

using namespace scoopwb;
using namespace scoopwb::lang;

namespace {

// Random syntax trees over a small vocabulary. They are usually not valid
// programs, which is fine for the printer and for validate's determinism.
class ProgramGen {
 public:
  explicit ProgramGen(std::uint32_t seed) : rng_(seed) {}

  Program program() {
    Program p;
    for (int i = pick(0, 2); i > 0; --i) p.classes.push_back(class_decl());
    p.root = stmts(2);
    return p;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  template <typename T>
  const T& one_of(const std::vector<T>& v) { return v[pick(0, static_cast<int>(v.size()) - 1)]; }

  std::string ident() { return one_of<std::string>({"a", "b", "cnt", "x1", "other", "buf"}); }
  std::string cls() { return one_of<std::string>({"FORK", "BUFFER", "Shop"}); }
  std::string meth() { return one_of<std::string>({"go", "put", "item", "is_full"}); }

  TypeRef type() {
    switch (pick(0, 2)) {
      case 0:
        return TypeRef::integer();
      case 1:
        return TypeRef::boolean();
      default:
        return TypeRef::of_class(cls(), pick(0, 1) == 1);
    }
  }

  std::vector<Expr> args(int depth) {
    std::vector<Expr> out;
    for (int i = pick(0, 2); i > 0; --i) out.push_back(expr(depth - 1));
    return out;
  }

  Expr expr(int depth) {
    int k = depth <= 0 ? pick(0, 2) : pick(0, 5);
    switch (k) {
      case 0:
        return Expr::int_lit(pick(0, 99));
      case 1:
        return pick(0, 1) ? Expr::bool_lit(pick(0, 1) == 1) : Expr::var(ident());
      case 2:
        return Expr::var(ident());
      case 3:
        return Expr::query(ident(), meth(), args(depth));
      case 4:
        return Expr::negate(expr(depth - 1));
      default: {
        static const std::vector<BinaryOp> ops = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Eq,
                                                   BinaryOp::Lt,  BinaryOp::Le,  BinaryOp::And,
                                                   BinaryOp::Or};
        return Expr::binary(one_of(ops), expr(depth - 1), expr(depth - 1));
      }
    }
  }

  Stmt stmt(int depth) {
    int k = depth <= 0 ? pick(0, 2) : pick(0, 5);
    switch (k) {
      case 0:
        return Stmt::create(ident(), cls(), pick(0, 1) == 1);
      case 1:
        return Stmt::assign(ident(), expr(2));
      case 2:
        return Stmt::call(ident(), meth(), args(2));
      case 3: {
        std::vector<std::string> targets{ident()};
        if (pick(0, 1)) targets.push_back(ident());
        std::optional<Expr> guard;
        if (pick(0, 1)) guard = expr(2);
        return Stmt::separate_block(std::move(targets), std::move(guard), stmts(depth - 1));
      }
      case 4:
        return Stmt::if_else(expr(2), stmts(depth - 1), pick(0, 1) ? stmts(depth - 1)
                                                                   : std::vector<Stmt>{});
      default:
        return Stmt::repeat(pick(1, 4), stmts(depth - 1));
    }
  }

  std::vector<Stmt> stmts(int depth) {
    std::vector<Stmt> out;
    for (int i = pick(0, 3); i > 0; --i) out.push_back(stmt(depth));
    return out;
  }

  ClassDecl class_decl() {
    ClassDecl c;
    c.name = cls();
    for (int i = pick(0, 2); i > 0; --i) c.attributes.push_back({ident(), type(), {}});
    for (int i = pick(0, 2); i > 0; --i) {
      MethodDecl m;
      m.name = meth();
      m.kind = pick(0, 1) ? MethodKind::Query : MethodKind::Command;
      for (int j = pick(0, 2); j > 0; --j) m.params.push_back({ident(), type(), {}});
      m.body = stmts(1);
      if (m.kind == MethodKind::Query) {
        m.result_type = type();
        m.result_expr = expr(2);
      }
      c.methods.push_back(std::move(m));
    }
    return c;
  }

  std::mt19937 rng_;
};

Rule first_rule(std::string_view source) {
  auto diags = check(parse(source));
  REQUIRE_FALSE(diags.empty());
  return diags.front().rule;
}

}  // namespace

TEST_CASE("printing then parsing a random program gives the same tree") {
  for (std::uint32_t seed = 1; seed <= 500; ++seed) {
    ProgramGen gen(seed);
    Program p = gen.program();
    std::string text = print(p);
    Program q;
    REQUIRE_NOTHROW_MESSAGE(q = parse(text), text);
    CHECK_MESSAGE(p == q, "seed " << seed << "\n" << text);
    CHECK(print(q) == text);
  }
}

TEST_CASE("validation is deterministic") {
  for (std::uint32_t seed = 1; seed <= 200; ++seed) {
    Program p = ProgramGen(seed).program();
    Program copy = p;
    auto first = check(p);
    auto second = check(p);
    CHECK(first == second);
    CHECK(p == copy);
  }
}

TEST_CASE("every corpus program parses and validates cleanly") {
  auto corpus = cli::embedded_corpus();
  REQUIRE(corpus.size() >= 13);
  for (const auto& entry : corpus) {
    CAPTURE(entry.name);
    Program p = parse(entry.source);
    CHECK(check(p).empty());
    CHECK(parse(print(p)) == p);
  }
}

TEST_CASE("the corpus covers every benchmark family") {
  std::vector<std::string> names = cli::corpus_names();
  for (std::string n : {"dp2_eager", "dp2_lazy", "dp2_eager_nocmd", "dp2_lazy_nocmd", "dp3_eager",
                        "dp3_lazy", "dp3_eager_nocmd", "dp3_lazy_nocmd", "pc5", "pc20",
                        "barbershop2", "savages2"}) {
    CHECK_MESSAGE(std::find(names.begin(), names.end(), n) != names.end(), n);
  }
}

TEST_CASE("syntax errors report position and expected tokens") {
  try {
    parse("root\n  x := \nend");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 3);
    CHECK(e.found() == "'end'");
    CHECK(std::find(e.expected().begin(), e.expected().end(), "integer") != e.expected().end());
  }
  CHECK_THROWS_AS(parse("root repeat n times end end"), ParseError);
  CHECK_THROWS_AS(parse("class A end"), ParseError);
  CHECK_NOTHROW(parse("root end"));
  CHECK_NOTHROW(parse("-- nothing but a comment\nroot end -- trailing"));
}

TEST_CASE("separateness rules are enforced") {
  const char* cls = "class S\n command c do end\n query q: INTEGER do result := 1 end\nend\n";
  SUBCASE("calls on separate targets need a reserving block") {
    CHECK(first_rule(std::string(cls) + "root create separate s: S\n s.c end") == Rule::A);
  }
  SUBCASE("guards only read the block's own targets") {
    CHECK(first_rule(std::string(cls) +
                     "root create separate s: S\n create separate t: S\n"
                     " separate s require t.q = 1 do s.c end end") == Rule::B);
  }
  SUBCASE("queries are expressions and commands are statements") {
    CHECK(first_rule(std::string(cls) + "root create s: S\n s.q end") == Rule::C);
    CHECK(first_rule(std::string(cls) + "root create s: S\n x := s.c end") == Rule::C);
  }
  SUBCASE("a valid program has no diagnostics") {
    CHECK(check(parse(std::string(cls) +
                      "root create separate s: S\n separate s require s.q = 1 do s.c\n"
                      " x := s.q end end"))
              .empty());
  }
}

TEST_CASE("names and types are checked") {
  CHECK_FALSE(check(parse("class A end class A end root end")).empty());
  CHECK_FALSE(check(parse("root x := 1 + true end")).empty());
  CHECK_FALSE(check(parse("root create a: MISSING end")).empty());
  CHECK_THROWS_AS(parse("class A attribute n: separate INTEGER end root end"), ParseError);
  CHECK_THROWS_AS(validate(parse("root y := z end")), ValidationError);
}
