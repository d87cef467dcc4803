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

#ifndef SCOOPWB_LANG_AST_HPP
#define SCOOPWB_LANG_AST_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace scoopwb::lang {

/// Line/column of a token, both 1-based.
///
/// Positions never participate in equality: two ASTs compare equal when they
/// are structurally equal, which is what the parse/print round trip needs.
struct SourcePos {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

std::ostream& operator<<(std::ostream& os, const SourcePos& pos);

enum class BaseType { Integer, Boolean, Class };

struct TypeRef {
  BaseType base = BaseType::Integer;
  std::string class_name;  // only for BaseType::Class
  bool separate = false;

  bool is_reference() const { return base == BaseType::Class; }

  static TypeRef integer() { return {BaseType::Integer, {}, false}; }
  static TypeRef boolean() { return {BaseType::Boolean, {}, false}; }
  static TypeRef of_class(std::string name, bool separate) {
    return {BaseType::Class, std::move(name), separate};
  }

  friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

std::string to_string(const TypeRef& t);

enum class BinaryOp { Add, Sub, Eq, Lt, Le, And, Or };

const char* to_string(BinaryOp op);

/// Expression node. A tagged struct keeps the tree copyable and comparable
/// with defaulted operators.
struct Expr {
  enum class Kind { IntLit, BoolLit, Var, QueryCall, Binary, Not };

  Kind kind = Kind::IntLit;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string name;    // Var: variable; QueryCall: target variable
  std::string method;  // QueryCall
  BinaryOp op = BinaryOp::Add;
  std::vector<Expr> operands;  // Binary: lhs, rhs; Not: operand; QueryCall: args
  SourcePos pos;

  static Expr int_lit(std::int64_t v, SourcePos p = {});
  static Expr bool_lit(bool v, SourcePos p = {});
  static Expr var(std::string n, SourcePos p = {});
  static Expr query(std::string target, std::string method,
                    std::vector<Expr> args, SourcePos p = {});
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs, SourcePos p = {});
  static Expr negate(Expr e, SourcePos p = {});

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Stmt {
  enum class Kind { Create, Assign, Call, SeparateBlock, If, Repeat };

  Kind kind = Kind::Assign;
  // Create: var + class_name + separate.  Assign: var + value.
  // Call: var (target) + method + args.
  std::string var;
  std::string class_name;
  bool separate = false;
  std::string method;
  std::vector<Expr> args;
  std::optional<Expr> value;  // Assign: rhs; If: condition; SeparateBlock: guard
  std::vector<std::string> targets;  // SeparateBlock
  std::int64_t count = 0;            // Repeat
  std::vector<Stmt> body;            // SeparateBlock, If (then), Repeat
  std::vector<Stmt> else_body;       // If
  SourcePos pos;

  static Stmt create(std::string var, std::string cls, bool separate, SourcePos p = {});
  static Stmt assign(std::string var, Expr value, SourcePos p = {});
  static Stmt call(std::string target, std::string method, std::vector<Expr> args,
                   SourcePos p = {});
  static Stmt separate_block(std::vector<std::string> targets, std::optional<Expr> guard,
                             std::vector<Stmt> body, SourcePos p = {});
  static Stmt if_else(Expr cond, std::vector<Stmt> then_body,
                      std::vector<Stmt> else_body, SourcePos p = {});
  static Stmt repeat(std::int64_t count, std::vector<Stmt> body, SourcePos p = {});

  const Expr& guard() const { return *value; }
  const Expr& condition() const { return *value; }

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

struct Param {
  std::string name;
  TypeRef type;
  SourcePos pos;
  friend bool operator==(const Param&, const Param&) = default;
};

enum class MethodKind { Command, Query };

struct MethodDecl {
  std::string name;
  MethodKind kind = MethodKind::Command;
  std::vector<Param> params;
  std::optional<TypeRef> result_type;  // queries only
  std::vector<Stmt> body;
  std::optional<Expr> result_expr;  // queries only
  SourcePos pos;

  friend bool operator==(const MethodDecl&, const MethodDecl&) = default;
};

struct AttributeDecl {
  std::string name;
  TypeRef type;
  SourcePos pos;
  friend bool operator==(const AttributeDecl&, const AttributeDecl&) = default;
};

struct ClassDecl {
  std::string name;
  std::vector<AttributeDecl> attributes;
  std::vector<MethodDecl> methods;
  SourcePos pos;

  friend bool operator==(const ClassDecl&, const ClassDecl&) = default;
};

struct Program {
  std::vector<ClassDecl> classes;
  std::vector<Stmt> root;

  friend bool operator==(const Program&, const Program&) = default;
};

}  // namespace scoopwb::lang

#endif  // SCOOPWB_LANG_AST_HPP
