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

#include "scoopwb/lang/ast.hpp"

namespace scoopwb::lang {

std::ostream& operator<<(std::ostream& os, const SourcePos& pos) {
  return os << pos.line << ':' << pos.column;
}

std::string to_string(const TypeRef& t) {
  std::string prefix = t.separate ? "separate " : "";
  switch (t.base) {
    case BaseType::Integer:
      return prefix + "INTEGER";
    case BaseType::Boolean:
      return prefix + "BOOLEAN";
    case BaseType::Class:
      return prefix + t.class_name;
  }
  return prefix;
}

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
      return "+";
    case BinaryOp::Sub:
      return "-";
    case BinaryOp::Eq:
      return "=";
    case BinaryOp::Lt:
      return "<";
    case BinaryOp::Le:
      return "<=";
    case BinaryOp::And:
      return "and";
    case BinaryOp::Or:
      return "or";
  }
  return "?";
}

Expr Expr::int_lit(std::int64_t v, SourcePos p) {
  Expr e;
  e.kind = Kind::IntLit;
  e.int_value = v;
  e.pos = p;
  return e;
}

Expr Expr::bool_lit(bool v, SourcePos p) {
  Expr e;
  e.kind = Kind::BoolLit;
  e.bool_value = v;
  e.pos = p;
  return e;
}

Expr Expr::var(std::string n, SourcePos p) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(n);
  e.pos = p;
  return e;
}

Expr Expr::query(std::string target, std::string method, std::vector<Expr> args, SourcePos p) {
  Expr e;
  e.kind = Kind::QueryCall;
  e.name = std::move(target);
  e.method = std::move(method);
  e.operands = std::move(args);
  e.pos = p;
  return e;
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs, SourcePos p) {
  Expr e;
  e.kind = Kind::Binary;
  e.op = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  e.pos = p;
  return e;
}

Expr Expr::negate(Expr inner, SourcePos p) {
  Expr e;
  e.kind = Kind::Not;
  e.operands.push_back(std::move(inner));
  e.pos = p;
  return e;
}

Stmt Stmt::create(std::string var, std::string cls, bool separate, SourcePos p) {
  Stmt s;
  s.kind = Kind::Create;
  s.var = std::move(var);
  s.class_name = std::move(cls);
  s.separate = separate;
  s.pos = p;
  return s;
}

Stmt Stmt::assign(std::string var, Expr value, SourcePos p) {
  Stmt s;
  s.kind = Kind::Assign;
  s.var = std::move(var);
  s.value = std::move(value);
  s.pos = p;
  return s;
}

Stmt Stmt::call(std::string target, std::string method, std::vector<Expr> args, SourcePos p) {
  Stmt s;
  s.kind = Kind::Call;
  s.var = std::move(target);
  s.method = std::move(method);
  s.args = std::move(args);
  s.pos = p;
  return s;
}

Stmt Stmt::separate_block(std::vector<std::string> targets, std::optional<Expr> guard,
                          std::vector<Stmt> body, SourcePos p) {
  Stmt s;
  s.kind = Kind::SeparateBlock;
  s.targets = std::move(targets);
  s.value = std::move(guard);
  s.body = std::move(body);
  s.pos = p;
  return s;
}

Stmt Stmt::if_else(Expr cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body,
                   SourcePos p) {
  Stmt s;
  s.kind = Kind::If;
  s.value = std::move(cond);
  s.body = std::move(then_body);
  s.else_body = std::move(else_body);
  s.pos = p;
  return s;
}

Stmt Stmt::repeat(std::int64_t count, std::vector<Stmt> body, SourcePos p) {
  Stmt s;
  s.kind = Kind::Repeat;
  s.count = count;
  s.body = std::move(body);
  s.pos = p;
  return s;
}

}  // namespace scoopwb::lang
