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

#include "scoopwb/lang/validate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace scoopwb::lang {

std::string to_string(const Diagnostic& d) {
  std::ostringstream os;
  os << d.pos << ": ";
  switch (d.rule) {
    case Rule::A:
      os << "[rule a] ";
      break;
    case Rule::B:
      os << "[rule b] ";
      break;
    case Rule::C:
      os << "[rule c] ";
      break;
    case Rule::None:
      break;
  }
  os << d.message;
  return os.str();
}

ValidationError::ValidationError(std::vector<Diagnostic> diags)
    : std::runtime_error([&] {
        std::string msg = "program is not valid:";
        for (const auto& d : diags) msg += "\n  " + to_string(d);
        return msg;
      }()),
      diags_(std::move(diags)) {}

std::optional<std::size_t> RoutineInfo::find_local(std::string_view n) const {
  for (std::size_t i = 0; i < locals.size(); ++i) {
    if (locals[i].name == n) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ValidatedProgram::find_class(std::string_view name) const {
  for (std::size_t i = 0; i < program_.classes.size(); ++i) {
    if (program_.classes[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ValidatedProgram::find_method(std::size_t cls,
                                                         std::string_view name) const {
  const auto& ms = program_.classes[cls].methods;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ValidatedProgram::find_attribute(std::size_t cls,
                                                            std::string_view name) const {
  const auto& as = program_.classes[cls].attributes;
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (as[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t ValidatedProgram::routine_of(std::size_t cls, std::size_t method) const {
  return first_routine_[cls] + method;
}

namespace {

class Checker {
 public:
  explicit Checker(const Program& p) : p_(p) {}

  void run(std::vector<RoutineInfo>& routines, std::vector<std::size_t>& first_routine) {
    check_declarations();

    RoutineInfo root;
    root.name = "root";
    check_routine(root, nullptr, p_.root, nullptr);
    routines.push_back(std::move(root));

    for (std::size_t c = 0; c < p_.classes.size(); ++c) {
      first_routine.push_back(routines.size());
      const auto& cls = p_.classes[c];
      for (std::size_t m = 0; m < cls.methods.size(); ++m) {
        const auto& method = cls.methods[m];
        RoutineInfo info;
        info.class_index = static_cast<int>(c);
        info.method_index = static_cast<int>(m);
        info.name = cls.name + "." + method.name;
        std::set<std::string> seen;
        for (const auto& prm : method.params) {
          if (!seen.insert(prm.name).second) {
            error(Rule::None, prm.pos, "duplicate parameter '" + prm.name + "'");
          }
          info.locals.push_back({prm.name, prm.type});
        }
        info.param_count = method.params.size();
        check_routine(info, &cls, method.body, &method);
        routines.push_back(std::move(info));
      }
    }
  }

  std::vector<Diagnostic> diags;

 private:
  void error(Rule r, SourcePos pos, std::string msg) {
    diags.push_back({r, pos, std::move(msg)});
  }

  const ClassDecl* find_class(std::string_view name) const {
    for (const auto& c : p_.classes) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  static const MethodDecl* find_method(const ClassDecl& c, std::string_view name) {
    for (const auto& m : c.methods) {
      if (m.name == name) return &m;
    }
    return nullptr;
  }

  static const AttributeDecl* find_attr(const ClassDecl& c, std::string_view name) {
    for (const auto& a : c.attributes) {
      if (a.name == name) return &a;
    }
    return nullptr;
  }

  void check_type(const TypeRef& t, SourcePos pos) {
    if (t.is_reference() && !find_class(t.class_name)) {
      error(Rule::None, pos, "unknown class '" + t.class_name + "'");
    }
  }

  void check_declarations() {
    std::set<std::string> names;
    for (const auto& c : p_.classes) {
      if (!names.insert(c.name).second) {
        error(Rule::None, c.pos, "duplicate class '" + c.name + "'");
      }
      std::set<std::string> members;
      for (const auto& a : c.attributes) {
        if (!members.insert(a.name).second) {
          error(Rule::None, a.pos, "duplicate member '" + a.name + "' in class " + c.name);
        }
        check_type(a.type, a.pos);
      }
      for (const auto& m : c.methods) {
        if (!members.insert(m.name).second) {
          error(Rule::None, m.pos, "duplicate member '" + m.name + "' in class " + c.name);
        }
        for (const auto& prm : m.params) check_type(prm.type, prm.pos);
        if (m.kind == MethodKind::Query) {
          check_type(*m.result_type, m.pos);
          if (!m.result_expr) {
            error(Rule::None, m.pos, "query '" + m.name + "' has no result expression");
          }
        }
      }
    }
  }

  // Per-routine state.
  RoutineInfo* routine_ = nullptr;
  const ClassDecl* current_ = nullptr;
  std::vector<std::vector<std::string>> blocks_;  // enclosing separate block targets

  std::optional<TypeRef> lookup(const std::string& name) const {
    if (auto i = routine_->find_local(name)) return routine_->locals[*i].type;
    if (current_) {
      if (const auto* a = find_attr(*current_, name)) return a->type;
    }
    return std::nullopt;
  }

  bool reserved(const std::string& name) const {
    for (const auto& b : blocks_) {
      if (std::find(b.begin(), b.end(), name) != b.end()) return true;
    }
    return false;
  }

  static bool assignable(const TypeRef& to, const TypeRef& from) {
    if (to.base != from.base) return false;
    if (!to.is_reference()) return true;
    if (to.class_name != from.class_name) return false;
    return to.separate || !from.separate;
  }

  void check_routine(RoutineInfo& info, const ClassDecl* cls, const std::vector<Stmt>& body,
                     const MethodDecl* method) {
    routine_ = &info;
    current_ = cls;
    blocks_.clear();
    check_stmts(body);
    if (method && method->kind == MethodKind::Query && method->result_expr) {
      auto t = check_expr(*method->result_expr, nullptr);
      if (t && !assignable(*method->result_type, *t)) {
        error(Rule::None, method->result_expr->pos,
              "result of type " + to_string(*t) + " does not conform to " +
                  to_string(*method->result_type));
      }
    }
  }

  void check_stmts(const std::vector<Stmt>& body) {
    for (const auto& s : body) check_stmt(s);
  }

  // Declares `name` as a local of type `t` unless it already resolves.
  std::optional<TypeRef> bind(const std::string& name, const TypeRef& t) {
    if (auto existing = lookup(name)) return existing;
    routine_->locals.push_back({name, t});
    return t;
  }

  void check_stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Create: {
        if (!find_class(s.class_name)) {
          error(Rule::None, s.pos, "unknown class '" + s.class_name + "'");
          return;
        }
        TypeRef t = TypeRef::of_class(s.class_name, s.separate);
        auto declared = bind(s.var, t);
        if (!assignable(*declared, t)) {
          error(Rule::None, s.pos,
                "cannot create " + to_string(t) + " into '" + s.var + "' of type " +
                    to_string(*declared));
        }
        break;
      }
      case Stmt::Kind::Assign: {
        auto t = check_expr(*s.value, nullptr);
        if (!t) return;
        auto declared = bind(s.var, *t);
        if (!assignable(*declared, *t)) {
          error(Rule::None, s.pos,
                "cannot assign " + to_string(*t) + " to '" + s.var + "' of type " +
                    to_string(*declared));
        }
        break;
      }
      case Stmt::Kind::Call:
        check_call(s.var, s.method, s.args, s.pos, MethodKind::Command, nullptr);
        break;
      case Stmt::Kind::SeparateBlock: {
        std::set<std::string> seen;
        for (const auto& target : s.targets) {
          auto t = lookup(target);
          if (!t) {
            error(Rule::None, s.pos, "unknown identifier '" + target + "'");
          } else if (!t->is_reference() || !t->separate) {
            error(Rule::None, s.pos,
                  "block target '" + target + "' is not of a separate type");
          }
          if (!seen.insert(target).second) {
            error(Rule::None, s.pos, "block target '" + target + "' listed twice");
          }
        }
        if (s.value) {
          auto g = check_expr(*s.value, &s.targets);
          if (g && g->base != BaseType::Boolean) {
            error(Rule::None, s.value->pos, "guard must be BOOLEAN");
          }
        }
        blocks_.push_back(s.targets);
        check_stmts(s.body);
        blocks_.pop_back();
        break;
      }
      case Stmt::Kind::If: {
        auto c = check_expr(*s.value, nullptr);
        if (c && c->base != BaseType::Boolean) {
          error(Rule::None, s.value->pos, "condition must be BOOLEAN");
        }
        check_stmts(s.body);
        check_stmts(s.else_body);
        break;
      }
      case Stmt::Kind::Repeat:
        check_stmts(s.body);
        break;
    }
  }

  // Shared by call statements and query expressions. `guard_targets` is set
  // while checking a block guard.
  std::optional<TypeRef> check_call(const std::string& target, const std::string& method_name,
                                    const std::vector<Expr>& args, SourcePos pos,
                                    MethodKind expected,
                                    const std::vector<std::string>* guard_targets) {
    std::vector<std::optional<TypeRef>> arg_types;
    for (const auto& a : args) arg_types.push_back(check_expr(a, guard_targets));

    auto tt = lookup(target);
    if (!tt) {
      error(Rule::None, pos, "unknown identifier '" + target + "'");
      return std::nullopt;
    }
    if (!tt->is_reference()) {
      error(Rule::None, pos, "'" + target + "' is not a reference");
      return std::nullopt;
    }
    const ClassDecl* cls = find_class(tt->class_name);
    if (!cls) return std::nullopt;
    const MethodDecl* m = find_method(*cls, method_name);
    if (!m) {
      error(Rule::None, pos, "class " + cls->name + " has no method '" + method_name + "'");
      return std::nullopt;
    }

    if (guard_targets) {
      bool own = std::find(guard_targets->begin(), guard_targets->end(), target) !=
                 guard_targets->end();
      if (!own) {
        error(Rule::B, pos,
              "guard queries '" + target + "', which is not a target of this block");
      } else if (m->kind == MethodKind::Query &&
                 (!m->body.empty() || !m->result_expr || has_call(*m->result_expr))) {
        error(Rule::B, pos,
              "guard query " + cls->name + "." + m->name +
                  " must have an empty body and a call-free result");
      }
    } else if (tt->separate && !reserved(target)) {
      error(Rule::A, pos,
            "call on separate '" + target + "' outside a separate block reserving it");
    }

    if (m->kind != expected) {
      if (expected == MethodKind::Command) {
        error(Rule::C, pos, "query " + cls->name + "." + m->name + " used as a statement");
      } else {
        error(Rule::C, pos, "command " + cls->name + "." + m->name + " used in an expression");
      }
    }

    if (args.size() != m->params.size()) {
      error(Rule::None, pos,
            cls->name + "." + m->name + " expects " + std::to_string(m->params.size()) +
                " argument(s), got " + std::to_string(args.size()));
    } else {
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (arg_types[i] && !assignable(m->params[i].type, *arg_types[i])) {
          error(Rule::None, args[i].pos,
                "argument " + std::to_string(i + 1) + " of type " + to_string(*arg_types[i]) +
                    " does not conform to " + to_string(m->params[i].type));
        }
      }
    }
    if (m->kind != MethodKind::Query) return std::nullopt;
    return m->result_type;
  }

  static bool has_call(const Expr& e) {
    if (e.kind == Expr::Kind::QueryCall) return true;
    return std::any_of(e.operands.begin(), e.operands.end(),
                       [](const Expr& o) { return has_call(o); });
  }

  std::optional<TypeRef> check_expr(const Expr& e, const std::vector<std::string>* guard) {
    switch (e.kind) {
      case Expr::Kind::IntLit:
        return TypeRef::integer();
      case Expr::Kind::BoolLit:
        return TypeRef::boolean();
      case Expr::Kind::Var: {
        auto t = lookup(e.name);
        if (!t) error(Rule::None, e.pos, "unknown identifier '" + e.name + "'");
        return t;
      }
      case Expr::Kind::QueryCall:
        return check_call(e.name, e.method, e.operands, e.pos, MethodKind::Query, guard);
      case Expr::Kind::Not: {
        auto t = check_expr(e.operands[0], guard);
        if (t && t->base != BaseType::Boolean) {
          error(Rule::None, e.pos, "'not' needs a BOOLEAN operand");
        }
        return TypeRef::boolean();
      }
      case Expr::Kind::Binary: {
        auto l = check_expr(e.operands[0], guard);
        auto r = check_expr(e.operands[1], guard);
        switch (e.op) {
          case BinaryOp::Add:
          case BinaryOp::Sub:
            if ((l && l->base != BaseType::Integer) || (r && r->base != BaseType::Integer)) {
              error(Rule::None, e.pos, std::string("'") + to_string(e.op) +
                                           "' needs INTEGER operands");
            }
            return TypeRef::integer();
          case BinaryOp::Lt:
          case BinaryOp::Le:
            if ((l && l->base != BaseType::Integer) || (r && r->base != BaseType::Integer)) {
              error(Rule::None, e.pos, std::string("'") + to_string(e.op) +
                                           "' needs INTEGER operands");
            }
            return TypeRef::boolean();
          case BinaryOp::Eq:
            if (l && r && (l->base != r->base || l->class_name != r->class_name)) {
              error(Rule::None, e.pos, "'=' compares values of different types");
            }
            return TypeRef::boolean();
          case BinaryOp::And:
          case BinaryOp::Or:
            if ((l && l->base != BaseType::Boolean) || (r && r->base != BaseType::Boolean)) {
              error(Rule::None, e.pos, std::string("'") + to_string(e.op) +
                                           "' needs BOOLEAN operands");
            }
            return TypeRef::boolean();
        }
      }
    }
    return std::nullopt;
  }

  const Program& p_;
};

}  // namespace

std::vector<Diagnostic> check(const Program& p) {
  std::vector<RoutineInfo> routines;
  std::vector<std::size_t> first;
  Checker checker(p);
  checker.run(routines, first);
  return std::move(checker.diags);
}

ValidatedProgram validate(Program p) {
  ValidatedProgram vp;
  Checker checker(p);
  checker.run(vp.routines_, vp.first_routine_);
  if (!checker.diags.empty()) throw ValidationError(std::move(checker.diags));
  vp.program_ = std::move(p);
  return vp;
}

}  // namespace scoopwb::lang
