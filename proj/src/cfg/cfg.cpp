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

#include "scoopwb/cfg/cfg.hpp"

#include <cassert>

#include "scoopwb/lang/parser.hpp"

namespace scoopwb::cfg {

const char* to_string(ActionKind k) {
  switch (k) {
    case ActionKind::Skip:
      return "skip";
    case ActionKind::BlockEnter:
      return "separate-enter";
    case ActionKind::BlockExit:
      return "separate-exit";
    case ActionKind::CreateLocal:
      return "create-local";
    case ActionKind::CreateSeparate:
      return "create-separate";
    case ActionKind::Assign:
      return "assign";
    case ActionKind::CommandCall:
      return "command-call";
    case ActionKind::QueryCall:
      return "query-call";
    case ActionKind::BranchTrue:
      return "branch-true";
    case ActionKind::BranchFalse:
      return "branch-false";
    case ActionKind::LoopInit:
      return "loop-init";
    case ActionKind::LoopContinue:
      return "loop-continue";
    case ActionKind::LoopExit:
      return "loop-exit";
    case ActionKind::LoopNext:
      return "loop-next";
  }
  return "?";
}

std::string Action::label() const {
  std::string s = to_string(kind);
  if (!text.empty()) s += " " + text;
  return s;
}

namespace {

using lang::Expr;
using lang::Stmt;

class RoutineBuilder {
 public:
  RoutineBuilder(const lang::ValidatedProgram& vp, const lang::RoutineInfo& info,
                 std::uint32_t& next_block)
      : vp_(vp), info_(info), next_block_(next_block) {
    r_.name = info.name;
    r_.class_index = info.class_index;
    r_.method_index = info.method_index;
    r_.param_count = info.param_count;
    for (const auto& l : info.locals) r_.slots.push_back({l.name, l.type});
    r_.initial = new_state();
    cursor_.state = r_.initial;
  }

  Routine build(const std::vector<Stmt>& body, const lang::MethodDecl* method) {
    for (const auto& s : body) stmt(s);
    if (method && method->kind == lang::MethodKind::Query) {
      r_.is_query = true;
      r_.result_slot = add_slot("Result", *method->result_type);
      temps_in_use_ = 0;
      if (method->result_expr) {
        std::vector<Slot> temps;
        Action a;
        a.kind = ActionKind::Assign;
        a.var = {VarRef::Kind::Local, *r_.result_slot};
        a.expr = expr(*method->result_expr, temps);
        a.release = temps;
        a.text = "Result := " + lang::print(*method->result_expr);
        emit(std::move(a));
        if (method->body.empty() && !has_call(*method->result_expr)) {
          r_.pure_result = pure(*method->result_expr);
        }
      }
    }
    if (cursor_.state && *cursor_.state == r_.initial && r_.edges.empty()) {
      Action skip;
      skip.kind = ActionKind::Skip;
      emit(std::move(skip));
    }
    r_.final = materialize();
    r_.out.assign(r_.state_count, {});
    for (std::uint32_t i = 0; i < r_.edges.size(); ++i) r_.out[r_.edges[i].from].push_back(i);
    return std::move(r_);
  }

 private:
  struct Cursor {
    std::optional<StateId> state;
    std::vector<std::uint32_t> dangling;  // edges still missing a target
  };

  StateId new_state() { return static_cast<StateId>(r_.state_count++); }

  StateId materialize() {
    if (cursor_.state) return *cursor_.state;
    StateId s = new_state();
    for (auto e : cursor_.dangling) r_.edges[e].to = s;
    cursor_.dangling.clear();
    cursor_.state = s;
    return s;
  }

  // Adds an edge out of the cursor; the cursor then dangles on it unless
  // `to` closes it onto an existing state.
  std::uint32_t emit(Action a, std::optional<StateId> to = std::nullopt) {
    StateId from = materialize();
    auto idx = static_cast<std::uint32_t>(r_.edges.size());
    r_.edges.push_back({from, to.value_or(0), std::move(a)});
    cursor_ = {};
    if (!to) cursor_.dangling.push_back(idx);
    return idx;
  }

  Slot add_slot(std::string name, lang::TypeRef type) {
    r_.slots.push_back({std::move(name), std::move(type)});
    return static_cast<Slot>(r_.slots.size() - 1);
  }

  Slot temp(const lang::TypeRef& type) {
    if (temps_in_use_ < temp_slots_.size()) return temp_slots_[temps_in_use_++];
    Slot s = add_slot("$t" + std::to_string(temp_slots_.size()), type);
    temp_slots_.push_back(s);
    ++temps_in_use_;
    return s;
  }

  VarRef resolve(const std::string& name) const {
    if (auto i = info_.find_local(name)) return {VarRef::Kind::Local, static_cast<Slot>(*i)};
    assert(info_.class_index >= 0);
    auto a = vp_.find_attribute(static_cast<std::size_t>(info_.class_index), name);
    assert(a);
    return {VarRef::Kind::Attribute, static_cast<Slot>(*a)};
  }

  lang::TypeRef type_of(const std::string& name) const {
    if (auto i = info_.find_local(name)) return info_.locals[*i].type;
    auto cls = static_cast<std::size_t>(info_.class_index);
    return vp_.program().classes[cls].attributes[*vp_.find_attribute(cls, name)].type;
  }

  std::uint32_t callee(const std::string& target, const std::string& method) const {
    auto t = type_of(target);
    auto cls = *vp_.find_class(t.class_name);
    return static_cast<std::uint32_t>(vp_.routine_of(cls, *vp_.find_method(cls, method)));
  }

  static bool has_call(const Expr& e) {
    if (e.kind == Expr::Kind::QueryCall) return true;
    for (const auto& o : e.operands) {
      if (has_call(o)) return true;
    }
    return false;
  }

  // Compiles without hoisting; query calls become GuardQuery nodes.
  CExpr pure(const Expr& e) const {
    CExpr c;
    switch (e.kind) {
      case Expr::Kind::IntLit:
        c.kind = CExpr::Kind::Int;
        c.value = e.int_value;
        break;
      case Expr::Kind::BoolLit:
        c.kind = CExpr::Kind::Bool;
        c.value = e.bool_value ? 1 : 0;
        break;
      case Expr::Kind::Var:
        c.kind = CExpr::Kind::Var;
        c.var = resolve(e.name);
        break;
      case Expr::Kind::QueryCall:
        c.kind = CExpr::Kind::GuardQuery;
        c.var = resolve(e.name);
        c.routine = callee(e.name, e.method);
        for (const auto& a : e.operands) c.operands.push_back(pure(a));
        break;
      case Expr::Kind::Not:
        c.kind = CExpr::Kind::Not;
        c.operands.push_back(pure(e.operands[0]));
        break;
      case Expr::Kind::Binary:
        c.kind = CExpr::Kind::Binary;
        c.op = e.op;
        c.operands.push_back(pure(e.operands[0]));
        c.operands.push_back(pure(e.operands[1]));
        break;
    }
    return c;
  }

  // Compiles `e`, emitting a QueryCall action for every query call it
  // contains (innermost and leftmost first). Temporaries holding results
  // still to be consumed are appended to `temps`.
  CExpr expr(const Expr& e, std::vector<Slot>& temps) {
    if (e.kind == Expr::Kind::QueryCall) {
      std::vector<Slot> inner;
      std::vector<CExpr> args;
      for (const auto& a : e.operands) args.push_back(expr(a, inner));
      auto routine = callee(e.name, e.method);
      const auto& m = vp_.routines()[routine];
      const auto& decl = vp_.program().classes[static_cast<std::size_t>(m.class_index)]
                             .methods[static_cast<std::size_t>(m.method_index)];
      Slot dest = temp(*decl.result_type);
      Action a;
      a.kind = ActionKind::QueryCall;
      a.var = resolve(e.name);
      a.routine = routine;
      a.args = std::move(args);
      a.dest = dest;
      a.release = std::move(inner);
      a.text = lang::print(e) + " -> " + r_.slots[dest].name;
      emit(std::move(a));
      temps.push_back(dest);
      CExpr c;
      c.kind = CExpr::Kind::Var;
      c.var = {VarRef::Kind::Local, dest};
      return c;
    }
    CExpr c;
    switch (e.kind) {
      case Expr::Kind::Not:
        c.kind = CExpr::Kind::Not;
        c.operands.push_back(expr(e.operands[0], temps));
        return c;
      case Expr::Kind::Binary:
        c.kind = CExpr::Kind::Binary;
        c.op = e.op;
        c.operands.push_back(expr(e.operands[0], temps));
        c.operands.push_back(expr(e.operands[1], temps));
        return c;
      default:
        return pure(e);
    }
  }

  void stmts(const std::vector<Stmt>& body) {
    for (const auto& s : body) stmt(s);
  }

  void stmt(const Stmt& s) {
    temps_in_use_ = 0;
    switch (s.kind) {
      case Stmt::Kind::Create: {
        Action a;
        a.kind = s.separate ? ActionKind::CreateSeparate : ActionKind::CreateLocal;
        a.var = resolve(s.var);
        a.class_index = static_cast<std::uint32_t>(*vp_.find_class(s.class_name));
        a.text = s.var + " : " + s.class_name;
        emit(std::move(a));
        break;
      }
      case Stmt::Kind::Assign: {
        std::vector<Slot> temps;
        Action a;
        a.kind = ActionKind::Assign;
        a.expr = expr(*s.value, temps);
        a.var = resolve(s.var);
        a.release = std::move(temps);
        a.text = s.var + " := " + lang::print(*s.value);
        emit(std::move(a));
        break;
      }
      case Stmt::Kind::Call: {
        std::vector<Slot> temps;
        Action a;
        a.kind = ActionKind::CommandCall;
        for (const auto& arg : s.args) a.args.push_back(expr(arg, temps));
        a.var = resolve(s.var);
        a.routine = callee(s.var, s.method);
        a.release = std::move(temps);
        a.text = s.var + "." + s.method;
        emit(std::move(a));
        break;
      }
      case Stmt::Kind::SeparateBlock: {
        std::uint32_t id = next_block_++;
        Action enter;
        enter.kind = ActionKind::BlockEnter;
        enter.block = id;
        std::string names;
        for (const auto& t : s.targets) {
          enter.targets.push_back(resolve(t));
          names += (names.empty() ? "" : ", ") + t;
        }
        enter.text = names;
        if (s.value) {
          enter.expr = pure(*s.value);
          enter.text += " require " + lang::print(*s.value);
        }
        emit(std::move(enter));
        stmts(s.body);
        Action exit;
        exit.kind = ActionKind::BlockExit;
        exit.block = id;
        exit.text = names;
        emit(std::move(exit));
        break;
      }
      case Stmt::Kind::If: {
        std::vector<Slot> temps;
        CExpr cond = expr(*s.value, temps);
        std::string text = lang::print(*s.value);
        Action yes;
        yes.kind = ActionKind::BranchTrue;
        yes.expr = cond;
        yes.release = temps;
        yes.text = text;
        Action no = yes;
        no.kind = ActionKind::BranchFalse;
        StateId branch = materialize();
        emit(std::move(yes));
        stmts(s.body);
        Cursor then_end = std::move(cursor_);
        cursor_ = {branch, {}};
        emit(std::move(no));
        stmts(s.else_body);
        merge(std::move(then_end));
        break;
      }
      case Stmt::Kind::Repeat: {
        Slot counter = add_slot("$n" + std::to_string(loops_++), lang::TypeRef::integer());
        Action init;
        init.kind = ActionKind::LoopInit;
        init.counter = counter;
        init.count = s.count;
        init.text = std::to_string(s.count);
        emit(std::move(init));
        StateId test = materialize();
        Action cont;
        cont.kind = ActionKind::LoopContinue;
        cont.counter = counter;
        Action done = cont;
        done.kind = ActionKind::LoopExit;
        emit(std::move(cont));
        stmts(s.body);
        Action next;
        next.kind = ActionKind::LoopNext;
        next.counter = counter;
        emit(std::move(next), test);
        cursor_ = {test, {}};
        emit(std::move(done));
        break;
      }
    }
  }

  // Joins another control path into the current cursor. After any statement
  // the cursor dangles on the statement's last edge(s).
  void merge(Cursor other) {
    assert(!other.state && !cursor_.state);
    cursor_.dangling.insert(cursor_.dangling.end(), other.dangling.begin(),
                            other.dangling.end());
  }

  const lang::ValidatedProgram& vp_;
  const lang::RoutineInfo& info_;
  std::uint32_t& next_block_;
  Routine r_;
  Cursor cursor_;
  std::vector<Slot> temp_slots_;
  std::size_t temps_in_use_ = 0;
  int loops_ = 0;
};

}  // namespace

CfgModel build_cfg(const lang::ValidatedProgram& vp) {
  CfgModel m;
  const auto& prog = vp.program();
  for (std::size_t c = 0; c < prog.classes.size(); ++c) {
    ClassInfo ci;
    ci.name = prog.classes[c].name;
    for (const auto& a : prog.classes[c].attributes) ci.attributes.push_back({a.name, a.type});
    for (std::size_t k = 0; k < prog.classes[c].methods.size(); ++k) {
      ci.method_routines.push_back(static_cast<std::uint32_t>(vp.routine_of(c, k)));
    }
    m.classes.push_back(std::move(ci));
  }
  std::uint32_t next_block = 0;
  const auto& routines = vp.routines();
  for (std::size_t i = 0; i < routines.size(); ++i) {
    const auto& info = routines[i];
    RoutineBuilder b(vp, info, next_block);
    if (info.class_index < 0) {
      m.routines.push_back(b.build(prog.root, nullptr));
    } else {
      const auto& decl = prog.classes[static_cast<std::size_t>(info.class_index)]
                             .methods[static_cast<std::size_t>(info.method_index)];
      m.routines.push_back(b.build(decl.body, &decl));
    }
  }
  return m;
}

}  // namespace scoopwb::cfg
