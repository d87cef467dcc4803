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

#include "scoopwb/scheduler/scheduler.hpp"

#include <algorithm>
#include <numeric>

namespace scoopwb::scheduler {

using cfg::ActionKind;
using cfg::CExpr;
using cfg::VarRef;
using runtime::Frame;
using runtime::HandlerStatus;
using runtime::ObjectId;
using runtime::Value;

const char* to_string(SyncKind k) {
  switch (k) {
    case SyncKind::Reserve:
      return "reserve";
    case SyncKind::LogCommand:
      return "log-command";
    case SyncKind::LogQueryAndWait:
      return "log-query";
    case SyncKind::Dequeue:
      return "dequeue";
    case SyncKind::QueryReturn:
      return "query-return";
    case SyncKind::EndBlock:
      return "end-block";
    case SyncKind::SpawnSeparate:
      return "spawn";
  }
  return "?";
}

namespace {

constexpr std::size_t kStepBudget = 1'000'000;
constexpr std::size_t kMaxStackDepth = 512;

constexpr SyncKind kAllKinds[] = {
    SyncKind::Reserve,     SyncKind::LogCommand, SyncKind::LogQueryAndWait,
    SyncKind::Dequeue,     SyncKind::QueryReturn, SyncKind::EndBlock,
    SyncKind::SpawnSeparate,
};

std::string handler_name(HandlerId h) { return "h" + std::to_string(h); }

// Expression evaluation over one frame's slots and current object.
class Evaluator {
 public:
  Evaluator(const cfg::CfgModel& program, const Configuration& c) : program_(program), c_(c) {}

  Value read(const VarRef& v, const std::vector<Value>& slots, ObjectId current) const {
    if (v.kind == VarRef::Kind::Local) {
      if (v.index >= slots.size()) throw RuntimeError("read of an unbound variable");
      return slots[v.index];
    }
    if (current == runtime::kNoObject) throw RuntimeError("attribute read without a current object");
    return c_.heap[current].attrs[v.index];
  }

  Value eval(const CExpr& e, const std::vector<Value>& slots, ObjectId current) const {
    switch (e.kind) {
      case CExpr::Kind::Int:
        return Value::integer(e.value);
      case CExpr::Kind::Bool:
        return Value::boolean(e.value != 0);
      case CExpr::Kind::Var:
        return read(e.var, slots, current);
      case CExpr::Kind::Not:
        return Value::boolean(!eval(e.operands[0], slots, current).as_bool());
      case CExpr::Kind::Binary:
        return binary(e.op, eval(e.operands[0], slots, current),
                      eval(e.operands[1], slots, current));
      case CExpr::Kind::GuardQuery: {
        Value target = read(e.var, slots, current);
        if (!target.is_ref()) throw RuntimeError("guard query on a NULL target");
        const auto& routine = program_.routines[e.routine];
        if (!routine.pure_result) throw RuntimeError("guard query without a direct-read result");
        std::vector<Value> args;
        for (const auto& a : e.operands) args.push_back(eval(a, slots, current));
        return eval(*routine.pure_result, args, target.as_ref());
      }
    }
    return Value::null();
  }

  std::vector<Value> eval_all(const std::vector<CExpr>& es, const std::vector<Value>& slots,
                              ObjectId current) const {
    std::vector<Value> out;
    out.reserve(es.size());
    for (const auto& e : es) out.push_back(eval(e, slots, current));
    return out;
  }

 private:
  static Value binary(lang::BinaryOp op, const Value& a, const Value& b) {
    std::int64_t r = 0;
    switch (op) {
      case lang::BinaryOp::Add:
        if (__builtin_add_overflow(a.as_int(), b.as_int(), &r)) {
          throw RuntimeError("integer overflow");
        }
        return Value::integer(r);
      case lang::BinaryOp::Sub:
        if (__builtin_sub_overflow(a.as_int(), b.as_int(), &r)) {
          throw RuntimeError("integer overflow");
        }
        return Value::integer(r);
      case lang::BinaryOp::Eq:
        return Value::boolean(a == b);
      case lang::BinaryOp::Lt:
        return Value::boolean(a.as_int() < b.as_int());
      case lang::BinaryOp::Le:
        return Value::boolean(a.as_int() <= b.as_int());
      case lang::BinaryOp::And:
        return Value::boolean(a.as_bool() && b.as_bool());
      case lang::BinaryOp::Or:
        return Value::boolean(a.as_bool() || b.as_bool());
    }
    return Value::null();
  }

  const cfg::CfgModel& program_;
  const Configuration& c_;
};

void store(Configuration& c, Frame& f, const VarRef& v, Value value) {
  if (v.kind == VarRef::Kind::Local) {
    f.slots[v.index] = value;
  } else {
    c.heap[f.current].attrs[v.index] = value;
  }
}

void release(Frame& f, const cfg::Routine& r, const cfg::Action& a) {
  for (auto s : a.release) f.slots[s] = Value::default_for(r.slots[s].type);
}

// The edge leaving the top frame's state, if the frame is not finished.
const cfg::Edge* current_edge(const cfg::CfgModel& program, const runtime::Handler& h) {
  if (h.stack.empty()) return nullptr;
  const auto& f = h.stack.back();
  const auto& r = program.routines[f.routine];
  if (f.state == r.final) return nullptr;
  return &r.edges[r.out[f.state].front()];
}

}  // namespace

Scheduler::Scheduler(const cfg::CfgModel& program, const execmodel::ExecutionModel& model)
    : program_(program), model_(model) {}

bool Scheduler::step(Configuration& c, HandlerId hid) const {
  auto& h = c.handlers[hid];
  if (h.status != HandlerStatus::Running || h.stack.empty()) return false;
  auto& f = h.stack.back();
  const auto& r = program_.routines[f.routine];

  if (f.state == r.final) {
    std::optional<Value> result;
    if (r.result_slot) result = f.slots[*r.result_slot];
    h.stack.pop_back();
    if (!h.stack.empty()) {
      auto& caller = h.stack.back();
      if (caller.pending_result) {
        if (result) caller.slots[*caller.pending_result] = *result;
        caller.pending_result.reset();
      }
    } else if (!h.serving) {
      h.status = HandlerStatus::Done;
    } else if (h.serving->kind == runtime::RequestKind::Query) {
      h.pending_return = result.value_or(Value::null());
    } else {
      h.serving.reset();
      h.status = HandlerStatus::Idle;
    }
    return true;
  }

  Evaluator ev(program_, c);
  const auto& out = r.out[f.state];
  const auto& e = r.edges[out.front()];
  const auto& a = e.action;
  switch (a.kind) {
    case ActionKind::Skip:
      f.state = e.to;
      return true;
    case ActionKind::Assign: {
      Value v = ev.eval(*a.expr, f.slots, f.current);
      store(c, f, a.var, v);
      release(f, r, a);
      f.state = e.to;
      return true;
    }
    case ActionKind::CreateLocal: {
      auto obj = runtime::allocate_object(c, program_, a.class_index, hid);
      store(c, f, a.var, Value::ref(obj));
      f.state = e.to;
      return true;
    }
    case ActionKind::BranchTrue:
    case ActionKind::BranchFalse: {
      bool taken = ev.eval(*a.expr, f.slots, f.current).as_bool();
      const auto& next = taken ? r.edges[out[0]] : r.edges[out[1]];
      release(f, r, a);
      f.state = next.to;
      return true;
    }
    case ActionKind::LoopInit:
      f.slots[a.counter] = Value::integer(a.count);
      f.state = e.to;
      return true;
    case ActionKind::LoopContinue:
    case ActionKind::LoopExit: {
      bool more = f.slots[a.counter].as_int() > 0;
      f.state = more ? r.edges[out[0]].to : r.edges[out[1]].to;
      return true;
    }
    case ActionKind::LoopNext:
      f.slots[a.counter] = Value::integer(f.slots[a.counter].as_int() - 1);
      f.state = e.to;
      return true;
    case ActionKind::CommandCall:
    case ActionKind::QueryCall: {
      Value target = ev.read(a.var, f.slots, f.current);
      if (!target.is_ref()) throw RuntimeError("call on a NULL target: " + a.text);
      auto owner = c.heap[target.as_ref()].owner;
      if (owner != hid) {
        if (!execmodel::holding_reservation(c, hid, owner)) {
          throw RuntimeError("separate call outside a reservation of its handler: " + a.text);
        }
        return false;
      }
      if (h.stack.size() >= kMaxStackDepth) throw RuntimeError("call stack depth exceeded");
      auto args = ev.eval_all(a.args, f.slots, f.current);
      release(f, r, a);
      f.state = e.to;
      if (a.kind == ActionKind::QueryCall) f.pending_result = a.dest;
      h.stack.push_back(runtime::make_frame(program_, a.routine, target.as_ref(), args));
      return true;
    }
    case ActionKind::BlockEnter: {
      std::vector<HandlerId> targets;
      for (const auto& v : a.targets) {
        Value t = ev.read(v, f.slots, f.current);
        if (!t.is_ref()) throw RuntimeError("NULL target in separate block: " + a.text);
        auto owner = c.heap[t.as_ref()].owner;
        if (std::find(targets.begin(), targets.end(), owner) == targets.end()) {
          targets.push_back(owner);
        }
      }
      h.pending_targets = std::move(targets);
      h.status = HandlerStatus::BlockedOnReserve;
      return true;
    }
    case ActionKind::BlockExit:
    case ActionKind::CreateSeparate:
      return false;
  }
  return false;
}

std::size_t Scheduler::local_steps(Configuration& c, HandlerId h, std::size_t limit) const {
  std::size_t n = 0;
  try {
    while (n < limit && !c.fault && step(c, h)) ++n;
  } catch (const RuntimeError& err) {
    c.fault = runtime::RuntimeFault{h, err.what()};
  }
  return n;
}

std::size_t Scheduler::local_fixpoint(Configuration& c,
                                      const std::vector<HandlerId>& order) const {
  std::size_t total = 0;
  for (auto h : order) {
    if (c.fault) break;
    auto n = local_steps(c, h, kStepBudget);
    total += n;
    if (n == kStepBudget && !c.fault) {
      c.fault = runtime::RuntimeFault{h, "local step budget exceeded"};
    }
  }
  model_.cleanup(c);
  return total;
}

std::size_t Scheduler::local_fixpoint(Configuration& c) const {
  std::vector<HandlerId> order(c.handlers.size());
  std::iota(order.begin(), order.end(), HandlerId{0});
  return local_fixpoint(c, order);
}

std::size_t Scheduler::choices(const Configuration& c, SyncKind k, HandlerId h) const {
  if (k == SyncKind::Dequeue) {
    if (c.handlers[h].status != HandlerStatus::Idle) return 0;
    return model_.dequeue_choices(c, h);
  }
  return 1;
}

bool Scheduler::fire(const Configuration& c, SyncKind k, HandlerId hid, std::uint32_t choice,
                     Successor& out, bool settle) const {
  const auto& h = c.handlers[hid];
  const cfg::Edge* edge = nullptr;
  if (h.status == HandlerStatus::Running || h.status == HandlerStatus::BlockedOnReserve) {
    edge = current_edge(program_, h);
  }
  auto edge_is = [&](ActionKind a) { return edge && edge->action.kind == a; };

  SyncAction act;
  act.kind = k;
  act.handler = hid;
  act.choice = choice;
  Configuration next;

  try {
    switch (k) {
      case SyncKind::Reserve: {
        if (h.status != HandlerStatus::BlockedOnReserve || !edge_is(ActionKind::BlockEnter)) {
          return false;
        }
        const auto& a = edge->action;
        const auto& frame = h.stack.back();
        execmodel::Guard guard = [&](const Configuration& cur) {
          Evaluator ev(program_, cur);
          return ev.eval(*a.expr, frame.slots, frame.current).as_bool();
        };
        next = c;
        if (!execmodel::reserve_in_place(next, hid, h.pending_targets,
                                         a.expr ? &guard : nullptr, model_)) {
          return false;
        }
        next.handlers[hid].stack.back().state = edge->to;
        act.label = "reserve " + handler_name(hid) + " [";
        for (std::size_t i = 0; i < h.pending_targets.size(); ++i) {
          act.label += (i ? ", " : "") + handler_name(h.pending_targets[i]);
        }
        act.label += "]";
        break;
      }
      case SyncKind::LogCommand:
      case SyncKind::LogQueryAndWait: {
        auto want = k == SyncKind::LogCommand ? ActionKind::CommandCall : ActionKind::QueryCall;
        if (h.status != HandlerStatus::Running || !edge_is(want)) return false;
        const auto& a = edge->action;
        const auto& frame = h.stack.back();
        Evaluator ev(program_, c);
        Value target = ev.read(a.var, frame.slots, frame.current);
        if (!target.is_ref()) return false;
        auto supplier = c.heap[target.as_ref()].owner;
        if (supplier == hid) return false;
        runtime::Request req;
        req.kind = k == SyncKind::LogCommand ? runtime::RequestKind::Command
                                             : runtime::RequestKind::Query;
        req.target = target.as_ref();
        req.routine = a.routine;
        req.args = ev.eval_all(a.args, frame.slots, frame.current);
        next = c;
        auto& f = next.handlers[hid].stack.back();
        release(f, program_.routines[f.routine], a);
        f.state = edge->to;
        execmodel::log_in_place(next, hid, supplier, std::move(req), model_, a.dest);
        act.peer = supplier;
        act.label = std::string(to_string(k)) + " " + handler_name(hid) + " -> " +
                    handler_name(supplier) + " " + program_.routines[a.routine].name;
        break;
      }
      case SyncKind::Dequeue: {
        if (h.status != HandlerStatus::Idle || choice >= model_.dequeue_choices(c, hid)) {
          return false;
        }
        next = c;
        auto r = execmodel::dispatch_in_place(next, hid, model_, program_, choice);
        act.peer = r.client;
        act.label = "dequeue " + handler_name(hid) + " " + program_.routines[r.routine].name +
                    " from " + handler_name(r.client);
        if (choice) act.label += " #" + std::to_string(choice);
        out.dispatched = std::move(r);
        break;
      }
      case SyncKind::QueryReturn: {
        if (!h.pending_return || !h.serving) return false;
        auto client = h.serving->client;
        const auto& ch = c.handlers[client];
        if (ch.status != HandlerStatus::BlockedOnQuery || !ch.awaiting ||
            ch.awaiting->supplier != hid) {
          return false;
        }
        next = c;
        Value v = *h.pending_return;
        auto& cl = next.handlers[client];
        cl.stack.back().slots[cl.awaiting->dest] = v;
        cl.awaiting.reset();
        cl.status = HandlerStatus::Running;
        auto& sup = next.handlers[hid];
        sup.pending_return.reset();
        sup.serving.reset();
        sup.status = HandlerStatus::Idle;
        act.peer = client;
        act.label = "query-return " + handler_name(hid) + " -> " + handler_name(client) + " " +
                    v.to_string();
        break;
      }
      case SyncKind::EndBlock: {
        if (h.status != HandlerStatus::Running || !edge_is(ActionKind::BlockExit)) return false;
        next = c;
        execmodel::end_in_place(next, hid, model_);
        next.handlers[hid].stack.back().state = edge->to;
        act.label = "end-block " + handler_name(hid);
        break;
      }
      case SyncKind::SpawnSeparate: {
        if (h.status != HandlerStatus::Running || !edge_is(ActionKind::CreateSeparate)) {
          return false;
        }
        const auto& a = edge->action;
        next = c;
        auto obj = execmodel::spawn_in_place(next, hid, a.class_index, program_);
        auto& f = next.handlers[hid].stack.back();
        store(next, f, a.var, Value::ref(obj));
        f.state = edge->to;
        auto spawned = static_cast<HandlerId>(next.handlers.size() - 1);
        act.peer = spawned;
        act.label = "spawn " + handler_name(hid) + " " + program_.classes[a.class_index].name +
                    " -> " + handler_name(spawned);
        break;
      }
    }
  } catch (const RuntimeError& err) {
    next = c;
    next.fault = runtime::RuntimeFault{hid, err.what()};
    if (act.label.empty()) act.label = std::string(to_string(k)) + " " + handler_name(hid);
  }

  out.microsteps = next.fault || !settle ? 0 : local_fixpoint(next);
  out.action = std::move(act);
  out.config = std::move(next);
  return true;
}

std::vector<Successor> Scheduler::successors(const Configuration& c) const {
  std::vector<Successor> result;
  if (c.fault) return result;
  for (auto k : kAllKinds) {
    for (std::size_t i = 0; i < c.handlers.size(); ++i) {
      auto h = static_cast<HandlerId>(i);
      auto n = choices(c, k, h);
      for (std::uint32_t choice = 0; choice < n; ++choice) {
        Successor s;
        if (fire(c, k, h, choice, s)) result.push_back(std::move(s));
      }
    }
  }
  return result;
}

std::vector<SyncAction> Scheduler::enabled(const Configuration& c) const {
  std::vector<SyncAction> out;
  for (auto& s : successors(c)) out.push_back(std::move(s.action));
  return out;
}

Successor Scheduler::apply(const Configuration& c, const SyncAction& a) const {
  Successor s;
  if (c.fault || !fire(c, a.kind, a.handler, a.choice, s)) {
    throw std::logic_error("synchronization action is not enabled: " + a.label);
  }
  return s;
}

Configuration Scheduler::apply_unsettled(const Configuration& c, const SyncAction& a) const {
  Successor s;
  if (c.fault || !fire(c, a.kind, a.handler, a.choice, s, false)) {
    throw std::logic_error("synchronization action is not enabled: " + a.label);
  }
  return std::move(s.config);
}

Configuration local_fixpoint(const Configuration& c, const cfg::CfgModel& program,
                             const execmodel::ExecutionModel& model) {
  Configuration next = c;
  Scheduler(program, model).local_fixpoint(next);
  return next;
}

std::vector<std::pair<SyncAction, Configuration>> successors(
    const Configuration& c, const cfg::CfgModel& program, const execmodel::ExecutionModel& model) {
  std::vector<std::pair<SyncAction, Configuration>> out;
  for (auto& s : Scheduler(program, model).successors(c)) {
    out.emplace_back(std::move(s.action), std::move(s.config));
  }
  return out;
}

}  // namespace scoopwb::scheduler
