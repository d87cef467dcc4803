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

#ifndef SCOOPWB_CFG_CFG_HPP
#define SCOOPWB_CFG_CFG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scoopwb/lang/ast.hpp"
#include "scoopwb/lang/validate.hpp"

namespace scoopwb::cfg {

using StateId = std::uint32_t;
using Slot = std::uint16_t;

/// A resolved variable: a frame slot or an attribute of the current object.
struct VarRef {
  enum class Kind : std::uint8_t { Local, Attribute };
  Kind kind = Kind::Local;
  Slot index = 0;

  friend bool operator==(const VarRef&, const VarRef&) = default;
};

/// Call-free compiled expression. Query calls in ordinary code are hoisted
/// into QueryCall actions that fill temporaries; only block guards keep
/// GuardQuery nodes, which the scheduler evaluates as direct reads.
struct CExpr {
  enum class Kind : std::uint8_t { Int, Bool, Var, Binary, Not, GuardQuery };

  Kind kind = Kind::Int;
  std::int64_t value = 0;  // Int, Bool
  VarRef var;              // Var; GuardQuery target
  lang::BinaryOp op = lang::BinaryOp::Add;
  std::uint32_t routine = 0;      // GuardQuery: routine of the queried method
  std::vector<CExpr> operands;    // Binary, Not, GuardQuery args

  friend bool operator==(const CExpr&, const CExpr&) = default;
};

enum class ActionKind : std::uint8_t {
  Skip,
  BlockEnter,
  BlockExit,
  CreateLocal,
  CreateSeparate,
  Assign,
  CommandCall,
  QueryCall,
  BranchTrue,
  BranchFalse,
  LoopInit,
  LoopContinue,
  LoopExit,
  LoopNext,
};

const char* to_string(ActionKind k);

/// The primitive action labelling one CFG edge.
struct Action {
  ActionKind kind = ActionKind::Skip;
  VarRef var;                      // Assign/Create: destination; calls: target
  std::vector<VarRef> targets;     // BlockEnter
  std::optional<CExpr> expr;       // Assign rhs, branch condition, block guard
  std::vector<CExpr> args;         // calls
  std::uint32_t class_index = 0;   // Create: class
  std::uint32_t routine = 0;       // calls: callee routine
  Slot dest = 0;                   // QueryCall: temporary receiving the result
  Slot counter = 0;                // loop actions
  std::int64_t count = 0;          // LoopInit
  std::uint32_t block = 0;         // BlockEnter/BlockExit pairing
  std::vector<Slot> release;       // temporaries reset once this action ran
  std::string text;                // human-readable label suffix

  std::string label() const;

  friend bool operator==(const Action&, const Action&) = default;
};

struct Edge {
  StateId from = 0;
  StateId to = 0;
  Action action;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct SlotInfo {
  std::string name;
  lang::TypeRef type;

  friend bool operator==(const SlotInfo&, const SlotInfo&) = default;
};

/// One routine's graph. Every state has exactly one outgoing edge, except
/// branch states (two: true then false, or continue then exit) and the final
/// state (none).
struct Routine {
  std::string name;
  int class_index = -1;
  int method_index = -1;
  bool is_query = false;
  std::size_t param_count = 0;
  std::vector<SlotInfo> slots;
  std::optional<Slot> result_slot;
  StateId initial = 0;
  StateId final = 0;
  std::size_t state_count = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<std::uint32_t>> out;  // per state, edge indices
  std::optional<CExpr> pure_result;             // set for guard-readable queries

  const Edge& edge(std::uint32_t i) const { return edges[i]; }

  friend bool operator==(const Routine&, const Routine&) = default;
};

struct ClassInfo {
  std::string name;
  std::vector<SlotInfo> attributes;
  std::vector<std::uint32_t> method_routines;

  friend bool operator==(const ClassInfo&, const ClassInfo&) = default;
};

struct CfgModel {
  std::vector<ClassInfo> classes;
  std::vector<Routine> routines;  // 0 = root

  const Routine& root() const { return routines.front(); }

  friend bool operator==(const CfgModel&, const CfgModel&) = default;
};

CfgModel build_cfg(const lang::ValidatedProgram& program);

/// DOT digraph with one cluster per routine. Initial states are drawn as
/// bold boxes, final states as double circles.
std::string export_cfg_dot(const CfgModel& model);

}  // namespace scoopwb::cfg

#endif  // SCOOPWB_CFG_CFG_HPP
