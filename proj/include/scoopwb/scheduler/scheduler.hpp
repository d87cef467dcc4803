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

#ifndef SCOOPWB_SCHEDULER_SCHEDULER_HPP
#define SCOOPWB_SCHEDULER_SCHEDULER_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scoopwb/cfg/cfg.hpp"
#include "scoopwb/execmodel/execmodel.hpp"
#include "scoopwb/runtime/configuration.hpp"

namespace scoopwb::scheduler {

using runtime::Configuration;
using runtime::HandlerId;

/// Kinds of atomic synchronization steps, in successor order.
enum class SyncKind : std::uint8_t {
  Reserve,
  LogCommand,
  LogQueryAndWait,
  Dequeue,
  QueryReturn,
  EndBlock,
  SpawnSeparate,
};

const char* to_string(SyncKind k);

struct SyncAction {
  SyncKind kind = SyncKind::Reserve;
  HandlerId handler = 0;            // initiating handler
  std::optional<HandlerId> peer;    // supplier for logs, client for returns
  std::uint32_t choice = 0;         // Dequeue: candidate index
  std::string label;

  friend bool operator==(const SyncAction&, const SyncAction&) = default;
};

struct Successor {
  SyncAction action;
  Configuration config;
  std::size_t microsteps = 0;             // local steps run to reach the fixpoint
  std::optional<runtime::Request> dispatched;  // Dequeue: the request started
};

/// Thrown by the local interpreter; the scheduler turns it into a fault
/// recorded in the configuration.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The control program: local steps to a fixpoint, then one branch per
/// enabled synchronization action.
class Scheduler {
 public:
  Scheduler(const cfg::CfgModel& program, const execmodel::ExecutionModel& model);

  const cfg::CfgModel& program() const { return program_; }
  const execmodel::ExecutionModel& model() const { return model_; }

  /// Runs every handler's local steps until none is enabled, handlers
  /// visited in id order. Returns the number of local steps applied.
  std::size_t local_fixpoint(Configuration& c) const;

  /// As above with an explicit handler visiting order.
  std::size_t local_fixpoint(Configuration& c, const std::vector<HandlerId>& order) const;

  /// Runs at most `limit` local steps of one handler; returns steps applied.
  std::size_t local_steps(Configuration& c, HandlerId h, std::size_t limit) const;

  /// Enabled synchronization actions ordered by kind, handler, choice.
  std::vector<SyncAction> enabled(const Configuration& c) const;

  /// Applies `a` (which must be enabled) and advances to the next fixpoint.
  Successor apply(const Configuration& c, const SyncAction& a) const;

  /// Applies `a` but leaves the local steps it enables unexecuted.
  Configuration apply_unsettled(const Configuration& c, const SyncAction& a) const;

  /// One successor per enabled action, each already at its local fixpoint.
  std::vector<Successor> successors(const Configuration& c) const;

 private:
  bool step(Configuration& c, HandlerId h) const;
  std::size_t choices(const Configuration& c, SyncKind k, HandlerId h) const;
  bool fire(const Configuration& c, SyncKind k, HandlerId h, std::uint32_t choice,
            Successor& out, bool settle = true) const;

  const cfg::CfgModel& program_;
  const execmodel::ExecutionModel& model_;
};

/// Convenience forms over a fresh Scheduler.
Configuration local_fixpoint(const Configuration& c, const cfg::CfgModel& program,
                             const execmodel::ExecutionModel& model);
std::vector<std::pair<SyncAction, Configuration>> successors(
    const Configuration& c, const cfg::CfgModel& program, const execmodel::ExecutionModel& model);

}  // namespace scoopwb::scheduler

#endif  // SCOOPWB_SCHEDULER_SCHEDULER_HPP
