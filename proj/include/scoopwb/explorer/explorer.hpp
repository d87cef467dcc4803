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

#ifndef SCOOPWB_EXPLORER_EXPLORER_HPP
#define SCOOPWB_EXPLORER_EXPLORER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "scoopwb/cfg/cfg.hpp"
#include "scoopwb/execmodel/execmodel.hpp"
#include "scoopwb/properties/detectors.hpp"
#include "scoopwb/runtime/configuration.hpp"
#include "scoopwb/scheduler/scheduler.hpp"

namespace scoopwb::explorer {

using StateId = std::uint32_t;

struct Bounds {
  std::size_t max_states = 5'000'000;
  std::optional<std::size_t> max_depth;  // unlimited when empty
};

struct ExploreOptions {
  Bounds bounds;
  properties::DetectorSet detectors;
  unsigned workers = 1;
};

/// Reached state: how it was first reached in breadth-first order.
struct StateInfo {
  StateId parent = 0;        // the initial state is its own parent
  std::uint32_t via = 0;     // index of the successor taken from the parent
  std::uint32_t depth = 0;
};

struct ExplorationResult {
  const cfg::CfgModel* program = nullptr;
  const execmodel::ExecutionModel* model = nullptr;
  ExploreOptions options;

  std::size_t configurations = 0;
  std::size_t transitions = 0;
  std::size_t microsteps = 0;
  std::size_t terminal = 0;
  bool bound_exhausted = false;
  double duration_ms = 0;
  std::vector<properties::ErrorWitness> errors;
  std::vector<StateInfo> states;  // predecessor map, indexed by StateId

  std::size_t count(properties::ErrorKind k) const;
  bool has(properties::ErrorKind k) const { return count(k) > 0; }
};

struct Trace {
  std::vector<scheduler::SyncAction> actions;
  runtime::Configuration final;
};

/// Breadth-first exploration from the initial configuration. States are
/// deduplicated by canonical key; error-bearing states are not expanded.
/// With several workers each level is expanded in parallel and merged in
/// frontier order, so results do not depend on the worker count.
ExplorationResult explore(const cfg::CfgModel& program, const execmodel::ExecutionModel& model,
                          const ExploreOptions& options = {});

/// Initial configuration advanced to its local fixpoint: the root of every
/// exploration and trace replay.
runtime::Configuration start_state(const scheduler::Scheduler& sched, std::size_t* microsteps = nullptr);

/// Shortest trace reaching the witness, validated by replay. Throws
/// std::out_of_range for a witness that is not part of `r`, and
/// std::logic_error if the replay does not reproduce the witness state.
Trace extract_trace(const ExplorationResult& r, const properties::ErrorWitness& w);

/// Replays a path of successor indices from the start state.
Trace replay(const scheduler::Scheduler& sched, const std::vector<std::uint32_t>& path);

/// Successor indices leading from the start state to `s`.
std::vector<std::uint32_t> path_to(const ExplorationResult& r, StateId s);

}  // namespace scoopwb::explorer

#endif  // SCOOPWB_EXPLORER_EXPLORER_HPP
