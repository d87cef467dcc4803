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

#ifndef SCOOPWB_TESTS_ORACLE_HPP
#define SCOOPWB_TESTS_ORACLE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scoopwb::testing::oracle {

// An abstract reference semantics for straight-line request programs,
// written independently of the runtime: handlers are numbered in spawn
// order, objects and values are abstracted away, and every step is one
// synchronization action.

enum class Model { RQ, QoQ, AnySubqueue };

struct Op {
  enum Kind { Spawn, Reserve, Command, Query, End };
  Kind kind = Spawn;
  std::vector<int> handlers;  // Reserve: targets; Command/Query: the supplier
  std::string routine;        // Command/Query
};

struct Program {
  std::vector<Op> root;
  std::map<std::string, std::vector<Op>> bodies;  // absent when the body is purely local
};

struct Counts {
  std::size_t configurations = 0;
  std::size_t transitions = 0;
  std::size_t traces = 0;  // maximal interleavings enumerated
};

/// Enumerates every interleaving of enabled actions from the initial state
/// and counts the distinct states and distinct (state, action) pairs seen.
Counts enumerate(const Program& p, Model m);

/// A fixture program under tests/fixtures paired with its abstract form.
struct Micro {
  std::string fixture;
  Program abstract;
};

/// The three micro-programs: one client issuing two commands, one client
/// issuing a command then a query, and two clients sharing one supplier.
/// Handler 0 is the root; the others are numbered in spawn order.
std::vector<Micro> micro_programs();

}  // namespace scoopwb::testing::oracle

#endif  // SCOOPWB_TESTS_ORACLE_HPP
