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

#ifndef SCOOPWB_TESTS_FIXTURE_STATES_HPP
#define SCOOPWB_TESTS_FIXTURE_STATES_HPP

#include <algorithm>
#include <vector>

#include "scoopwb/runtime/configuration.hpp"
#include "support.hpp"

namespace scoopwb::testing {

using runtime::HandlerId;
using runtime::HandlerStatus;
using runtime::Reservation;

// Four handlers over fixture m3: h0 runs the root, h1..h3 are idle with
// empty queues and each owns one S object.
struct Fixture {
  cfg::CfgModel program = testing::compile_fixture("m3_two_clients");
  runtime::Configuration c;

  Fixture() {
    c.handlers.resize(4);
    c.queues.resize(4);
    c.handlers[0].status = HandlerStatus::Running;
    c.handlers[0].stack.push_back(runtime::make_frame(program, 0, runtime::kNoObject, {}));
    for (HandlerId h = 1; h < 4; ++h) runtime::allocate_object(c, program, 0, h);
  }

  void hold(HandlerId client, runtime::ReservationId id, std::vector<HandlerId> targets) {
    Reservation r;
    r.id = id;
    r.logged.assign(targets.size(), 0);
    r.targets = std::move(targets);
    c.handlers[client].reservations.push_back(std::move(r));
  }

  void block_on_reserve(HandlerId h, std::vector<HandlerId> targets) {
    c.handlers[h].status = HandlerStatus::BlockedOnReserve;
    c.handlers[h].pending_targets = std::move(targets);
  }

  void block_on_query(HandlerId h, HandlerId supplier) {
    c.handlers[h].status = HandlerStatus::BlockedOnQuery;
    c.handlers[h].awaiting = runtime::Awaiting{supplier, 0};
  }
};

// Reachability closure over wait edges; true if some handler reaches itself.
inline bool has_wait_cycle(const runtime::Configuration& c) {
  std::size_t n = c.handlers.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (const auto& e : runtime::wait_edges(c)) r[e.from][e.to] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (r[i][k] && r[k][j]) r[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i][i]) return true;
  }
  return false;
}

inline bool shares_target(const runtime::Configuration& c) {
  auto views = runtime::open_reservations(c);
  for (std::size_t i = 0; i < views.size(); ++i) {
    for (std::size_t j = i + 1; j < views.size(); ++j) {
      if (views[i].client == views[j].client) continue;
      for (auto t : views[i].reservation->targets) {
        const auto& other = views[j].reservation->targets;
        if (std::find(other.begin(), other.end(), t) != other.end()) return true;
      }
    }
  }
  return false;
}

}  // namespace scoopwb::testing

#endif  // SCOOPWB_TESTS_FIXTURE_STATES_HPP
