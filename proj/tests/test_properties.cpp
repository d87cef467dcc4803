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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixture_states.hpp"
#include "scoopwb/explorer/explorer.hpp"
#include "scoopwb/properties/detectors.hpp"
#include "support.hpp"

using namespace scoopwb;
using namespace scoopwb::properties;
using execmodel::ModelKind;
using execmodel::model_for;
using runtime::HandlerStatus;
using runtime::Request;
using runtime::Reservation;
using runtime::WaitKind;
using testing::Fixture;
using testing::has_wait_cycle;
using testing::shares_target;

namespace {

ErrorWitness wrap(ErrorWitness w, const runtime::Configuration& c) {
  w.config = c;
  return w;
}

}  // namespace

TEST_CASE("detector names and error kinds") {
  CHECK(parse_detectors("deadlock,stuck,conflicting-reservation,order-guarantee") ==
        DetectorSet{});
  CHECK(parse_detectors("") == DetectorSet::none());
  auto only = parse_detectors("stuck");
  REQUIRE(only.has_value());
  CHECK(only->stuck);
  CHECK_FALSE(only->deadlock);
  CHECK_FALSE(parse_detectors("deadlock,livelock").has_value());
  for (auto k : {ErrorKind::Deadlock, ErrorKind::Stuck, ErrorKind::ConflictingReservation,
                 ErrorKind::OrderViolation, ErrorKind::RuntimeError}) {
    CHECK(parse_error_kind(to_string(k)) == k);
  }
  CHECK(detector_of(ErrorKind::OrderViolation) == "order-guarantee");
  CHECK_FALSE(parse_error_kind("deadlock").has_value());
}

TEST_CASE("deadlock matches exactly the wait cycles") {
  SUBCASE("two clients each holding the lock the other wants") {
    Fixture f;
    f.hold(0, 1, {2});
    f.hold(1, 2, {3});
    f.c.queues[2].lock_holder = 0;
    f.c.queues[3].lock_holder = 1;
    f.block_on_reserve(0, {3});
    f.block_on_reserve(1, {2});
    auto w = detect_deadlock(f.c);
    REQUIRE(w.has_value());
    REQUIRE(w->cycle.size() == 2);
    CHECK(w->cycle[0].from == 0);
    CHECK(w->cycle[0].to == 1);
    CHECK(w->cycle[0].kind == WaitKind::LockWait);
    scheduler::Scheduler sched(f.program, model_for(ModelKind::RQ));
    CHECK(evidence_holds(wrap(*w, f.c), sched));

    f.c.handlers[1].status = HandlerStatus::Running;
    f.c.handlers[1].pending_targets.clear();
    CHECK_FALSE(detect_deadlock(f.c).has_value());
  }
  SUBCASE("a supplier parked at an open empty subqueue closes a cycle") {
    Fixture f;
    f.block_on_query(0, 2);
    runtime::Subqueue parked{1, 7, {}, true};
    runtime::Subqueue queued{0, 8, {}, true};
    f.c.queues[2].subqueues = {parked, queued};
    f.block_on_query(1, 0);
    auto w = detect_deadlock(f.c);
    REQUIRE(w.has_value());
    CHECK(w->cycle.size() == 3);
    CHECK(std::any_of(w->cycle.begin(), w->cycle.end(),
                      [](const runtime::WaitEdge& e) { return e.kind == WaitKind::SubqueueWait; }));
    f.c.queues[2].subqueues[0].open = false;
    CHECK_FALSE(detect_deadlock(f.c).has_value());
  }
  SUBCASE("a chain without a cycle") {
    Fixture f;
    f.block_on_query(0, 1);
    f.block_on_query(1, 2);
    CHECK_FALSE(detect_deadlock(f.c).has_value());
  }
}

TEST_CASE("two handlers waiting for each other's query answer deadlock") {
  auto program = testing::compile_fixture("query_cycle");
  for (auto kind : {ModelKind::RQ, ModelKind::QoQ}) {
    auto r = explorer::explore(program, model_for(kind));
    std::size_t cycles = 0;
    for (const auto& w : r.errors) {
      if (w.kind != ErrorKind::Deadlock) continue;
      ++cycles;
      REQUIRE(w.cycle.size() == 2);
      CHECK(w.cycle[0].kind == WaitKind::QueryWait);
      CHECK(w.cycle[1].kind == WaitKind::QueryWait);
      CHECK(w.cycle[0].from == w.cycle[1].to);
    }
    CHECK(cycles == 1);
    CHECK_FALSE(r.has(ErrorKind::Stuck));
  }
}

TEST_CASE("stuck matches blocked states that are neither terminal nor deadlocked") {
  Fixture f;
  f.block_on_query(0, 1);
  scheduler::Scheduler sched(f.program, model_for(ModelKind::QoQ));
  REQUIRE(sched.successors(f.c).empty());
  CHECK_FALSE(detect_deadlock(f.c).has_value());
  auto w = detect_stuck(f.c, true);
  REQUIRE(w.has_value());
  CHECK(evidence_holds(wrap(*w, f.c), sched));
  CHECK_FALSE(detect_stuck(f.c, false).has_value());

  Fixture done;
  done.c.handlers[0].status = HandlerStatus::Done;
  done.c.handlers[0].stack.clear();
  for (HandlerId h = 1; h < 4; ++h) done.c.handlers[h].status = HandlerStatus::Idle;
  REQUIRE(runtime::is_terminal(done.c));
  CHECK_FALSE(detect_stuck(done.c, true).has_value());

  Fixture cyc;
  cyc.block_on_query(1, 2);
  cyc.block_on_query(2, 1);
  CHECK_FALSE(detect_stuck(cyc.c, true).has_value());
  CHECK(detect_deadlock(cyc.c).has_value());

  Fixture faulted;
  faulted.c.fault = runtime::RuntimeFault{0, "boom"};
  CHECK_FALSE(detect_stuck(faulted.c, true).has_value());
  CHECK(detect_runtime_error(faulted.c).has_value());
  CHECK_FALSE(detect_runtime_error(f.c).has_value());
}

TEST_CASE("conflicting reservation matches shared targets of different clients") {
  Fixture f;
  f.hold(0, 1, {2});
  f.hold(1, 2, {3});
  CHECK_FALSE(detect_conflicting_reservation(f.c).has_value());
  f.hold(1, 3, {2});
  auto w = detect_conflicting_reservation(f.c);
  REQUIRE(w.has_value());
  REQUIRE(w->conflict.has_value());
  CHECK(w->conflict->shared_target == 2);
  CHECK(w->conflict->first_client != w->conflict->second_client);
  scheduler::Scheduler sched(f.program, model_for(ModelKind::QoQ));
  CHECK(evidence_holds(wrap(*w, f.c), sched));

  Fixture nested;
  nested.hold(0, 1, {2});
  nested.hold(0, 2, {3});
  CHECK_FALSE(detect_conflicting_reservation(nested.c).has_value());
}

TEST_CASE("detectors match reachable states if and only if the property fails") {
  std::size_t positives[3] = {0, 0, 0};
  for (std::string name : {"dp2_lazy", "dp2_lazy_nocmd", "dp3_lazy_nocmd", "dp2_eager"}) {
    auto program = testing::compile_corpus(name);
    for (auto kind : {ModelKind::RQ, ModelKind::QoQ}) {
      CAPTURE(name);
      scheduler::Scheduler sched(program, model_for(kind));
      auto space = testing::enumerate_states(program, model_for(kind));
      for (const auto& c : space.states) {
        bool none_next = sched.successors(c).empty();
        bool cyclic = has_wait_cycle(c);
        auto dl = detect_deadlock(c);
        auto st = detect_stuck(c, none_next);
        auto cr = detect_conflicting_reservation(c);
        CHECK(dl.has_value() == cyclic);
        CHECK(st.has_value() == (none_next && !cyclic && !runtime::is_terminal(c) && !c.fault));
        CHECK(cr.has_value() == shares_target(c));
        CHECK_FALSE((dl && st));
        positives[0] += dl.has_value();
        positives[1] += st.has_value();
        positives[2] += cr.has_value();
        if (dl) CHECK(evidence_holds(wrap(*dl, c), sched));
        if (cr) CHECK(evidence_holds(wrap(*cr, c), sched));
      }
    }
  }
  CHECK(positives[0] > 0);
  CHECK(positives[2] > 0);
}

TEST_CASE("dispatch checks flag FIFO and contiguity breaks") {
  Fixture f;
  auto req = [](HandlerId client, runtime::ReservationId id, std::uint32_t index) {
    Request r;
    r.target = 1;
    r.routine = 1;
    r.client = client;
    r.reservation = id;
    r.index = index;
    return r;
  };
  SUBCASE("a later request of the same reservation overtaking an earlier one") {
    f.c.queues[2].fifo = {req(0, 1, 0), req(0, 1, 1)};
    auto ev = check_dispatch(f.c, 2, req(0, 1, 1));
    REQUIRE(ev.has_value());
    CHECK(ev->fifo);
    CHECK_FALSE(check_dispatch(f.c, 2, req(0, 1, 0)).has_value());
  }
  SUBCASE("another reservation cutting into an open one") {
    f.hold(0, 1, {2});
    f.c.handlers[0].reservations[0].logged = {2};
    f.c.queues[2].fifo = {req(0, 1, 1), req(3, 2, 0)};
    auto ev = check_dispatch(f.c, 2, req(3, 2, 0));
    REQUIRE(ev.has_value());
    CHECK_FALSE(ev->fifo);
    CHECK(ev->interfering == 1);
  }
  SUBCASE("another reservation cutting into a closed, partly served one") {
    f.c.queues[2].fifo = {req(0, 1, 1), req(3, 2, 0)};
    auto ev = check_dispatch(f.c, 2, req(3, 2, 0));
    REQUIRE(ev.has_value());
    CHECK(ev->interfering == 1);
  }
  SUBCASE("reservations served one after another") {
    f.hold(3, 2, {2});
    f.c.queues[2].fifo = {req(0, 1, 0), req(0, 1, 1), req(3, 2, 0)};
    CHECK_FALSE(check_dispatch(f.c, 2, req(0, 1, 0)).has_value());
  }
}
