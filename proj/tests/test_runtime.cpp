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
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "dot_check.hpp"
#include "scoopwb/execmodel/execmodel.hpp"
#include "scoopwb/runtime/configuration.hpp"
#include "support.hpp"

using namespace scoopwb;
using namespace scoopwb::runtime;

namespace {

// Applies a permutation to object ids and an injective relabelling to
// reservation ids everywhere they occur.
struct Renaming {
  std::vector<ObjectId> objects;
  std::map<ReservationId, ReservationId> reservations;

  Value value(Value v) const { return v.is_ref() ? Value::ref(objects.at(v.as_ref())) : v; }
  ObjectId object(ObjectId id) const { return id == kNoObject ? id : objects.at(id); }
  ReservationId reservation(ReservationId id) const {
    auto it = reservations.find(id);
    return it == reservations.end() ? id : it->second;
  }

  Request request(Request r) const {
    r.target = object(r.target);
    for (auto& a : r.args) a = value(a);
    r.reservation = reservation(r.reservation);
    return r;
  }

  Configuration apply(const Configuration& c) const {
    Configuration out = c;
    for (auto& h : out.handlers) {
      for (auto& f : h.stack) {
        f.current = object(f.current);
        for (auto& s : f.slots) s = value(s);
      }
      for (auto& r : h.reservations) r.id = reservation(r.id);
      if (h.serving) h.serving->reservation = reservation(h.serving->reservation);
      if (h.pending_return) h.pending_return = value(*h.pending_return);
    }
    for (auto& q : out.queues) {
      for (auto& r : q.fifo) r = request(r);
      for (auto& sq : q.subqueues) {
        sq.reservation = reservation(sq.reservation);
        for (auto& r : sq.items) r = request(r);
      }
    }
    for (std::size_t i = 0; i < c.heap.size(); ++i) {
      auto obj = c.heap[i];
      for (auto& a : obj.attrs) a = value(a);
      out.heap[objects[i]] = obj;
    }
    return out;
  }
};

Renaming random_renaming(const Configuration& c, std::mt19937& rng) {
  Renaming r;
  r.objects.resize(c.heap.size());
  std::iota(r.objects.begin(), r.objects.end(), ObjectId{0});
  std::shuffle(r.objects.begin(), r.objects.end(), rng);
  std::set<ReservationId> used;
  for (const auto& v : open_reservations(c)) used.insert(v.reservation->id);
  for (const auto& q : c.queues) {
    for (const auto& req : q.fifo) used.insert(req.reservation);
    for (const auto& sq : q.subqueues) used.insert(sq.reservation);
  }
  std::vector<ReservationId> fresh(used.begin(), used.end());
  for (auto& id : fresh) id += 100 + rng() % 50;
  std::sort(fresh.begin(), fresh.end());
  fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
  std::shuffle(fresh.begin(), fresh.end(), rng);
  std::size_t i = 0;
  for (auto id : used) {
    if (i < fresh.size()) r.reservations[id] = fresh[i++];
  }
  return r;
}

// Wait-for edges derived directly from their definitions.
std::set<std::tuple<HandlerId, HandlerId, WaitKind>> expected_edges(const Configuration& c) {
  std::set<std::tuple<HandlerId, HandlerId, WaitKind>> out;
  for (HandlerId h = 0; h < c.handlers.size(); ++h) {
    const auto& hd = c.handlers[h];
    if (hd.status == HandlerStatus::BlockedOnReserve) {
      for (auto t : hd.pending_targets) {
        auto holder = c.queues[t].lock_holder;
        if (holder && *holder != h) out.insert({h, *holder, WaitKind::LockWait});
      }
    }
    if (hd.status == HandlerStatus::BlockedOnQuery) {
      out.insert({h, hd.awaiting->supplier, WaitKind::QueryWait});
    }
    if (hd.status == HandlerStatus::Idle && !hd.pending_return) {
      for (const auto& sq : c.queues[h].subqueues) {
        if (!sq.open && sq.items.empty()) continue;
        if (sq.open && sq.items.empty()) out.insert({h, sq.owner, WaitKind::SubqueueWait});
        break;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("the initial configuration holds one running root handler") {
  auto program = testing::compile_fixture("m1_two_commands");
  auto c = initial_configuration(program);
  REQUIRE(c.handlers.size() == 1);
  CHECK(c.handlers[0].status == HandlerStatus::Running);
  REQUIRE(c.handlers[0].stack.size() == 1);
  CHECK(c.handlers[0].stack[0].routine == 0);
  CHECK(c.handlers[0].stack[0].current == kNoObject);
  CHECK(c.queues.size() == 1);
  CHECK(c.heap.empty());
  CHECK_FALSE(is_terminal(c));
}

TEST_CASE("canonical keys ignore object and reservation numbering") {
  std::mt19937 rng(7);
  for (std::string name : {"dp2_lazy", "pc5", "barbershop2"}) {
    auto program = testing::compile_corpus(name);
    for (auto kind : {execmodel::ModelKind::RQ, execmodel::ModelKind::QoQ}) {
      auto space = testing::enumerate_states(program, execmodel::model_for(kind));
      CAPTURE(name);
      for (std::size_t i = 0; i < space.states.size(); i += 7) {
        const auto& c = space.states[i];
        auto key = canonical_key(c);
        for (int round = 0; round < 3; ++round) {
          auto renamed = random_renaming(c, rng).apply(c);
          CHECK(canonical_key(renamed) == key);
        }
      }
    }
  }
}

TEST_CASE("canonical keys see every behavioural difference") {
  auto program = testing::compile_corpus("pc5");
  auto space = testing::enumerate_states(program, execmodel::model_for(execmodel::ModelKind::RQ));
  std::set<std::string> keys;
  for (const auto& c : space.states) keys.insert(canonical_key(c));
  CHECK(keys.size() == space.states.size());
  for (std::size_t i = 0; i < space.states.size(); i += 11) {
    auto c = space.states[i];
    auto key = canonical_key(c);
    for (auto& obj : c.heap) {
      for (auto& a : obj.attrs) {
        if (a.kind() != Value::Kind::Int) continue;
        auto saved = a;
        a = Value::integer(a.as_int() + 1);
        CHECK(canonical_key(c) != key);
        a = saved;
      }
    }
    auto& h = c.handlers[0];
    auto saved = h.status;
    h.status = saved == HandlerStatus::Done ? HandlerStatus::Idle : HandlerStatus::Done;
    CHECK(canonical_key(c) != key);
  }
}

TEST_CASE("runtime invariants hold in every reachable configuration") {
  for (const auto& name : testing::kSmallCorpus) {
    auto program = testing::compile_corpus(name);
    for (auto kind : {execmodel::ModelKind::RQ, execmodel::ModelKind::QoQ}) {
      CAPTURE(name);
      CAPTURE(execmodel::to_string(kind));
      auto space = testing::enumerate_states(program, execmodel::model_for(kind));
      for (std::size_t id = 0; id < space.states.size(); ++id) {
        const auto& c = space.states[id];
        REQUIRE_FALSE(c.handlers.empty());
        CHECK(c.queues.size() == c.handlers.size());
        if (!c.handlers[0].stack.empty()) CHECK(c.handlers[0].stack.front().routine == 0);
        auto live = [&](const Value& v) { return !v.is_ref() || v.as_ref() < c.heap.size(); };
        for (const auto& obj : c.heap) {
          CHECK(obj.owner < c.handlers.size());
          for (const auto& a : obj.attrs) CHECK(live(a));
        }
        std::size_t outstanding_queries = 0;
        for (HandlerId h = 0; h < c.handlers.size(); ++h) {
          const auto& hd = c.handlers[h];
          if (hd.status == HandlerStatus::Done) CHECK(hd.stack.empty());
          if (hd.status == HandlerStatus::BlockedOnQuery) {
            CHECK(hd.awaiting.has_value());
            ++outstanding_queries;
          }
          for (const auto& f : hd.stack) {
            for (const auto& s : f.slots) CHECK(live(s));
            if (f.current != kNoObject) CHECK(c.heap[f.current].owner == h);
          }
          auto owned_here = [&](const Request& r) {
            CHECK(c.heap.at(r.target).owner == h);
            for (const auto& a : r.args) CHECK(live(a));
          };
          for (const auto& r : c.queues[h].fifo) owned_here(r);
          for (const auto& sq : c.queues[h].subqueues) {
            for (const auto& r : sq.items) owned_here(r);
          }
        }
        std::size_t queries_in_flight = 0;
        for (HandlerId h = 0; h < c.handlers.size(); ++h) {
          const auto& q = c.queues[h];
          for (const auto& r : q.fifo) queries_in_flight += r.kind == RequestKind::Query;
          for (const auto& sq : q.subqueues) {
            for (const auto& r : sq.items) queries_in_flight += r.kind == RequestKind::Query;
          }
          const auto& hd = c.handlers[h];
          if (hd.serving && hd.serving->kind == RequestKind::Query) ++queries_in_flight;
        }
        CHECK(queries_in_flight == outstanding_queries);
        for (auto next : space.next[id]) {
          const auto& d = space.states[next];
          CHECK(d.handlers.size() >= c.handlers.size());
          CHECK(d.handlers.size() <= c.handlers.size() + 1);
          CHECK(d.heap.size() >= c.heap.size());
          for (std::size_t o = 0; o < c.heap.size(); ++o) CHECK(d.heap[o].owner == c.heap[o].owner);
        }
      }
    }
  }
}

TEST_CASE("wait-for edges follow their definitions") {
  for (const auto& name : testing::kSmallCorpus) {
    auto program = testing::compile_corpus(name);
    for (auto kind : {execmodel::ModelKind::RQ, execmodel::ModelKind::QoQ}) {
      CAPTURE(name);
      auto space = testing::enumerate_states(program, execmodel::model_for(kind));
      for (const auto& c : space.states) {
        std::set<std::tuple<HandlerId, HandlerId, WaitKind>> got;
        for (const auto& e : wait_edges(c)) {
          got.insert({e.from, e.to, e.kind});
          if (e.kind == WaitKind::LockWait) {
            CHECK(kind == execmodel::ModelKind::RQ);
            CHECK(c.handlers[e.from].status == HandlerStatus::BlockedOnReserve);
          }
          if (e.kind == WaitKind::QueryWait) {
            CHECK(c.handlers[e.from].status == HandlerStatus::BlockedOnQuery);
          }
        }
        CHECK(got == expected_edges(c));
        CHECK(wait_edges(c) == wait_edges(c));
      }
    }
  }
}

TEST_CASE("terminal configurations have no successors") {
  for (std::string name : {"dp2_eager", "pc5", "savages2"}) {
    auto program = testing::compile_corpus(name);
    for (auto kind : {execmodel::ModelKind::RQ, execmodel::ModelKind::QoQ}) {
      auto space = testing::enumerate_states(program, execmodel::model_for(kind));
      std::size_t terminal = 0;
      for (std::size_t i = 0; i < space.states.size(); ++i) {
        if (!is_terminal(space.states[i])) continue;
        ++terminal;
        CHECK(space.next[i].empty());
      }
      CHECK(terminal >= 1);
    }
  }
}

TEST_CASE("configuration export is well-formed DOT") {
  auto program = testing::compile_fixture("query_cycle");
  for (auto kind : {execmodel::ModelKind::RQ, execmodel::ModelKind::QoQ}) {
    auto space = testing::enumerate_states(program, execmodel::model_for(kind));
    for (const auto& c : space.states) {
      auto text = export_configuration_dot(c, program);
      testing::DotGraph g;
      REQUIRE_NOTHROW_MESSAGE(g = testing::DotChecker::check(text), text);
      for (HandlerId h = 0; h < c.handlers.size(); ++h) {
        CHECK(g.nodes.count("h" + std::to_string(h)) == 1);
      }
      for (std::size_t o = 0; o < c.heap.size(); ++o) CHECK(g.nodes.count("o" + std::to_string(o)));
      for (const auto& [a, b] : g.edges) {
        CHECK(g.nodes.count(a) == 1);
        CHECK(g.nodes.count(b) == 1);
      }
    }
  }
}
