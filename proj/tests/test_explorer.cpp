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
#include <unordered_map>

#include "scoopwb/explorer/explorer.hpp"
#include "scoopwb/properties/detectors.hpp"
#include "support.hpp"

using namespace scoopwb;
using namespace scoopwb::explorer;
using execmodel::ModelKind;
using execmodel::model_for;
using properties::ErrorKind;

namespace {

ExploreOptions no_detectors() {
  ExploreOptions o;
  o.detectors = properties::DetectorSet::none();
  return o;
}

// Everything about a result that must not depend on scheduling.
auto fingerprint(const ExplorationResult& r) {
  std::multiset<std::tuple<ErrorKind, std::uint32_t, std::uint32_t>> errors;
  for (const auto& w : r.errors) errors.insert({w.kind, w.state, w.depth});
  std::vector<std::tuple<StateId, std::uint32_t, std::uint32_t>> states;
  for (const auto& s : r.states) states.emplace_back(s.parent, s.via, s.depth);
  return std::tuple(r.configurations, r.transitions, r.terminal, r.bound_exhausted, errors, states);
}

}  // namespace

TEST_CASE("explorer agrees with a plain breadth-first search") {
  for (const auto& name : testing::kSmallCorpus) {
    auto program = testing::compile_corpus(name);
    for (auto kind : {ModelKind::RQ, ModelKind::QoQ}) {
      CAPTURE(name);
      CAPTURE(execmodel::to_string(kind));
      const auto& model = model_for(kind);
      auto space = testing::enumerate_states(program, model);
      auto r = explore(program, model, no_detectors());
      CHECK(r.configurations == space.states.size());
      CHECK(r.transitions == space.transitions);
      CHECK(r.states.size() == r.configurations);
      CHECK_FALSE(r.bound_exhausted);

      std::unordered_map<std::string, std::uint32_t> depth;
      for (std::size_t i = 0; i < space.states.size(); ++i) {
        depth.emplace(runtime::canonical_key(space.states[i]), space.depth[i]);
      }
      scheduler::Scheduler sched(program, model);
      for (StateId s = 0; s < r.states.size(); ++s) {
        auto path = path_to(r, s);
        CHECK(path.size() == r.states[s].depth);
        auto key = runtime::canonical_key(replay(sched, path).final);
        REQUIRE(depth.count(key) == 1);
        CHECK(depth.at(key) == r.states[s].depth);
      }
    }
  }
}

TEST_CASE("exploration is deterministic across runs and worker counts") {
  for (std::string name : {"dp2_lazy", "pc5", "barbershop2"}) {
    auto program = testing::compile_corpus(name);
    for (auto kind : {ModelKind::RQ, ModelKind::QoQ}) {
      CAPTURE(name);
      ExploreOptions one;
      ExploreOptions four;
      four.workers = 4;
      auto base = fingerprint(explore(program, model_for(kind), one));
      CHECK(fingerprint(explore(program, model_for(kind), one)) == base);
      CHECK(fingerprint(explore(program, model_for(kind), four)) == base);
    }
  }
}

TEST_CASE("error-bearing states are never expanded") {
  std::size_t with_errors = 0;
  for (std::string name : {"dp2_lazy", "dp2_eager", "dp3_lazy_nocmd"}) {
    auto program = testing::compile_corpus(name);
    for (auto kind : {ModelKind::RQ, ModelKind::QoQ}) {
      CAPTURE(name);
      auto r = explore(program, model_for(kind));
      if (r.errors.empty()) continue;
      ++with_errors;
      std::set<StateId> bad;
      for (const auto& w : r.errors) {
        if (w.kind != ErrorKind::OrderViolation) bad.insert(w.state);
      }
      for (StateId s = 1; s < r.states.size(); ++s) CHECK(bad.count(r.states[s].parent) == 0);
    }
  }
  CHECK(with_errors >= 5);
}

TEST_CASE("every witness has a replayable shortest trace and valid evidence") {
  for (std::string name : {"dp2_lazy", "dp2_eager", "dp2_lazy_nocmd"}) {
    auto program = testing::compile_corpus(name);
    for (auto kind : {ModelKind::RQ, ModelKind::QoQ}) {
      CAPTURE(name);
      const auto& model = model_for(kind);
      scheduler::Scheduler sched(program, model);
      auto r = explore(program, model);
      std::uint32_t last_depth = 0;
      for (const auto& w : r.errors) {
        CHECK(w.depth >= last_depth);
        last_depth = w.depth;
        CHECK(properties::evidence_holds(w, sched));
        auto t = extract_trace(r, w);
        CHECK(t.actions.size() == w.depth);
        CHECK(runtime::canonical_key(t.final) == runtime::canonical_key(w.config));
        CHECK(w.depth == r.states[w.state].depth);
      }
    }
  }
}

TEST_CASE("trace extraction refuses witnesses from elsewhere") {
  auto program = testing::compile_corpus("dp2_lazy");
  auto r = explore(program, model_for(ModelKind::RQ));
  REQUIRE_FALSE(r.errors.empty());
  auto w = r.errors.front();
  w.state = static_cast<std::uint32_t>(r.states.size() + 5);
  CHECK_THROWS_AS(extract_trace(r, w), std::out_of_range);
  auto moved = r.errors.front();
  moved.state = 0;
  CHECK_THROWS_AS(extract_trace(r, moved), std::logic_error);
}

TEST_CASE("bounds stop the search and are reported") {
  auto program = testing::compile_corpus("dp2_lazy");
  ExploreOptions small;
  small.bounds.max_states = 100;
  auto r = explore(program, model_for(ModelKind::QoQ), small);
  CHECK(r.bound_exhausted);
  CHECK(r.configurations <= 100);

  ExploreOptions shallow;
  shallow.bounds.max_depth = 6;
  auto d = explore(program, model_for(ModelKind::RQ), shallow);
  CHECK(d.bound_exhausted);
  for (const auto& s : d.states) CHECK(s.depth <= 6);

  ExploreOptions roomy;
  roomy.bounds.max_depth = 1000;
  CHECK_FALSE(explore(program, model_for(ModelKind::RQ), roomy).bound_exhausted);
}

TEST_CASE("the empty program has one terminal configuration") {
  auto program = testing::compile_corpus("empty");
  for (auto kind : {ModelKind::RQ, ModelKind::QoQ}) {
    auto r = explore(program, model_for(kind));
    CHECK(r.configurations == 1);
    CHECK(r.transitions == 0);
    CHECK(r.terminal == 1);
    CHECK(r.errors.empty());
  }
}

TEST_CASE("detector switches only remove their own witnesses") {
  auto program = testing::compile_corpus("dp2_lazy");
  auto full = explore(program, model_for(ModelKind::QoQ));
  REQUIRE(full.has(ErrorKind::ConflictingReservation));
  ExploreOptions no_conflict;
  no_conflict.detectors.conflicting_reservation = false;
  auto r = explore(program, model_for(ModelKind::QoQ), no_conflict);
  CHECK_FALSE(r.has(ErrorKind::ConflictingReservation));
  CHECK_FALSE(r.has(ErrorKind::Deadlock));
  CHECK(r.configurations >= full.configurations);
}
