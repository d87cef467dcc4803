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

#include "scoopwb/explorer/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

namespace scoopwb::explorer {

using properties::ErrorKind;
using properties::ErrorWitness;
using runtime::Configuration;

std::size_t ExplorationResult::count(ErrorKind k) const {
  return static_cast<std::size_t>(
      std::count_if(errors.begin(), errors.end(), [k](const ErrorWitness& w) { return w.kind == k; }));
}

Configuration start_state(const scheduler::Scheduler& sched, std::size_t* microsteps) {
  Configuration c = runtime::initial_configuration(sched.program());
  auto n = sched.local_fixpoint(c);
  if (microsteps) *microsteps = n;
  return c;
}

namespace {

struct Item {
  StateId id;
  Configuration config;
};

// Everything learned about one frontier state, computed independently of
// all other states so it can run on any worker.
struct Expansion {
  std::vector<ErrorWitness> errors;
  bool terminal = false;
  bool cut_by_depth = false;
  std::vector<scheduler::Successor> successors;
  std::vector<std::string> keys;
  std::vector<std::optional<properties::OrderEvidence>> order;
};

Expansion expand(const scheduler::Scheduler& sched, const ExploreOptions& options,
                 const Configuration& c, std::uint32_t depth) {
  Expansion x;
  const auto& d = options.detectors;
  if (auto w = properties::detect_runtime_error(c)) {
    x.errors.push_back(std::move(*w));
    return x;
  }
  if (d.deadlock) {
    if (auto w = properties::detect_deadlock(c)) x.errors.push_back(std::move(*w));
  }
  if (d.conflicting_reservation) {
    if (auto w = properties::detect_conflicting_reservation(c)) x.errors.push_back(std::move(*w));
  }
  if (!x.errors.empty()) return x;

  x.successors = sched.successors(c);
  if (x.successors.empty()) {
    x.terminal = runtime::is_terminal(c);
    if (d.stuck) {
      if (auto w = properties::detect_stuck(c, true)) x.errors.push_back(std::move(*w));
    }
    return x;
  }
  if (options.bounds.max_depth && depth >= *options.bounds.max_depth) {
    x.cut_by_depth = true;
    x.successors.clear();
    return x;
  }
  x.keys.reserve(x.successors.size());
  x.order.resize(x.successors.size());
  for (std::size_t i = 0; i < x.successors.size(); ++i) {
    const auto& s = x.successors[i];
    x.keys.push_back(runtime::canonical_key(s.config));
    if (d.order_guarantee && s.dispatched) {
      x.order[i] = properties::check_dispatch(c, s.action.handler, *s.dispatched);
    }
  }
  return x;
}

template <typename F>
void parallel_for(std::size_t n, unsigned workers, F&& body) {
  if (workers <= 1 || n < 2 * static_cast<std::size_t>(workers)) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

}  // namespace

ExplorationResult explore(const cfg::CfgModel& program, const execmodel::ExecutionModel& model,
                          const ExploreOptions& options) {
  auto started = std::chrono::steady_clock::now();
  scheduler::Scheduler sched(program, model);
  ExplorationResult r;
  r.program = &program;
  r.model = &model;
  r.options = options;

  std::unordered_map<std::string, StateId> seen;
  Configuration init = start_state(sched, &r.microsteps);
  seen.emplace(runtime::canonical_key(init), 0);
  r.states.push_back({0, 0, 0});
  r.configurations = 1;

  std::vector<Item> frontier;
  frontier.push_back({0, std::move(init)});
  while (!frontier.empty()) {
    std::vector<Expansion> out(frontier.size());
    parallel_for(frontier.size(), options.workers, [&](std::size_t i) {
      out[i] = expand(sched, options, frontier[i].config, r.states[frontier[i].id].depth);
    });

    std::vector<Item> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      auto& x = out[i];
      StateId id = frontier[i].id;
      std::uint32_t depth = r.states[id].depth;
      for (auto& w : x.errors) {
        w.state = id;
        w.depth = depth;
        r.errors.push_back(std::move(w));
      }
      if (x.terminal) ++r.terminal;
      if (x.cut_by_depth) r.bound_exhausted = true;
      for (std::size_t j = 0; j < x.successors.size(); ++j) {
        auto& s = x.successors[j];
        ++r.transitions;
        r.microsteps += s.microsteps;
        if (x.order[j]) {
          ErrorWitness w;
          w.kind = ErrorKind::OrderViolation;
          w.state = id;
          w.depth = depth + 1;
          w.via = static_cast<std::uint32_t>(j);
          w.config = frontier[i].config;
          w.order = std::move(*x.order[j]);
          r.errors.push_back(std::move(w));
          continue;
        }
        auto found = seen.find(x.keys[j]);
        if (found != seen.end()) continue;
        if (r.configurations >= options.bounds.max_states) {
          r.bound_exhausted = true;
          continue;
        }
        auto nid = static_cast<StateId>(r.configurations++);
        seen.emplace(std::move(x.keys[j]), nid);
        r.states.push_back({id, static_cast<std::uint32_t>(j), depth + 1});
        next.push_back({nid, std::move(s.config)});
      }
    }
    frontier = std::move(next);
  }

  r.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            started)
                      .count();
  return r;
}

std::vector<std::uint32_t> path_to(const ExplorationResult& r, StateId s) {
  if (s >= r.states.size()) throw std::out_of_range("unknown state id");
  std::vector<std::uint32_t> path;
  while (s != 0) {
    path.push_back(r.states[s].via);
    s = r.states[s].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Trace replay(const scheduler::Scheduler& sched, const std::vector<std::uint32_t>& path) {
  Trace t;
  t.final = start_state(sched);
  for (auto idx : path) {
    auto succ = sched.successors(t.final);
    if (idx >= succ.size()) throw std::logic_error("trace step out of range during replay");
    t.actions.push_back(std::move(succ[idx].action));
    t.final = std::move(succ[idx].config);
  }
  return t;
}

Trace extract_trace(const ExplorationResult& r, const ErrorWitness& w) {
  bool known = std::any_of(r.errors.begin(), r.errors.end(), [&](const ErrorWitness& e) {
    return e.kind == w.kind && e.state == w.state && e.via == w.via;
  });
  if (!known || !r.program || !r.model) throw std::out_of_range("witness not found in result");
  scheduler::Scheduler sched(*r.program, *r.model);
  Trace t = replay(sched, path_to(r, w.state));
  if (runtime::canonical_key(t.final) != runtime::canonical_key(w.config)) {
    throw std::logic_error("trace replay does not reach the witness state");
  }
  if (w.via) {
    auto succ = sched.successors(t.final);
    if (*w.via >= succ.size()) throw std::logic_error("witness step out of range");
    t.actions.push_back(std::move(succ[*w.via].action));
    t.final = std::move(succ[*w.via].config);
  }
  return t;
}

}  // namespace scoopwb::explorer
