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

#include "support.hpp"

#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "scoopwb/cli/commands.hpp"
#include "scoopwb/lang/parser.hpp"
#include "scoopwb/lang/validate.hpp"

namespace scoopwb::testing {

cfg::CfgModel compile_source(std::string_view source) {
  auto program = lang::parse(source);
  auto diags = lang::check(program);
  if (!diags.empty()) {
    std::string msg = "program is not valid";
    for (const auto& d : diags) msg += "\n  " + lang::to_string(d);
    throw std::runtime_error(msg);
  }
  return cfg::build_cfg(lang::validate(std::move(program)));
}

cfg::CfgModel compile_fixture(std::string_view name) {
  std::string path = std::string(SCOOPWB_FIXTURE_DIR) + "/" + std::string(name) + ".scoop";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return compile_source(ss.str());
}

cfg::CfgModel compile_corpus(std::string_view name) {
  return cli::compile_program(std::string(name)).cfg;
}

StateSpace enumerate_states(const cfg::CfgModel& program, const execmodel::ExecutionModel& model,
                            std::size_t limit) {
  scheduler::Scheduler sched(program, model);
  StateSpace space;
  std::unordered_map<std::string, std::uint32_t> ids;
  auto add = [&](runtime::Configuration c, std::uint32_t depth) {
    auto [it, fresh] = ids.emplace(runtime::canonical_key(c), space.states.size());
    if (fresh) {
      space.states.push_back(std::move(c));
      space.depth.push_back(depth);
      space.next.emplace_back();
    }
    return it->second;
  };
  auto start = runtime::initial_configuration(program);
  sched.local_fixpoint(start);
  add(std::move(start), 0);
  std::deque<std::uint32_t> work{0};
  while (!work.empty()) {
    auto id = work.front();
    work.pop_front();
    if (space.states[id].fault) continue;
    auto succs = sched.successors(space.states[id]);
    for (auto& s : succs) {
      std::size_t before = space.states.size();
      auto to = add(std::move(s.config), space.depth[id] + 1);
      space.next[id].push_back(to);
      ++space.transitions;
      if (space.states.size() > before) work.push_back(to);
    }
    if (space.states.size() > limit) {
      throw std::runtime_error("state space larger than " + std::to_string(limit));
    }
  }
  return space;
}

}  // namespace scoopwb::testing
