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

#ifndef SCOOPWB_TESTS_SUPPORT_HPP
#define SCOOPWB_TESTS_SUPPORT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scoopwb/cfg/cfg.hpp"
#include "scoopwb/execmodel/execmodel.hpp"
#include "scoopwb/runtime/configuration.hpp"
#include "scoopwb/scheduler/scheduler.hpp"

namespace scoopwb::testing {

/// Parses, validates and compiles program text; throws std::runtime_error
/// listing the diagnostics if the program is not valid.
cfg::CfgModel compile_source(std::string_view source);

/// Compiles tests/fixtures/<name>.scoop.
cfg::CfgModel compile_fixture(std::string_view name);

/// Compiles an embedded corpus program.
cfg::CfgModel compile_corpus(std::string_view name);

/// Reachable fixpoint states found by a plain breadth-first search over
/// Scheduler::successors. Faulted states are kept but not expanded, which is
/// what the explorer does with every detector switched off.
struct StateSpace {
  std::vector<runtime::Configuration> states;
  std::vector<std::uint32_t> depth;
  std::vector<std::vector<std::uint32_t>> next;  // successor state ids, per state
  std::size_t transitions = 0;
};

StateSpace enumerate_states(const cfg::CfgModel& program, const execmodel::ExecutionModel& model,
                            std::size_t limit = 200'000);

/// Corpus programs small enough for whole-space property checks.
inline const std::vector<std::string> kSmallCorpus = {
    "empty",           "dp2_eager_nocmd", "dp2_lazy_nocmd", "dp2_eager", "dp2_lazy",
    "pc5",             "barbershop2",     "savages2",       "dp3_lazy_nocmd",
};

}  // namespace scoopwb::testing

#endif  // SCOOPWB_TESTS_SUPPORT_HPP
