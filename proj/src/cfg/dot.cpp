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

#include <sstream>

#include "scoopwb/cfg/cfg.hpp"
#include "scoopwb/util/dot.hpp"

namespace scoopwb::cfg {

std::string export_cfg_dot(const CfgModel& model) {
  std::ostringstream os;
  os << "digraph cfg {\n";
  os << "  node [shape=circle, fontsize=10];\n";
  os << "  edge [fontsize=9];\n";
  for (std::size_t r = 0; r < model.routines.size(); ++r) {
    const auto& routine = model.routines[r];
    auto node = [r](StateId s) { return "r" + std::to_string(r) + "_s" + std::to_string(s); };
    os << "  subgraph cluster_" << r << " {\n";
    os << "    label=" << util::dot_quote(routine.name) << ";\n";
    for (StateId s = 0; s < routine.state_count; ++s) {
      os << "    " << node(s);
      if (s == routine.initial) {
        os << " [shape=box, style=bold, label=\"InitialState\"]";
      } else if (s == routine.final) {
        os << " [shape=doublecircle, label=\"FinalState\"]";
      } else {
        os << " [label=\"" << s << "\"]";
      }
      os << ";\n";
    }
    for (const auto& e : routine.edges) {
      os << "    " << node(e.from) << " -> " << node(e.to)
         << " [label=" << util::dot_quote(e.action.label()) << "];\n";
    }
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace scoopwb::cfg
