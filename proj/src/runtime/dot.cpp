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

#include "scoopwb/runtime/configuration.hpp"
#include "scoopwb/util/dot.hpp"

namespace scoopwb::runtime {

namespace {

std::string describe_request(const Request& r, const cfg::CfgModel& model) {
  std::string s = model.routines[r.routine].name + "(";
  for (std::size_t i = 0; i < r.args.size(); ++i) {
    if (i) s += ", ";
    s += r.args[i].to_string();
  }
  s += ") from h" + std::to_string(r.client) + " res " + std::to_string(r.reservation);
  return s;
}

}  // namespace

std::string export_configuration_dot(const Configuration& c, const cfg::CfgModel& model) {
  std::ostringstream os;
  os << "digraph configuration {\n";
  os << "  node [fontsize=10];\n";
  os << "  edge [fontsize=9];\n";
  for (std::size_t i = 0; i < c.handlers.size(); ++i) {
    const auto& h = c.handlers[i];
    std::string label = "h" + std::to_string(i) + "\n" + to_string(h.status);
    for (auto it = h.stack.rbegin(); it != h.stack.rend(); ++it) {
      label += "\n" + model.routines[it->routine].name + " @" + std::to_string(it->state);
    }
    for (const auto& r : h.reservations) {
      label += "\nreservation " + std::to_string(r.id) + ":";
      for (auto t : r.targets) label += " h" + std::to_string(t);
    }
    if (h.pending_return) label += "\nreturns " + h.pending_return->to_string();
    os << "  h" << i << " [shape=box, style=bold, label=" << util::dot_quote(label) << "];\n";

    const auto& q = c.queues[i];
    std::string qlabel = "queue h" + std::to_string(i);
    if (q.lock_holder) qlabel += "\nlocked by h" + std::to_string(*q.lock_holder);
    for (const auto& r : q.fifo) qlabel += "\n" + describe_request(r, model);
    for (const auto& s : q.subqueues) {
      qlabel += "\n[h" + std::to_string(s.owner) + (s.open ? " open" : " closed") + "]";
      for (const auto& r : s.items) qlabel += "\n  " + describe_request(r, model);
    }
    os << "  q" << i << " [shape=note, label=" << util::dot_quote(qlabel) << "];\n";
    os << "  h" << i << " -> q" << i << " [style=dotted, arrowhead=none];\n";
  }
  for (std::size_t o = 0; o < c.heap.size(); ++o) {
    const auto& obj = c.heap[o];
    const auto& cls = model.classes[obj.class_index];
    std::string label = "#" + std::to_string(o) + " : " + cls.name;
    for (std::size_t a = 0; a < obj.attrs.size(); ++a) {
      label += "\n" + cls.attributes[a].name + " = " + obj.attrs[a].to_string();
    }
    os << "  o" << o << " [shape=ellipse, label=" << util::dot_quote(label) << "];\n";
    os << "  h" << obj.owner << " -> o" << o << " [label=\"owns\"];\n";
  }
  for (const auto& e : wait_edges(c)) {
    os << "  h" << e.from << " -> h" << e.to << " [color=red, label=" << util::dot_quote(to_string(e.kind))
       << "];\n";
  }
  if (c.fault) {
    os << "  fault [shape=octagon, color=red, label="
       << util::dot_quote("error in h" + std::to_string(c.fault->handler) + ": " + c.fault->message)
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace scoopwb::runtime
