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

#include "scoopwb/properties/detectors.hpp"

#include <algorithm>
#include <sstream>

namespace scoopwb::properties {

using runtime::WaitEdge;

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Deadlock:
      return "DEADLOCK";
    case ErrorKind::Stuck:
      return "STUCK";
    case ErrorKind::ConflictingReservation:
      return "CONFLICTING-RESERVATION";
    case ErrorKind::OrderViolation:
      return "ORDER-VIOLATION";
    case ErrorKind::RuntimeError:
      return "RUNTIME-ERROR";
  }
  return "?";
}

std::optional<ErrorKind> parse_error_kind(std::string_view s) {
  for (auto k : {ErrorKind::Deadlock, ErrorKind::Stuck, ErrorKind::ConflictingReservation,
                 ErrorKind::OrderViolation, ErrorKind::RuntimeError}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<DetectorSet> parse_detectors(std::string_view list) {
  DetectorSet set = DetectorSet::none();
  while (!list.empty()) {
    auto comma = list.find(',');
    auto name = list.substr(0, comma);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    if (name == "deadlock") {
      set.deadlock = true;
    } else if (name == "stuck") {
      set.stuck = true;
    } else if (name == "conflicting-reservation") {
      set.conflicting_reservation = true;
    } else if (name == "order-guarantee") {
      set.order_guarantee = true;
    } else if (!name.empty()) {
      return std::nullopt;
    }
  }
  return set;
}

std::string_view detector_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Deadlock:
      return "deadlock";
    case ErrorKind::Stuck:
      return "stuck";
    case ErrorKind::ConflictingReservation:
      return "conflicting-reservation";
    case ErrorKind::OrderViolation:
      return "order-guarantee";
    case ErrorKind::RuntimeError:
      return "runtime-error";
  }
  return "?";
}

std::string ErrorWitness::summary() const {
  std::ostringstream os;
  auto h = [](HandlerId id) { return "h" + std::to_string(id); };
  switch (kind) {
    case ErrorKind::Deadlock:
      os << "wait cycle";
      for (const auto& e : cycle) os << " " << h(e.from) << " -" << to_string(e.kind) << "->";
      if (!cycle.empty()) os << " " << h(cycle.front().from);
      break;
    case ErrorKind::Stuck: {
      os << "no enabled step; blocked:";
      bool any = false;
      for (std::size_t i = 0; i < config.handlers.size(); ++i) {
        auto s = config.handlers[i].status;
        if (s == runtime::HandlerStatus::BlockedOnReserve ||
            s == runtime::HandlerStatus::BlockedOnQuery) {
          os << " " << h(static_cast<HandlerId>(i)) << " " << runtime::to_string(s);
          any = true;
        }
      }
      if (!any) os << " none";
      break;
    }
    case ErrorKind::ConflictingReservation:
      if (conflict) {
        os << "reservations " << conflict->first << " of " << h(conflict->first_client) << " and "
           << conflict->second << " of " << h(conflict->second_client) << " share "
           << h(conflict->shared_target);
      }
      break;
    case ErrorKind::OrderViolation:
      if (order) {
        os << "supplier " << h(order->supplier) << " dispatched request "
           << order->dispatched.index << " of reservation " << order->dispatched.reservation;
        if (order->fifo) {
          os << " before an earlier request of the same reservation";
        } else {
          os << " while reservation " << order->interfering << " was partially processed";
        }
      }
      break;
    case ErrorKind::RuntimeError:
      if (config.fault) os << h(config.fault->handler) << ": " << config.fault->message;
      break;
  }
  return os.str();
}

namespace {

std::optional<std::vector<WaitEdge>> find_cycle(const std::vector<WaitEdge>& edges,
                                                std::size_t nodes) {
  std::vector<std::vector<const WaitEdge*>> adj(nodes);
  for (const auto& e : edges) adj[e.from].push_back(&e);
  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> colour(nodes, White);
  for (std::size_t root = 0; root < nodes; ++root) {
    if (colour[root] != White) continue;
    // Iterative DFS; `path` holds the edges leading to the node on top.
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    std::vector<const WaitEdge*> path;
    colour[root] = Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next == adj[node].size()) {
        colour[node] = Black;
        stack.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      const WaitEdge* e = adj[node][next++];
      if (colour[e->to] == Grey) {
        std::vector<WaitEdge> cycle{*e};
        for (auto it = path.rbegin(); it != path.rend() && cycle.back().from != e->to; ++it) {
          cycle.push_back(**it);
        }
        std::reverse(cycle.begin(), cycle.end());
        auto first = std::min_element(cycle.begin(), cycle.end(),
                                      [](const WaitEdge& a, const WaitEdge& b) {
                                        return a.from < b.from;
                                      });
        std::rotate(cycle.begin(), first, cycle.end());
        return cycle;
      }
      if (colour[e->to] == White) {
        colour[e->to] = Grey;
        path.push_back(e);
        stack.emplace_back(e->to, 0);
      }
    }
  }
  return std::nullopt;
}

std::vector<const runtime::Request*> pending_at(const Configuration& c, HandlerId supplier) {
  std::vector<const runtime::Request*> out;
  const auto& q = c.queues[supplier];
  for (const auto& r : q.fifo) out.push_back(&r);
  for (const auto& s : q.subqueues) {
    for (const auto& r : s.items) out.push_back(&r);
  }
  return out;
}

}  // namespace

std::optional<ErrorWitness> detect_deadlock(const Configuration& c) {
  auto cycle = find_cycle(runtime::wait_edges(c), c.handlers.size());
  if (!cycle) return std::nullopt;
  ErrorWitness w;
  w.kind = ErrorKind::Deadlock;
  w.config = c;
  w.cycle = std::move(*cycle);
  return w;
}

std::optional<ErrorWitness> detect_stuck(const Configuration& c, bool successors_empty) {
  if (!successors_empty || c.fault || runtime::is_terminal(c)) return std::nullopt;
  if (detect_deadlock(c)) return std::nullopt;
  ErrorWitness w;
  w.kind = ErrorKind::Stuck;
  w.config = c;
  return w;
}

std::optional<ErrorWitness> detect_conflicting_reservation(const Configuration& c) {
  auto open = runtime::open_reservations(c);
  for (std::size_t i = 0; i < open.size(); ++i) {
    for (std::size_t j = i + 1; j < open.size(); ++j) {
      if (open[i].client == open[j].client) continue;
      for (auto t : open[i].reservation->targets) {
        const auto& other = open[j].reservation->targets;
        if (std::find(other.begin(), other.end(), t) == other.end()) continue;
        ErrorWitness w;
        w.kind = ErrorKind::ConflictingReservation;
        w.config = c;
        w.conflict = ConflictEvidence{open[i].client, open[i].reservation->id, open[j].client,
                                      open[j].reservation->id, t};
        return w;
      }
    }
  }
  return std::nullopt;
}

std::optional<ErrorWitness> detect_runtime_error(const Configuration& c) {
  if (!c.fault) return std::nullopt;
  ErrorWitness w;
  w.kind = ErrorKind::RuntimeError;
  w.config = c;
  return w;
}

std::optional<OrderEvidence> check_dispatch(const Configuration& pre, HandlerId supplier,
                                            const runtime::Request& r) {
  auto pending = pending_at(pre, supplier);

  // Per reservation: number of pending requests and smallest pending index.
  struct Tally {
    ReservationId id;
    std::uint32_t count;
    std::uint32_t min_index;
  };
  std::vector<Tally> tallies;
  for (const auto* p : pending) {
    auto it = std::find_if(tallies.begin(), tallies.end(),
                           [&](const Tally& t) { return t.id == p->reservation; });
    if (it == tallies.end()) {
      tallies.push_back({p->reservation, 1, p->index});
    } else {
      ++it->count;
      it->min_index = std::min(it->min_index, p->index);
    }
  }

  OrderEvidence ev;
  ev.supplier = supplier;
  ev.dispatched = r;
  for (const auto& t : tallies) {
    if (t.id == r.reservation && t.min_index < r.index) {
      ev.interfering = r.reservation;
      ev.fifo = true;
      return ev;
    }
  }

  // Open reservations that already had requests processed here and may
  // still log more.
  for (const auto& view : runtime::open_reservations(pre)) {
    const auto& res = *view.reservation;
    if (res.id == r.reservation) continue;
    auto pos = std::find(res.targets.begin(), res.targets.end(), supplier);
    if (pos == res.targets.end()) continue;
    auto logged = res.logged[static_cast<std::size_t>(pos - res.targets.begin())];
    std::uint32_t waiting = 0;
    for (const auto& t : tallies) {
      if (t.id == res.id) waiting = t.count;
    }
    if (logged > waiting) {
      ev.interfering = res.id;
      return ev;
    }
  }

  // Closed reservations whose requests were partially processed.
  for (const auto& t : tallies) {
    if (t.id == r.reservation || t.min_index == 0) continue;
    bool open = false;
    for (const auto& view : runtime::open_reservations(pre)) {
      if (view.reservation->id == t.id) open = true;
    }
    if (!open) {
      ev.interfering = t.id;
      return ev;
    }
  }
  return std::nullopt;
}

bool evidence_holds(const ErrorWitness& w, const scheduler::Scheduler& sched) {
  const auto& c = w.config;
  switch (w.kind) {
    case ErrorKind::Deadlock: {
      if (w.cycle.empty()) return false;
      auto edges = runtime::wait_edges(c);
      for (std::size_t i = 0; i < w.cycle.size(); ++i) {
        const auto& e = w.cycle[i];
        if (std::find(edges.begin(), edges.end(), e) == edges.end()) return false;
        if (e.to != w.cycle[(i + 1) % w.cycle.size()].from) return false;
      }
      return true;
    }
    case ErrorKind::Stuck:
      return detect_stuck(c, sched.successors(c).empty()).has_value();
    case ErrorKind::ConflictingReservation: {
      if (!w.conflict) return false;
      const auto& ev = *w.conflict;
      if (ev.first_client == ev.second_client) return false;
      auto holds = [&](HandlerId client, ReservationId id) {
        for (const auto& r : c.handlers[client].reservations) {
          if (r.id == id) {
            return std::find(r.targets.begin(), r.targets.end(), ev.shared_target) !=
                   r.targets.end();
          }
        }
        return false;
      };
      return holds(ev.first_client, ev.first) && holds(ev.second_client, ev.second);
    }
    case ErrorKind::OrderViolation:
      return w.order && check_dispatch(c, w.order->supplier, w.order->dispatched).has_value();
    case ErrorKind::RuntimeError:
      return c.fault.has_value();
  }
  return false;
}

}  // namespace scoopwb::properties
