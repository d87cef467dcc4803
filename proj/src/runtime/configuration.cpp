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

#include "scoopwb/runtime/configuration.hpp"

#include <algorithm>

namespace scoopwb::runtime {

const char* to_string(HandlerStatus s) {
  switch (s) {
    case HandlerStatus::Running:
      return "RUNNING";
    case HandlerStatus::BlockedOnReserve:
      return "BLOCKED-ON-RESERVE";
    case HandlerStatus::BlockedOnQuery:
      return "BLOCKED-ON-QUERY";
    case HandlerStatus::Idle:
      return "IDLE";
    case HandlerStatus::Done:
      return "DONE";
  }
  return "?";
}

const char* to_string(WaitKind k) {
  switch (k) {
    case WaitKind::LockWait:
      return "LOCK-WAIT";
    case WaitKind::QueryWait:
      return "QUERY-WAIT";
    case WaitKind::SubqueueWait:
      return "SUBQUEUE-WAIT";
  }
  return "?";
}

Frame make_frame(const cfg::CfgModel& model, std::uint32_t routine, ObjectId current,
                 const std::vector<Value>& args) {
  const auto& r = model.routines[routine];
  Frame f;
  f.routine = routine;
  f.state = r.initial;
  f.current = current;
  f.slots.reserve(r.slots.size());
  for (std::size_t i = 0; i < r.slots.size(); ++i) {
    f.slots.push_back(i < args.size() && i < r.param_count ? args[i]
                                                           : Value::default_for(r.slots[i].type));
  }
  return f;
}

ObjectId allocate_object(Configuration& c, const cfg::CfgModel& model, std::uint32_t class_index,
                         HandlerId owner) {
  HeapObject o;
  o.class_index = class_index;
  o.owner = owner;
  for (const auto& a : model.classes[class_index].attributes) {
    o.attrs.push_back(Value::default_for(a.type));
  }
  c.heap.push_back(std::move(o));
  return static_cast<ObjectId>(c.heap.size() - 1);
}

Configuration initial_configuration(const cfg::CfgModel& model) {
  Configuration c;
  Handler root;
  root.status = HandlerStatus::Running;
  root.stack.push_back(make_frame(model, 0, kNoObject, {}));
  c.handlers.push_back(std::move(root));
  c.queues.emplace_back();
  return c;
}

namespace {

// Serializes a configuration while relabelling object ids in order of
// first encounter and reservation ids likewise.
class KeyWriter {
 public:
  explicit KeyWriter(const Configuration& c)
      : c_(c), object_label_(c.heap.size(), kNoObject) {}

  std::string run() {
    out_.reserve(256);
    put(c_.handlers.size());
    for (const auto& h : c_.handlers) handler(h);
    for (const auto& q : c_.queues) queue(q);
    heap();
    if (c_.fault) {
      put(1);
      put(c_.fault->handler);
      put(c_.fault->message.size());
      out_ += c_.fault->message;
    } else {
      put(0);
    }
    return std::move(out_);
  }

 private:
  void put(std::uint64_t v) {
    while (v >= 0x80) {
      out_.push_back(static_cast<char>((v & 0x7f) | 0x80));
      v >>= 7;
    }
    out_.push_back(static_cast<char>(v));
  }

  void put_signed(std::int64_t v) {
    put((static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63));
  }

  std::uint64_t object(ObjectId id) {
    if (id == kNoObject) return 0;
    if (object_label_[id] == kNoObject) {
      object_label_[id] = next_object_++;
      order_.push_back(id);
    }
    return std::uint64_t{object_label_[id]} + 1;
  }

  void reservation(ReservationId id) {
    auto it = std::find(res_seen_.begin(), res_seen_.end(), id);
    if (it == res_seen_.end()) {
      res_seen_.push_back(id);
      put(res_seen_.size() - 1);
    } else {
      put(static_cast<std::uint64_t>(it - res_seen_.begin()));
    }
  }

  void value(const Value& v) {
    out_.push_back(static_cast<char>(v.kind()));
    switch (v.kind()) {
      case Value::Kind::Int:
        put_signed(v.as_int());
        break;
      case Value::Kind::Bool:
        put(v.as_bool() ? 1 : 0);
        break;
      case Value::Kind::Ref:
        put(object(v.as_ref()));
        break;
      case Value::Kind::Null:
        break;
    }
  }

  void request(const Request& r) {
    put(static_cast<std::uint64_t>(r.kind));
    put(object(r.target));
    put(r.routine);
    put(r.args.size());
    for (const auto& a : r.args) value(a);
    put(r.client);
    reservation(r.reservation);
    put(r.index);
  }

  void handler(const Handler& h) {
    put(static_cast<std::uint64_t>(h.status));
    put(h.stack.size());
    for (const auto& f : h.stack) {
      put(f.routine);
      put(f.state);
      put(object(f.current));
      for (const auto& v : f.slots) value(v);
      put(f.pending_result ? std::uint64_t{*f.pending_result} + 1 : 0);
    }
    put(h.reservations.size());
    for (const auto& r : h.reservations) {
      reservation(r.id);
      put(r.targets.size());
      for (std::size_t i = 0; i < r.targets.size(); ++i) {
        put(r.targets[i]);
        put(r.logged[i]);
      }
    }
    if (h.awaiting) {
      put(1);
      put(h.awaiting->supplier);
      put(h.awaiting->dest);
    } else {
      put(0);
    }
    if (h.serving) {
      put(1);
      put(h.serving->client);
      put(static_cast<std::uint64_t>(h.serving->kind));
      reservation(h.serving->reservation);
    } else {
      put(0);
    }
    if (h.pending_return) {
      put(1);
      value(*h.pending_return);
    } else {
      put(0);
    }
    put(h.pending_targets.size());
    for (auto t : h.pending_targets) put(t);
  }

  void queue(const WorkQueue& q) {
    put(q.fifo.size());
    for (const auto& r : q.fifo) request(r);
    put(q.lock_holder ? std::uint64_t{*q.lock_holder} + 1 : 0);
    put(q.subqueues.size());
    for (const auto& s : q.subqueues) {
      put(s.owner);
      reservation(s.reservation);
      put(s.open ? 1 : 0);
      put(s.items.size());
      for (const auto& r : s.items) request(r);
    }
  }

  void object_body(const HeapObject& o) {
    put(o.class_index);
    put(o.owner);
    for (const auto& a : o.attrs) value(a);
  }

  void heap() {
    put(c_.heap.size());
    std::size_t done = 0;
    for (;;) {
      // Breadth-first over everything labelled so far; writing an object
      // labels the objects its attributes reference.
      while (done < order_.size()) object_body(c_.heap[order_[done++]]);
      if (order_.size() == c_.heap.size()) break;
      // Unreachable objects: pick the smallest by a label-independent
      // content description, label it, continue the traversal from it.
      ObjectId best = kNoObject;
      std::string best_desc;
      for (ObjectId i = 0; i < c_.heap.size(); ++i) {
        if (object_label_[i] != kNoObject) continue;
        std::string d = describe(c_.heap[i]);
        if (best == kNoObject || d < best_desc) {
          best = i;
          best_desc = std::move(d);
        }
      }
      object(best);
    }
  }

  std::string describe(const HeapObject& o) const {
    std::string d;
    auto add = [&d](std::uint64_t v) {
      for (int i = 7; i >= 0; --i) d.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    add(o.class_index);
    add(o.owner);
    for (const auto& a : o.attrs) {
      add(static_cast<std::uint64_t>(a.kind()));
      if (a.is_ref()) {
        auto l = object_label_[a.as_ref()];
        add(l == kNoObject ? ~std::uint64_t{0} : l);
      } else {
        add(static_cast<std::uint64_t>(a.as_int()));
      }
    }
    return d;
  }

  const Configuration& c_;
  std::vector<ObjectId> object_label_;
  std::vector<ObjectId> order_;
  ObjectId next_object_ = 0;
  std::vector<ReservationId> res_seen_;
  std::string out_;
};

}  // namespace

std::string canonical_key(const Configuration& c) { return KeyWriter(c).run(); }

std::vector<WaitEdge> wait_edges(const Configuration& c) {
  std::vector<WaitEdge> edges;
  for (std::size_t i = 0; i < c.handlers.size(); ++i) {
    const auto& h = c.handlers[i];
    auto from = static_cast<HandlerId>(i);
    switch (h.status) {
      case HandlerStatus::BlockedOnReserve:
        for (auto t : h.pending_targets) {
          const auto& holder = c.queues[t].lock_holder;
          if (holder && *holder != from) {
            WaitEdge e{from, *holder, WaitKind::LockWait};
            if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
          }
        }
        break;
      case HandlerStatus::BlockedOnQuery:
        if (h.awaiting) edges.push_back({from, h.awaiting->supplier, WaitKind::QueryWait});
        break;
      case HandlerStatus::Idle: {
        const auto& subs = c.queues[i].subqueues;
        if (!subs.empty() && subs.front().open && subs.front().items.empty()) {
          edges.push_back({from, subs.front().owner, WaitKind::SubqueueWait});
        }
        break;
      }
      default:
        break;
    }
  }
  return edges;
}

bool is_terminal(const Configuration& c) {
  if (c.fault) return false;
  for (std::size_t i = 0; i < c.handlers.size(); ++i) {
    const auto& h = c.handlers[i];
    const auto& q = c.queues[i];
    auto want = i == 0 ? HandlerStatus::Done : HandlerStatus::Idle;
    if (h.status != want || !h.stack.empty() || !h.reservations.empty() || h.pending_return ||
        h.serving) {
      return false;
    }
    if (!q.empty() || q.lock_holder) return false;
  }
  return true;
}

std::vector<ReservationView> open_reservations(const Configuration& c) {
  std::vector<ReservationView> out;
  for (std::size_t i = 0; i < c.handlers.size(); ++i) {
    for (const auto& r : c.handlers[i].reservations) {
      out.push_back({static_cast<HandlerId>(i), &r});
    }
  }
  return out;
}

ReservationId fresh_reservation_id(const Configuration& c) {
  std::vector<ReservationId> used;
  for (const auto& h : c.handlers) {
    for (const auto& r : h.reservations) used.push_back(r.id);
    if (h.serving) used.push_back(h.serving->reservation);
  }
  for (const auto& q : c.queues) {
    for (const auto& r : q.fifo) used.push_back(r.reservation);
    for (const auto& s : q.subqueues) {
      used.push_back(s.reservation);
      for (const auto& r : s.items) used.push_back(r.reservation);
    }
  }
  std::sort(used.begin(), used.end());
  ReservationId id = 0;
  for (auto u : used) {
    if (u == id) ++id;
    else if (u > id) break;
  }
  return id;
}

}  // namespace scoopwb::runtime
