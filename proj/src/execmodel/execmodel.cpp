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

#include "scoopwb/execmodel/execmodel.hpp"

#include <algorithm>
#include <stdexcept>

namespace scoopwb::execmodel {

using runtime::HandlerStatus;
using runtime::Reservation;
using runtime::ReservationId;
using runtime::Subqueue;

std::string_view to_string(ModelKind k) { return k == ModelKind::RQ ? "rq" : "qoq"; }

std::optional<ModelKind> parse_model(std::string_view token) {
  if (token == "rq") return ModelKind::RQ;
  if (token == "qoq") return ModelKind::QoQ;
  return std::nullopt;
}

bool ExecutionModel::quiescent(const Configuration& c, HandlerId supplier) const {
  return c.handlers[supplier].status == HandlerStatus::Idle && c.queues[supplier].empty();
}

void ExecutionModel::cleanup(Configuration&) const {}

// Request queues.

bool RequestQueuesModel::can_acquire(const Configuration& c, HandlerId client,
                                     const std::vector<HandlerId>& fresh) const {
  return std::all_of(fresh.begin(), fresh.end(), [&](HandlerId t) {
    const auto& holder = c.queues[t].lock_holder;
    return !holder || *holder == client;
  });
}

void RequestQueuesModel::acquire(Configuration& c, HandlerId client,
                                 const std::vector<HandlerId>& fresh, ReservationId) const {
  for (auto t : fresh) c.queues[t].lock_holder = client;
}

void RequestQueuesModel::enqueue(Configuration& c, HandlerId supplier, Request r) const {
  c.queues[supplier].fifo.push_back(std::move(r));
}

std::size_t RequestQueuesModel::dequeue_choices(const Configuration& c, HandlerId supplier) const {
  return c.queues[supplier].fifo.empty() ? 0 : 1;
}

Request RequestQueuesModel::dequeue(Configuration& c, HandlerId supplier, std::size_t) const {
  auto& fifo = c.queues[supplier].fifo;
  Request r = std::move(fifo.front());
  fifo.erase(fifo.begin());
  return r;
}

void RequestQueuesModel::release(Configuration& c, HandlerId, const Reservation& r) const {
  for (auto t : r.targets) c.queues[t].lock_holder.reset();
}

// Queues of queues.

bool QueueOfQueuesModel::can_acquire(const Configuration&, HandlerId,
                                     const std::vector<HandlerId>&) const {
  return true;
}

void QueueOfQueuesModel::acquire(Configuration& c, HandlerId client,
                                 const std::vector<HandlerId>& fresh, ReservationId id) const {
  for (auto t : fresh) c.queues[t].subqueues.push_back(Subqueue{client, id, {}, true});
}

void QueueOfQueuesModel::enqueue(Configuration& c, HandlerId supplier, Request r) const {
  auto& subs = c.queues[supplier].subqueues;
  for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
    if (it->open && it->owner == r.client) {
      it->items.push_back(std::move(r));
      return;
    }
  }
  throw std::logic_error("no open subqueue for client at supplier");
}

namespace {

void drop_closed_heads(std::vector<Subqueue>& subs) {
  auto it = subs.begin();
  while (it != subs.end() && !it->open && it->items.empty()) ++it;
  subs.erase(subs.begin(), it);
}

const Subqueue* live_head(const std::vector<Subqueue>& subs) {
  for (const auto& s : subs) {
    if (s.open || !s.items.empty()) return &s;
  }
  return nullptr;
}

}  // namespace

std::size_t QueueOfQueuesModel::dequeue_choices(const Configuration& c, HandlerId supplier) const {
  const auto* head = live_head(c.queues[supplier].subqueues);
  return head && !head->items.empty() ? 1 : 0;
}

Request QueueOfQueuesModel::dequeue(Configuration& c, HandlerId supplier, std::size_t) const {
  auto& subs = c.queues[supplier].subqueues;
  drop_closed_heads(subs);
  auto& items = subs.front().items;
  Request r = std::move(items.front());
  items.erase(items.begin());
  drop_closed_heads(subs);
  return r;
}

void QueueOfQueuesModel::release(Configuration& c, HandlerId client, const Reservation& r) const {
  for (auto t : r.targets) {
    for (auto& s : c.queues[t].subqueues) {
      if (s.open && s.owner == client && s.reservation == r.id) s.open = false;
    }
  }
}

void QueueOfQueuesModel::cleanup(Configuration& c) const {
  for (auto& q : c.queues) {
    std::erase_if(q.subqueues, [](const Subqueue& s) { return !s.open && s.items.empty(); });
  }
}

std::size_t AnySubqueueModel::dequeue_choices(const Configuration& c, HandlerId supplier) const {
  const auto& subs = c.queues[supplier].subqueues;
  return static_cast<std::size_t>(
      std::count_if(subs.begin(), subs.end(), [](const Subqueue& s) { return !s.items.empty(); }));
}

Request AnySubqueueModel::dequeue(Configuration& c, HandlerId supplier, std::size_t choice) const {
  auto& subs = c.queues[supplier].subqueues;
  for (auto& s : subs) {
    if (s.items.empty()) continue;
    if (choice-- == 0) {
      Request r = std::move(s.items.front());
      s.items.erase(s.items.begin());
      drop_closed_heads(subs);
      return r;
    }
  }
  throw std::logic_error("dequeue choice out of range");
}

const ExecutionModel& model_for(ModelKind k) {
  static const RequestQueuesModel rq;
  static const QueueOfQueuesModel qoq;
  if (k == ModelKind::RQ) return rq;
  return qoq;
}

// Operations shared by all models.

std::vector<HandlerId> fresh_targets(const Configuration& c, HandlerId client,
                                     const std::vector<HandlerId>& targets) {
  std::vector<HandlerId> fresh;
  for (auto t : targets) {
    if (t == client) continue;
    if (holding_reservation(c, client, t)) continue;
    if (std::find(fresh.begin(), fresh.end(), t) != fresh.end()) continue;
    fresh.push_back(t);
  }
  return fresh;
}

const Reservation* holding_reservation(const Configuration& c, HandlerId client,
                                       HandlerId supplier) {
  const auto& rs = c.handlers[client].reservations;
  for (auto it = rs.rbegin(); it != rs.rend(); ++it) {
    if (std::find(it->targets.begin(), it->targets.end(), supplier) != it->targets.end()) {
      return &*it;
    }
  }
  return nullptr;
}

bool reserve_in_place(Configuration& c, HandlerId client, const std::vector<HandlerId>& targets,
                      const Guard* guard, const ExecutionModel& model) {
  auto fresh = fresh_targets(c, client, targets);
  if (!model.can_acquire(c, client, fresh)) return false;
  if (guard) {
    for (auto t : targets) {
      if (t != client && !model.quiescent(c, t)) return false;
    }
    if (!(*guard)(c)) return false;
  }
  Reservation r;
  r.id = runtime::fresh_reservation_id(c);
  r.targets = fresh;
  r.logged.assign(fresh.size(), 0);
  model.acquire(c, client, fresh, r.id);
  auto& h = c.handlers[client];
  h.reservations.push_back(std::move(r));
  h.pending_targets.clear();
  h.status = HandlerStatus::Running;
  return true;
}

std::optional<Configuration> try_reserve(const Configuration& c, HandlerId client,
                                         const std::vector<HandlerId>& targets,
                                         const Guard* guard, const ExecutionModel& model) {
  Configuration next = c;
  if (!reserve_in_place(next, client, targets, guard, model)) return std::nullopt;
  return next;
}

void log_in_place(Configuration& c, HandlerId client, HandlerId supplier, Request request,
                  const ExecutionModel& model, cfg::Slot dest) {
  auto& rs = c.handlers[client].reservations;
  Reservation* holder = nullptr;
  std::size_t slot = 0;
  for (auto it = rs.rbegin(); it != rs.rend() && !holder; ++it) {
    auto pos = std::find(it->targets.begin(), it->targets.end(), supplier);
    if (pos != it->targets.end()) {
      holder = &*it;
      slot = static_cast<std::size_t>(pos - it->targets.begin());
    }
  }
  if (!holder) throw std::logic_error("separate call on a handler that is not reserved");
  request.client = client;
  request.reservation = holder->id;
  request.index = holder->logged[slot]++;
  bool query = request.kind == runtime::RequestKind::Query;
  model.enqueue(c, supplier, std::move(request));
  if (query) {
    auto& h = c.handlers[client];
    h.status = HandlerStatus::BlockedOnQuery;
    h.awaiting = runtime::Awaiting{supplier, dest};
  }
}

Configuration log_request(const Configuration& c, HandlerId client, HandlerId supplier,
                          Request request, const ExecutionModel& model, cfg::Slot dest) {
  Configuration next = c;
  log_in_place(next, client, supplier, std::move(request), model, dest);
  return next;
}

Request dispatch_in_place(Configuration& c, HandlerId supplier, const ExecutionModel& model,
                          const cfg::CfgModel& program, std::size_t choice) {
  Request r = model.dequeue(c, supplier, choice);
  auto& h = c.handlers[supplier];
  h.stack.push_back(runtime::make_frame(program, r.routine, r.target, r.args));
  h.serving = runtime::Serving{r.client, r.kind, r.reservation};
  h.status = HandlerStatus::Running;
  return r;
}

std::optional<std::pair<Request, Configuration>> next_request(const Configuration& c,
                                                              HandlerId supplier,
                                                              const ExecutionModel& model,
                                                              const cfg::CfgModel& program,
                                                              std::size_t choice) {
  if (c.handlers[supplier].status != HandlerStatus::Idle) return std::nullopt;
  if (choice >= model.dequeue_choices(c, supplier)) return std::nullopt;
  Configuration next = c;
  Request r = dispatch_in_place(next, supplier, model, program, choice);
  return std::make_pair(std::move(r), std::move(next));
}

void end_in_place(Configuration& c, HandlerId client, const ExecutionModel& model) {
  auto& rs = c.handlers[client].reservations;
  if (rs.empty()) throw std::logic_error("block exit without an open reservation");
  Reservation r = std::move(rs.back());
  rs.pop_back();
  model.release(c, client, r);
}

Configuration end_reservation(const Configuration& c, HandlerId client,
                              const ExecutionModel& model) {
  Configuration next = c;
  end_in_place(next, client, model);
  return next;
}

runtime::ObjectId spawn_in_place(Configuration& c, HandlerId, std::uint32_t class_index,
                                 const cfg::CfgModel& program) {
  auto id = static_cast<HandlerId>(c.handlers.size());
  c.handlers.emplace_back();
  c.queues.emplace_back();
  return runtime::allocate_object(c, program, class_index, id);
}

std::pair<Configuration, runtime::ObjectId> spawn_separate(const Configuration& c,
                                                          HandlerId client,
                                                          std::uint32_t class_index,
                                                          const cfg::CfgModel& program) {
  Configuration next = c;
  auto obj = spawn_in_place(next, client, class_index, program);
  return {std::move(next), obj};
}

}  // namespace scoopwb::execmodel
