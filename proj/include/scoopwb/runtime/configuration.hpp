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

#ifndef SCOOPWB_RUNTIME_CONFIGURATION_HPP
#define SCOOPWB_RUNTIME_CONFIGURATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scoopwb/cfg/cfg.hpp"
#include "scoopwb/runtime/value.hpp"

namespace scoopwb::runtime {

enum class HandlerStatus : std::uint8_t {
  Running,
  BlockedOnReserve,
  BlockedOnQuery,
  Idle,
  Done,
};

const char* to_string(HandlerStatus s);

enum class RequestKind : std::uint8_t { Command, Query };

/// A separate call logged at a supplier.
struct Request {
  RequestKind kind = RequestKind::Command;
  ObjectId target = kNoObject;
  std::uint32_t routine = 0;
  std::vector<Value> args;
  HandlerId client = 0;
  ReservationId reservation = 0;
  std::uint32_t index = 0;  // position among the reservation's requests at this supplier

  friend bool operator==(const Request&, const Request&) = default;
};

/// One activation record. `current` is kNoObject for the root routine.
struct Frame {
  std::uint32_t routine = 0;
  cfg::StateId state = 0;
  ObjectId current = kNoObject;
  std::vector<Value> slots;
  std::optional<cfg::Slot> pending_result;  // caller slot awaiting a local query result

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// An open separate block of the owning handler. `targets` lists only the
/// handlers newly reserved by this block; targets already held by an
/// enclosing block stay with that block.
struct Reservation {
  ReservationId id = 0;
  std::vector<HandlerId> targets;
  std::vector<std::uint32_t> logged;  // requests logged per target so far

  friend bool operator==(const Reservation&, const Reservation&) = default;
};

struct Awaiting {
  HandlerId supplier = 0;
  cfg::Slot dest = 0;

  friend bool operator==(const Awaiting&, const Awaiting&) = default;
};

struct Serving {
  HandlerId client = 0;
  RequestKind kind = RequestKind::Command;
  ReservationId reservation = 0;

  friend bool operator==(const Serving&, const Serving&) = default;
};

struct Handler {
  HandlerStatus status = HandlerStatus::Idle;
  std::vector<Frame> stack;
  std::vector<Reservation> reservations;  // innermost last
  std::optional<Awaiting> awaiting;
  std::optional<Serving> serving;
  std::optional<Value> pending_return;    // finished query body, not yet delivered
  std::vector<HandlerId> pending_targets; // resolved targets while BlockedOnReserve

  friend bool operator==(const Handler&, const Handler&) = default;
};

struct HeapObject {
  std::uint32_t class_index = 0;
  HandlerId owner = 0;
  std::vector<Value> attrs;

  friend bool operator==(const HeapObject&, const HeapObject&) = default;
};

/// A client-private area inside a supplier's queue of queues.
struct Subqueue {
  HandlerId owner = 0;
  ReservationId reservation = 0;
  std::vector<Request> items;
  bool open = true;

  friend bool operator==(const Subqueue&, const Subqueue&) = default;
};

/// Per-supplier queue state. The RQ model uses `fifo` and `lock_holder`;
/// the QoQ model uses `subqueues`.
struct WorkQueue {
  std::vector<Request> fifo;
  std::optional<HandlerId> lock_holder;
  std::vector<Subqueue> subqueues;

  bool empty() const { return fifo.empty() && subqueues.empty(); }

  friend bool operator==(const WorkQueue&, const WorkQueue&) = default;
};

struct RuntimeFault {
  HandlerId handler = 0;
  std::string message;

  friend bool operator==(const RuntimeFault&, const RuntimeFault&) = default;
};

/// One global state of the model.
struct Configuration {
  std::vector<Handler> handlers;  // index = handler id; 0 is the root handler
  std::vector<WorkQueue> queues;  // parallel to handlers
  std::vector<HeapObject> heap;   // index = object id
  std::optional<RuntimeFault> fault;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

enum class WaitKind : std::uint8_t { LockWait, QueryWait, SubqueueWait };

const char* to_string(WaitKind k);

struct WaitEdge {
  HandlerId from = 0;
  HandlerId to = 0;
  WaitKind kind = WaitKind::LockWait;

  friend bool operator==(const WaitEdge&, const WaitEdge&) = default;
};

/// An open reservation together with its client.
struct ReservationView {
  HandlerId client = 0;
  const Reservation* reservation = nullptr;
};

/// Frame for `routine` with parameters bound to `args` and every other slot
/// default-initialized.
Frame make_frame(const cfg::CfgModel& model, std::uint32_t routine, ObjectId current,
                 const std::vector<Value>& args);

/// Fresh object of `class_index` owned by `owner`, attributes defaulted.
ObjectId allocate_object(Configuration& c, const cfg::CfgModel& model, std::uint32_t class_index,
                         HandlerId owner);

/// One running root handler at the root routine's initial state.
Configuration initial_configuration(const cfg::CfgModel& model);

/// Byte string identifying `c` up to a renaming of object and reservation ids.
std::string canonical_key(const Configuration& c);

/// Wait-for edges derived from the configuration.
std::vector<WaitEdge> wait_edges(const Configuration& c);

/// Root finished, every other handler idle with nothing queued, and no
/// reservation, lock or undelivered result left.
bool is_terminal(const Configuration& c);

std::vector<ReservationView> open_reservations(const Configuration& c);

/// Smallest reservation id not used by an open reservation or a queued request.
ReservationId fresh_reservation_id(const Configuration& c);

/// Debug rendering of handlers, heap, queues and wait edges.
std::string export_configuration_dot(const Configuration& c, const cfg::CfgModel& model);

}  // namespace scoopwb::runtime

#endif  // SCOOPWB_RUNTIME_CONFIGURATION_HPP
