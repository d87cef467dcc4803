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

#ifndef SCOOPWB_PROPERTIES_DETECTORS_HPP
#define SCOOPWB_PROPERTIES_DETECTORS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoopwb/runtime/configuration.hpp"
#include "scoopwb/scheduler/scheduler.hpp"

namespace scoopwb::properties {

using runtime::Configuration;
using runtime::HandlerId;
using runtime::ReservationId;

enum class ErrorKind : std::uint8_t {
  Deadlock,
  Stuck,
  ConflictingReservation,
  OrderViolation,
  RuntimeError,
};

/// "DEADLOCK", "STUCK", "CONFLICTING-RESERVATION", "ORDER-VIOLATION",
/// "RUNTIME-ERROR".
const char* to_string(ErrorKind k);
std::optional<ErrorKind> parse_error_kind(std::string_view s);

/// Which detectors an exploration runs. Runtime errors are always reported.
struct DetectorSet {
  bool deadlock = true;
  bool stuck = true;
  bool conflicting_reservation = true;
  bool order_guarantee = true;

  static DetectorSet none() { return {false, false, false, false}; }

  friend bool operator==(const DetectorSet&, const DetectorSet&) = default;
};

/// Detector names as used on the command line and in reports.
inline constexpr std::string_view kDetectorNames[] = {
    "deadlock", "stuck", "conflicting-reservation", "order-guarantee"};

/// Parses a comma-separated list of detector names; nullopt on an unknown name.
std::optional<DetectorSet> parse_detectors(std::string_view list);

/// Detector name reporting witnesses of kind `k` ("runtime-error" for faults).
std::string_view detector_of(ErrorKind k);

struct ConflictEvidence {
  HandlerId first_client = 0;
  ReservationId first = 0;
  HandlerId second_client = 0;
  ReservationId second = 0;
  HandlerId shared_target = 0;

  friend bool operator==(const ConflictEvidence&, const ConflictEvidence&) = default;
};

/// A dispatch that breaks the order guarantee: `dispatched` started at
/// `supplier` while `interfering` was mid-way (contiguity) or while an
/// earlier request of its own reservation was still pending (FIFO).
struct OrderEvidence {
  HandlerId supplier = 0;
  runtime::Request dispatched;
  ReservationId interfering = 0;
  bool fifo = false;

  friend bool operator==(const OrderEvidence&, const OrderEvidence&) = default;
};

struct ErrorWitness {
  ErrorKind kind = ErrorKind::Deadlock;
  std::uint32_t state = 0;         // explored state id (the pre-dispatch state for ORDER-VIOLATION)
  std::uint32_t depth = 0;         // length of the trace reaching the error
  std::optional<std::uint32_t> via;  // ORDER-VIOLATION: successor index of the dispatch
  Configuration config;            // the offending configuration
  std::vector<runtime::WaitEdge> cycle;      // DEADLOCK
  std::optional<ConflictEvidence> conflict;  // CONFLICTING-RESERVATION
  std::optional<OrderEvidence> order;        // ORDER-VIOLATION

  /// One-line human-readable description of the evidence.
  std::string summary() const;
};

/// Witness iff the wait-for graph has a cycle; the evidence is one cycle,
/// listed from its smallest handler id.
std::optional<ErrorWitness> detect_deadlock(const Configuration& c);

/// Witness iff there are no successors, the state is not terminal and not a
/// deadlock.
std::optional<ErrorWitness> detect_stuck(const Configuration& c, bool successors_empty);

/// Witness iff two open reservations of different clients share a target.
std::optional<ErrorWitness> detect_conflicting_reservation(const Configuration& c);

/// Witness iff the configuration carries a runtime fault.
std::optional<ErrorWitness> detect_runtime_error(const Configuration& c);

/// Checks dispatching `r` at `supplier` from configuration `pre` against
/// per-reservation FIFO order and contiguity.
std::optional<OrderEvidence> check_dispatch(const Configuration& pre, HandlerId supplier,
                                            const runtime::Request& r);

/// Re-checks a witness's evidence against its own configuration.
bool evidence_holds(const ErrorWitness& w, const scheduler::Scheduler& sched);

}  // namespace scoopwb::properties

#endif  // SCOOPWB_PROPERTIES_DETECTORS_HPP
