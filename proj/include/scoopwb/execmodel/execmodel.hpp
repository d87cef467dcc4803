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

#ifndef SCOOPWB_EXECMODEL_EXECMODEL_HPP
#define SCOOPWB_EXECMODEL_EXECMODEL_HPP

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "scoopwb/cfg/cfg.hpp"
#include "scoopwb/runtime/configuration.hpp"

namespace scoopwb::execmodel {

using runtime::Configuration;
using runtime::HandlerId;
using runtime::Request;

enum class ModelKind { RQ, QoQ };

/// "rq" or "qoq".
std::string_view to_string(ModelKind k);
std::optional<ModelKind> parse_model(std::string_view token);

/// The queueing discipline plugged into the scheduler. Implementations only
/// touch the queue state and lock fields; reservation bookkeeping and
/// handler status changes live in the free functions below.
class ExecutionModel {
 public:
  virtual ~ExecutionModel() = default;

  virtual std::string_view name() const = 0;

  /// Whether `client` may reserve the handlers in `fresh` right now.
  virtual bool can_acquire(const Configuration& c, HandlerId client,
                           const std::vector<HandlerId>& fresh) const = 0;
  virtual void acquire(Configuration& c, HandlerId client, const std::vector<HandlerId>& fresh,
                       runtime::ReservationId id) const = 0;
  virtual void enqueue(Configuration& c, HandlerId supplier, Request r) const = 0;

  /// Number of distinct requests the supplier could dispatch next.
  virtual std::size_t dequeue_choices(const Configuration& c, HandlerId supplier) const = 0;
  virtual Request dequeue(Configuration& c, HandlerId supplier, std::size_t choice) const = 0;

  /// Gives up what `acquire` took for the reservation's targets.
  virtual void release(Configuration& c, HandlerId client,
                       const runtime::Reservation& r) const = 0;

  /// Nothing queued at the supplier and the supplier idle, so its objects
  /// can be read without racing earlier requests.
  virtual bool quiescent(const Configuration& c, HandlerId supplier) const;

  /// Drops queue bookkeeping that no longer affects behaviour.
  virtual void cleanup(Configuration& c) const;
};

/// One lock-protected FIFO per handler; reservation takes all locks at once.
class RequestQueuesModel : public ExecutionModel {
 public:
  std::string_view name() const override { return "rq"; }
  bool can_acquire(const Configuration& c, HandlerId client,
                   const std::vector<HandlerId>& fresh) const override;
  void acquire(Configuration& c, HandlerId client, const std::vector<HandlerId>& fresh,
               runtime::ReservationId id) const override;
  void enqueue(Configuration& c, HandlerId supplier, Request r) const override;
  std::size_t dequeue_choices(const Configuration& c, HandlerId supplier) const override;
  Request dequeue(Configuration& c, HandlerId supplier, std::size_t choice) const override;
  void release(Configuration& c, HandlerId client, const runtime::Reservation& r) const override;
};

/// A FIFO of client-private subqueues per handler, drained in creation order.
class QueueOfQueuesModel : public ExecutionModel {
 public:
  std::string_view name() const override { return "qoq"; }
  bool can_acquire(const Configuration& c, HandlerId client,
                   const std::vector<HandlerId>& fresh) const override;
  void acquire(Configuration& c, HandlerId client, const std::vector<HandlerId>& fresh,
               runtime::ReservationId id) const override;
  void enqueue(Configuration& c, HandlerId supplier, Request r) const override;
  std::size_t dequeue_choices(const Configuration& c, HandlerId supplier) const override;
  Request dequeue(Configuration& c, HandlerId supplier, std::size_t choice) const override;
  void release(Configuration& c, HandlerId client, const runtime::Reservation& r) const override;
  void cleanup(Configuration& c) const override;
};

/// Test double: a QoQ variant that may dispatch from any nonempty subqueue.
class AnySubqueueModel : public QueueOfQueuesModel {
 public:
  std::string_view name() const override { return "qoq-any-subqueue"; }
  std::size_t dequeue_choices(const Configuration& c, HandlerId supplier) const override;
  Request dequeue(Configuration& c, HandlerId supplier, std::size_t choice) const override;
};

const ExecutionModel& model_for(ModelKind k);

/// Guard predicate evaluated against the configuration at reservation time.
using Guard = std::function<bool(const Configuration&)>;

/// Handlers among `targets` that a new reservation by `client` must acquire:
/// excludes the client itself and handlers held by its enclosing blocks.
std::vector<HandlerId> fresh_targets(const Configuration& c, HandlerId client,
                                     const std::vector<HandlerId>& targets);

/// Opens a reservation of `targets` for `client` if the model allows it and
/// the guard, when present, holds on quiescent targets. On failure the
/// client stays BLOCKED-ON-RESERVE and nothing is returned.
std::optional<Configuration> try_reserve(const Configuration& c, HandlerId client,
                                         const std::vector<HandlerId>& targets,
                                         const Guard* guard, const ExecutionModel& model);

/// Innermost open reservation of `client` that holds `supplier`.
const runtime::Reservation* holding_reservation(const Configuration& c, HandlerId client,
                                                HandlerId supplier);

/// Logs `request` at `supplier` under the client's reservation holding it.
/// A query additionally blocks the client until the result arrives in
/// `dest`. Throws std::logic_error if no reservation holds the supplier.
Configuration log_request(const Configuration& c, HandlerId client, HandlerId supplier,
                          Request request, const ExecutionModel& model, cfg::Slot dest = 0);

/// Dispatches the supplier's next request (the `choice`-th candidate) and
/// starts executing its body.
std::optional<std::pair<Request, Configuration>> next_request(const Configuration& c,
                                                              HandlerId supplier,
                                                              const ExecutionModel& model,
                                                              const cfg::CfgModel& program,
                                                              std::size_t choice = 0);

/// Closes the client's innermost reservation.
Configuration end_reservation(const Configuration& c, HandlerId client,
                              const ExecutionModel& model);

/// Creates a new idle handler owning one fresh object of `class_index`.
std::pair<Configuration, runtime::ObjectId> spawn_separate(const Configuration& c,
                                                          HandlerId client,
                                                          std::uint32_t class_index,
                                                          const cfg::CfgModel& program);

/// In-place forms of the operations above, used by the scheduler to avoid
/// copying a configuration twice per step. `reserve_in_place` leaves `c`
/// untouched when it returns false.
bool reserve_in_place(Configuration& c, HandlerId client, const std::vector<HandlerId>& targets,
                      const Guard* guard, const ExecutionModel& model);
void log_in_place(Configuration& c, HandlerId client, HandlerId supplier, Request request,
                  const ExecutionModel& model, cfg::Slot dest = 0);
Request dispatch_in_place(Configuration& c, HandlerId supplier, const ExecutionModel& model,
                          const cfg::CfgModel& program, std::size_t choice = 0);
void end_in_place(Configuration& c, HandlerId client, const ExecutionModel& model);
runtime::ObjectId spawn_in_place(Configuration& c, HandlerId client, std::uint32_t class_index,
                                 const cfg::CfgModel& program);

}  // namespace scoopwb::execmodel

#endif  // SCOOPWB_EXECMODEL_EXECMODEL_HPP
