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

#ifndef SCOOPWB_PROPERTIES_ORDER_HPP
#define SCOOPWB_PROPERTIES_ORDER_HPP

#include <vector>

#include "scoopwb/explorer/explorer.hpp"
#include "scoopwb/properties/detectors.hpp"

namespace scoopwb::properties {

/// Walks the explored state space again, under the same bounds and error
/// pruning as `r`, and checks every dispatch transition for per-reservation
/// FIFO order and contiguity. Returns one ORDER-VIOLATION witness per
/// offending transition. When `r` was explored with the order-guarantee
/// detector on, its own witnesses are returned without exploring again.
std::vector<ErrorWitness> verify_order_guarantee(const explorer::ExplorationResult& r);

}  // namespace scoopwb::properties

#endif  // SCOOPWB_PROPERTIES_ORDER_HPP
