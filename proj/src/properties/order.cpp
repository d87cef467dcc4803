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

#include "scoopwb/properties/order.hpp"

#include <stdexcept>

namespace scoopwb::properties {

std::vector<ErrorWitness> verify_order_guarantee(const explorer::ExplorationResult& r) {
  if (!r.program || !r.model) throw std::invalid_argument("exploration result has no program");
  auto collect = [](const std::vector<ErrorWitness>& errors) {
    std::vector<ErrorWitness> out;
    for (const auto& w : errors) {
      if (w.kind == ErrorKind::OrderViolation) out.push_back(w);
    }
    return out;
  };
  if (r.options.detectors.order_guarantee) return collect(r.errors);
  auto options = r.options;
  options.detectors.order_guarantee = true;
  return collect(explorer::explore(*r.program, *r.model, options).errors);
}

}  // namespace scoopwb::properties
