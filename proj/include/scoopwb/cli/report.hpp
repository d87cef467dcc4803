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

#ifndef SCOOPWB_CLI_REPORT_HPP
#define SCOOPWB_CLI_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "scoopwb/explorer/explorer.hpp"

namespace scoopwb::cli {

using Json = nlohmann::ordered_json;

struct ErrorEntry {
  std::string kind;
  std::uint64_t depth = 0;
  std::vector<std::string> trace;  // action labels from the initial configuration
  std::string evidence;

  friend bool operator==(const ErrorEntry&, const ErrorEntry&) = default;
};

struct Report {
  std::string program;
  std::string model;
  std::uint64_t configurations = 0;
  std::uint64_t transitions = 0;
  std::uint64_t microsteps = 0;
  double duration_ms = 0;
  bool bound_exhausted = false;
  std::vector<ErrorEntry> errors;

  bool has(std::string_view kind) const;

  friend bool operator==(const Report&, const Report&) = default;
};

struct Discrepancy {
  std::string detector;
  std::vector<std::string> present_in;

  friend bool operator==(const Discrepancy&, const Discrepancy&) = default;
};

struct ComparisonReport {
  std::string program;
  Report rq;
  Report qoq;
  std::vector<Discrepancy> discrepancies;

  friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

/// Thrown when a JSON document does not follow the report schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds a report with one entry per distinct (kind, evidence) pair, taken
/// from the first witness in breadth-first order, so each listed trace is a
/// shortest one. Every trace is validated by replay.
Report make_report(const std::string& program, const explorer::ExplorationResult& r);

/// Indices into `r.errors` of the witnesses `make_report` lists, in order.
std::vector<std::size_t> representative_witnesses(const explorer::ExplorationResult& r);

Json to_json(const Report& r);
Json to_json(const ComparisonReport& r);

/// Strict parsers: every field required, unknown fields rejected.
Report report_from_json(const Json& j);
ComparisonReport comparison_from_json(const Json& j);

/// Detectors whose witness presence differs between the two reports, in
/// detector-name order.
std::vector<Discrepancy> find_discrepancies(const Report& rq, const Report& qoq);

}  // namespace scoopwb::cli

#endif  // SCOOPWB_CLI_REPORT_HPP
