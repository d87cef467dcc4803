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

#include "scoopwb/cli/report.hpp"

#include <algorithm>
#include <set>

namespace scoopwb::cli {

bool Report::has(std::string_view kind) const {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const ErrorEntry& e) { return e.kind == kind; });
}

Report make_report(const std::string& program, const explorer::ExplorationResult& r) {
  Report rep;
  rep.program = program;
  rep.model = std::string(r.model->name());
  rep.configurations = r.configurations;
  rep.transitions = r.transitions;
  rep.microsteps = r.microsteps;
  rep.duration_ms = r.duration_ms;
  rep.bound_exhausted = r.bound_exhausted;
  for (auto i : representative_witnesses(r)) {
    const auto& w = r.errors[i];
    ErrorEntry e;
    e.kind = properties::to_string(w.kind);
    e.depth = w.depth;
    for (const auto& a : explorer::extract_trace(r, w).actions) e.trace.push_back(a.label);
    e.evidence = w.summary();
    rep.errors.push_back(std::move(e));
  }
  return rep;
}

std::vector<std::size_t> representative_witnesses(const explorer::ExplorationResult& r) {
  std::set<std::pair<properties::ErrorKind, std::string>> seen;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < r.errors.size(); ++i) {
    if (seen.emplace(r.errors[i].kind, r.errors[i].summary()).second) out.push_back(i);
  }
  return out;
}

Json to_json(const Report& r) {
  Json errors = Json::array();
  for (const auto& e : r.errors) {
    errors.push_back(Json{{"kind", e.kind}, {"depth", e.depth}, {"trace", e.trace},
                          {"evidence", e.evidence}});
  }
  return Json{{"program", r.program},
              {"model", r.model},
              {"configurations", r.configurations},
              {"transitions", r.transitions},
              {"microsteps", r.microsteps},
              {"duration_ms", r.duration_ms},
              {"bound_exhausted", r.bound_exhausted},
              {"errors", std::move(errors)}};
}

Json to_json(const ComparisonReport& r) {
  Json discrepancies = Json::array();
  for (const auto& d : r.discrepancies) {
    discrepancies.push_back(Json{{"detector", d.detector}, {"present_in", d.present_in}});
  }
  return Json{{"program", r.program},
              {"reports", Json{{"rq", to_json(r.rq)}, {"qoq", to_json(r.qoq)}}},
              {"discrepancies", std::move(discrepancies)}};
}

namespace {

// Checks that `j` is an object with exactly the given keys.
void expect_fields(const Json& j, std::initializer_list<std::string_view> keys,
                   std::string_view what) {
  if (!j.is_object()) throw SchemaError(std::string(what) + " must be an object");
  for (auto k : keys) {
    if (!j.contains(std::string(k))) {
      throw SchemaError(std::string(what) + " lacks field '" + std::string(k) + "'");
    }
  }
  for (const auto& item : j.items()) {
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
      throw SchemaError(std::string(what) + " has unknown field '" + item.key() + "'");
    }
  }
}

template <typename T>
T field(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("field '") + key + "': " + e.what());
  }
}

std::uint64_t count_field(const Json& j, const char* key) {
  if (!j.at(key).is_number_unsigned() && !j.at(key).is_number_integer()) {
    throw SchemaError(std::string("field '") + key + "' must be a non-negative integer");
  }
  if (j.at(key).is_number_integer() && j.at(key).get<std::int64_t>() < 0) {
    throw SchemaError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return j.at(key).get<std::uint64_t>();
}

}  // namespace

Report report_from_json(const Json& j) {
  expect_fields(j,
                {"program", "model", "configurations", "transitions", "microsteps", "duration_ms",
                 "bound_exhausted", "errors"},
                "report");
  Report r;
  r.program = field<std::string>(j, "program");
  r.model = field<std::string>(j, "model");
  r.configurations = count_field(j, "configurations");
  r.transitions = count_field(j, "transitions");
  r.microsteps = count_field(j, "microsteps");
  if (!j.at("duration_ms").is_number()) throw SchemaError("field 'duration_ms' must be a number");
  r.duration_ms = j.at("duration_ms").get<double>();
  if (!j.at("bound_exhausted").is_boolean()) {
    throw SchemaError("field 'bound_exhausted' must be a boolean");
  }
  r.bound_exhausted = j.at("bound_exhausted").get<bool>();
  if (!j.at("errors").is_array()) throw SchemaError("field 'errors' must be an array");
  for (const auto& e : j.at("errors")) {
    expect_fields(e, {"kind", "depth", "trace", "evidence"}, "error entry");
    ErrorEntry entry;
    entry.kind = field<std::string>(e, "kind");
    if (!properties::parse_error_kind(entry.kind)) {
      throw SchemaError("unknown error kind '" + entry.kind + "'");
    }
    entry.depth = count_field(e, "depth");
    entry.trace = field<std::vector<std::string>>(e, "trace");
    entry.evidence = field<std::string>(e, "evidence");
    r.errors.push_back(std::move(entry));
  }
  return r;
}

ComparisonReport comparison_from_json(const Json& j) {
  expect_fields(j, {"program", "reports", "discrepancies"}, "comparison report");
  ComparisonReport c;
  c.program = field<std::string>(j, "program");
  const auto& reports = j.at("reports");
  expect_fields(reports, {"rq", "qoq"}, "reports");
  c.rq = report_from_json(reports.at("rq"));
  c.qoq = report_from_json(reports.at("qoq"));
  if (!j.at("discrepancies").is_array()) {
    throw SchemaError("field 'discrepancies' must be an array");
  }
  for (const auto& d : j.at("discrepancies")) {
    expect_fields(d, {"detector", "present_in"}, "discrepancy");
    c.discrepancies.push_back(
        {field<std::string>(d, "detector"), field<std::vector<std::string>>(d, "present_in")});
  }
  return c;
}

std::vector<Discrepancy> find_discrepancies(const Report& rq, const Report& qoq) {
  auto detectors = [](const Report& r) {
    std::set<std::string> out;
    for (const auto& e : r.errors) {
      if (auto k = properties::parse_error_kind(e.kind)) {
        out.emplace(properties::detector_of(*k));
      }
    }
    return out;
  };
  auto in_rq = detectors(rq);
  auto in_qoq = detectors(qoq);
  std::set<std::string> all = in_rq;
  all.insert(in_qoq.begin(), in_qoq.end());
  std::vector<Discrepancy> out;
  for (const auto& d : all) {
    bool a = in_rq.count(d) > 0;
    bool b = in_qoq.count(d) > 0;
    if (a == b) continue;
    out.push_back({d, {a ? rq.model : qoq.model}});
  }
  return out;
}

}  // namespace scoopwb::cli
