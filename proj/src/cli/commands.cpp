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

#include "scoopwb/cli/commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "scoopwb/cli/corpus.hpp"
#include "scoopwb/lang/parser.hpp"
#include "scoopwb/lang/validate.hpp"

namespace scoopwb::cli {

namespace fs = std::filesystem;

CompiledProgram compile_program(const std::string& name_or_path) {
  auto loaded = load_program(name_or_path);
  lang::Program program;
  try {
    program = lang::parse(loaded.source);
  } catch (const lang::ParseError& e) {
    throw InputError(loaded.name + ": " + e.what());
  }
  try {
    auto validated = lang::validate(std::move(program));
    return {loaded.name, cfg::build_cfg(validated)};
  } catch (const lang::ValidationError& e) {
    std::string msg = loaded.name + ": program is not valid";
    for (const auto& d : e.diagnostics()) msg += "\n  " + lang::to_string(d);
    throw InputError(msg);
  }
}

namespace {

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

void write_traces(const std::string& dir, const std::string& program,
                  const explorer::ExplorationResult& r, const Report& rep) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir + ": " + ec.message());
  auto witnesses = representative_witnesses(r);
  for (std::size_t i = 0; i < rep.errors.size(); ++i) {
    const auto& e = rep.errors[i];
    auto stem = program + "-" + rep.model + "-" + std::to_string(i) + "-" + e.kind;
    std::ofstream trace(fs::path(dir) / (stem + ".trace"));
    trace << e.kind << " at depth " << e.depth << "\n" << e.evidence << "\n";
    for (const auto& step : e.trace) trace << step << "\n";
    std::ofstream dot(fs::path(dir) / (stem + ".dot"));
    dot << runtime::export_configuration_dot(r.errors[witnesses[i]].config, *r.program);
  }
}

void summarize(const Report& rep, const explorer::ExplorationResult& r, std::ostream& out) {
  out << rep.program << " [" << rep.model << "]: " << rep.configurations << " configurations, "
      << rep.transitions << " transitions, " << rep.microsteps << " microsteps, "
      << static_cast<long long>(rep.duration_ms) << " ms";
  if (rep.bound_exhausted) out << " (bound exhausted)";
  out << "\n";
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& w : r.errors) ++counts[std::string(properties::to_string(w.kind))].first;
  for (const auto& e : rep.errors) ++counts[e.kind].second;
  for (const auto& [kind, n] : counts) {
    out << "  " << kind << ": " << n.first << " states, " << n.second << " distinct\n";
  }
}

struct Run {
  Report report;
  int status;
  std::string summary;
};

Run run_one(const CompiledProgram& prog, execmodel::ModelKind kind, const RunOptions& opts) {
  const auto& model = execmodel::model_for(kind);
  auto result = explorer::explore(prog.cfg, model, opts.explore);
  auto rep = make_report(prog.name, result);
  if (opts.trace_dir) write_traces(*opts.trace_dir, prog.name, result, rep);
  int status = kExitClean;
  if (!rep.errors.empty()) {
    status = kExitFindings;
  } else if (rep.bound_exhausted) {
    status = kExitBoundExhausted;
  }
  std::ostringstream summary;
  summarize(rep, result, summary);
  return {std::move(rep), status, summary.str()};
}

}  // namespace

int cmd_explore(const RunOptions& opts, execmodel::ModelKind model, std::ostream& out,
                std::ostream& err) {
  try {
    auto prog = compile_program(opts.program);
    auto run = run_one(prog, model, opts);
    (opts.json_path == "-" ? err : out) << run.summary;
    if (opts.json_path) write_text(*opts.json_path, to_json(run.report).dump(2) + "\n", out);
    return run.status;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

int cmd_compare(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    auto prog = compile_program(opts.program);
    auto rq = run_one(prog, execmodel::ModelKind::RQ, opts);
    auto qoq = run_one(prog, execmodel::ModelKind::QoQ, opts);
    ComparisonReport cmp;
    cmp.program = prog.name;
    cmp.discrepancies = find_discrepancies(rq.report, qoq.report);
    cmp.rq = std::move(rq.report);
    cmp.qoq = std::move(qoq.report);
    auto& log = opts.json_path == "-" ? err : out;
    log << rq.summary << qoq.summary;
    if (cmp.discrepancies.empty()) log << "no discrepancies\n";
    for (const auto& d : cmp.discrepancies) {
      log << "discrepancy: " << d.detector << " only under";
      for (const auto& m : d.present_in) log << " " << m;
      log << "\n";
    }
    if (opts.json_path) write_text(*opts.json_path, to_json(cmp).dump(2) + "\n", out);
    if (!cmp.discrepancies.empty()) return kExitFindings;
    if (cmp.rq.bound_exhausted || cmp.qoq.bound_exhausted) return kExitBoundExhausted;
    return kExitClean;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

int cmd_export(const ExportOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    auto prog = compile_program(opts.program);
    std::string dot;
    if (opts.what == "cfg") {
      dot = cfg::export_cfg_dot(prog.cfg);
    } else if (opts.what == "state") {
      const auto& model = execmodel::model_for(opts.model);
      scheduler::Scheduler sched(prog.cfg, model);
      runtime::Configuration c;
      if (opts.state == 0) {
        c = explorer::start_state(sched);
      } else {
        auto result = explorer::explore(prog.cfg, model);
        if (opts.state >= result.configurations) {
          throw InputError("state " + std::to_string(opts.state) + " not reached; only " +
                           std::to_string(result.configurations) + " configurations");
        }
        c = explorer::replay(sched, explorer::path_to(result, opts.state)).final;
      }
      dot = runtime::export_configuration_dot(c, prog.cfg);
    } else {
      throw InputError("--what must be 'cfg' or 'state'");
    }
    write_text(opts.dot_path.value_or("-"), dot, out);
    return kExitClean;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explore mini-SCOOP programs under the RQ and QoQ execution models", "scoopwb"};
  app.require_subcommand(1);

  RunOptions run;
  std::string model = "rq";
  std::string detectors = "deadlock,stuck,conflicting-reservation,order-guarantee";
  std::string models = "rq,qoq";
  std::size_t max_depth = 0;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("program", run.program, "Program file or corpus name")->required();
    sub->add_option("--detectors", detectors, "Comma-separated detector names")
        ->capture_default_str();
    sub->add_option("--max-states", run.explore.bounds.max_states, "Stop after this many states")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-depth", max_depth, "Do not expand states deeper than this")
        ->check(CLI::PositiveNumber);
    sub->add_option("--json", run.json_path, "Write the JSON report here ('-' for stdout)");
    sub->add_option("--trace-dir", run.trace_dir, "Write one trace per witness here");
    sub->add_option("--workers", run.explore.workers, "Parallel exploration workers")
        ->capture_default_str()
        ->check(CLI::Range(1u, 256u));
  };

  auto* explore = app.add_subcommand("explore", "Explore one program under one model");
  add_run_flags(explore);
  explore->add_option("--model", model, "Execution model")
      ->capture_default_str()
      ->check(CLI::IsMember({"rq", "qoq"}));

  auto* compare = app.add_subcommand("compare", "Explore under both models and compare");
  add_run_flags(compare);
  compare->add_option("--models", models, "Models to compare")
      ->capture_default_str()
      ->check(CLI::IsMember({"rq,qoq", "qoq,rq"}));

  ExportOptions exp;
  std::string export_model = "rq";
  auto* exporter = app.add_subcommand("export", "Export a CFG or configuration as DOT");
  exporter->add_option("program", exp.program, "Program file or corpus name")->required();
  exporter->add_option("--what", exp.what, "cfg or state")
      ->capture_default_str()
      ->check(CLI::IsMember({"cfg", "state"}));
  exporter->add_option("--model", export_model, "Execution model for --what state")
      ->capture_default_str()
      ->check(CLI::IsMember({"rq", "qoq"}));
  exporter->add_option("--state", exp.state, "Explored state id for --what state")
      ->capture_default_str();
  exporter->add_option("--dot", exp.dot_path, "Output file (default stdout)");

  auto* list = app.add_subcommand("list", "List the corpus programs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitClean : kExitInvalidInput;
  }

  if (list->parsed()) {
    for (const auto& n : corpus_names()) out << n << "\n";
    return kExitClean;
  }
  if (exporter->parsed()) {
    exp.model = *execmodel::parse_model(export_model);
    return cmd_export(exp, out, err);
  }
  auto parsed = properties::parse_detectors(detectors);
  if (!parsed) {
    err << "error: unknown detector in '" << detectors << "'\n";
    return kExitInvalidInput;
  }
  run.explore.detectors = *parsed;
  if (max_depth > 0) run.explore.bounds.max_depth = max_depth;
  if (explore->parsed()) return cmd_explore(run, *execmodel::parse_model(model), out, err);
  return cmd_compare(run, out, err);
}

}  // namespace scoopwb::cli
