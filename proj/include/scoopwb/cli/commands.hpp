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

#ifndef SCOOPWB_CLI_COMMANDS_HPP
#define SCOOPWB_CLI_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "scoopwb/cfg/cfg.hpp"
#include "scoopwb/cli/report.hpp"
#include "scoopwb/execmodel/execmodel.hpp"
#include "scoopwb/explorer/explorer.hpp"

namespace scoopwb::cli {

/// Process exit statuses.
enum ExitCode : int {
  kExitClean = 0,
  kExitFindings = 1,  // errors found (explore) or discrepancies found (compare)
  kExitInvalidInput = 2,
  kExitBoundExhausted = 3,
};

struct RunOptions {
  std::string program;
  explorer::ExploreOptions explore;
  std::optional<std::string> json_path;  // "-" writes to standard output
  std::optional<std::string> trace_dir;
};

struct ExportOptions {
  std::string program;
  std::string what = "cfg";  // "cfg" or "state"
  execmodel::ModelKind model = execmodel::ModelKind::RQ;
  std::uint32_t state = 0;   // explored state id for --what state
  std::optional<std::string> dot_path;
};

/// A parsed and validated program with its control-flow graph.
struct CompiledProgram {
  std::string name;
  cfg::CfgModel cfg;
};

/// Loads, parses, validates and compiles; throws InputError with the
/// diagnostics on failure.
CompiledProgram compile_program(const std::string& name_or_path);

int cmd_explore(const RunOptions& opts, execmodel::ModelKind model, std::ostream& out,
                std::ostream& err);
int cmd_compare(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_export(const ExportOptions& opts, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scoopwb::cli

#endif  // SCOOPWB_CLI_COMMANDS_HPP
