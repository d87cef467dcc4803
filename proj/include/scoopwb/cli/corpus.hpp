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

#ifndef SCOOPWB_CLI_CORPUS_HPP
#define SCOOPWB_CLI_CORPUS_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scoopwb::cli {

struct CorpusEntry {
  std::string_view name;
  std::string_view source;
};

/// Benchmark programs compiled into the binary.
std::span<const CorpusEntry> embedded_corpus();

/// Names of the available corpus programs, sorted. Honors
/// WORKBENCH_CORPUS_DIR when set.
std::vector<std::string> corpus_names();

/// Bad command-line input: unknown program, unreadable file, bad flag value.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedProgram {
  std::string name;    // file stem, e.g. "dp2_lazy"
  std::string source;
};

/// Resolves a program argument. An existing file path (with or without the
/// .scoop extension) wins; otherwise the name, minus any leading "corpus/",
/// is looked up in WORKBENCH_CORPUS_DIR if set, else in the embedded corpus.
LoadedProgram load_program(std::string_view name_or_path);

}  // namespace scoopwb::cli

#endif  // SCOOPWB_CLI_CORPUS_HPP
