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

#include "scoopwb/cli/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace scoopwb::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kExtension = ".scoop";

std::optional<fs::path> corpus_dir() {
  const char* dir = std::getenv("WORKBENCH_CORPUS_DIR");
  if (!dir || !*dir) return std::nullopt;
  return fs::path(dir);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_file(const fs::path& p) {
  std::error_code ec;
  return fs::is_regular_file(p, ec);
}

}  // namespace

std::vector<std::string> corpus_names() {
  std::vector<std::string> names;
  if (auto dir = corpus_dir()) {
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(*dir, ec)) {
      if (entry.path().extension() == kExtension) names.push_back(entry.path().stem().string());
    }
  } else {
    for (const auto& e : embedded_corpus()) names.emplace_back(e.name);
  }
  std::sort(names.begin(), names.end());
  return names;
}

LoadedProgram load_program(std::string_view name_or_path) {
  fs::path path{std::string(name_or_path)};
  for (const auto& candidate : {path, fs::path(std::string(name_or_path) + std::string(kExtension))}) {
    if (is_file(candidate)) return {candidate.stem().string(), read_file(candidate)};
  }

  std::string name{name_or_path};
  if (name.rfind("corpus/", 0) == 0) name = name.substr(7);
  if (name.size() > kExtension.size() &&
      name.compare(name.size() - kExtension.size(), kExtension.size(), kExtension) == 0) {
    name.resize(name.size() - kExtension.size());
  }
  if (auto dir = corpus_dir()) {
    auto file = *dir / (name + std::string(kExtension));
    if (is_file(file)) return {name, read_file(file)};
    throw InputError("no program '" + name + "' in " + dir->string());
  }
  for (const auto& e : embedded_corpus()) {
    if (e.name == name) return {name, std::string(e.source)};
  }
  throw InputError("no such program or corpus entry: " + std::string(name_or_path));
}

}  // namespace scoopwb::cli
