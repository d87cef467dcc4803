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

#ifndef SCOOPWB_LANG_PARSER_HPP
#define SCOOPWB_LANG_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scoopwb/lang/ast.hpp"

namespace scoopwb::lang {

/// Thrown on the first syntax error. `expected` lists the token spellings
/// that would have been accepted at `pos`, sorted and de-duplicated.
class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, std::vector<std::string> expected, std::string found);

  SourcePos pos() const { return pos_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  SourcePos pos_;
  std::vector<std::string> expected_;
  std::string found_;
};

/// Parses a complete program. Statements may optionally be separated by `;`.
/// `--` starts a comment running to the end of the line.
Program parse(std::string_view source);

/// Renders a program in the concrete syntax accepted by parse().
std::string print(const Program& program);
std::string print(const Expr& expr);

}  // namespace scoopwb::lang

#endif  // SCOOPWB_LANG_PARSER_HPP
