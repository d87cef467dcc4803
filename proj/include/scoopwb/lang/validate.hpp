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

#ifndef SCOOPWB_LANG_VALIDATE_HPP
#define SCOOPWB_LANG_VALIDATE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scoopwb/lang/ast.hpp"

namespace scoopwb::lang {

/// Separateness rules enforced by validate():
///   (a) a call on a separate variable occurs only inside a block reserving it;
///   (b) a block guard queries only the block's own targets, and only queries
///       that can be evaluated as a direct read (empty body, call-free result);
///   (c) commands appear as statements and queries inside expressions.
/// Name-resolution and typing problems carry no rule letter.
enum class Rule { None, A, B, C };

struct Diagnostic {
  Rule rule = Rule::None;
  SourcePos pos;
  std::string message;

  friend bool operator==(const Diagnostic& a, const Diagnostic& b) {
    return a.rule == b.rule && a.pos.line == b.pos.line && a.pos.column == b.pos.column &&
           a.message == b.message;
  }
};

std::string to_string(const Diagnostic& d);

struct LocalVar {
  std::string name;
  TypeRef type;
};

/// Frame layout of one routine (the root body or a method).
struct RoutineInfo {
  int class_index = -1;  // -1 for root
  int method_index = -1;
  std::string name;      // "root" or "CLASS.method"
  std::size_t param_count = 0;
  std::vector<LocalVar> locals;  // params first, then locals in first-occurrence order

  std::optional<std::size_t> find_local(std::string_view n) const;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

/// A program that passed validation, together with its resolved symbols.
/// Routine 0 is the root; methods follow in class order, then declaration order.
class ValidatedProgram {
 public:
  const Program& program() const { return program_; }
  const std::vector<RoutineInfo>& routines() const { return routines_; }

  std::optional<std::size_t> find_class(std::string_view name) const;
  std::optional<std::size_t> find_method(std::size_t cls, std::string_view name) const;
  std::optional<std::size_t> find_attribute(std::size_t cls, std::string_view name) const;
  std::size_t routine_of(std::size_t cls, std::size_t method) const;

 private:
  friend ValidatedProgram validate(Program p);
  friend std::vector<Diagnostic> check(const Program& p);

  Program program_;
  std::vector<RoutineInfo> routines_;
  std::vector<std::size_t> first_routine_;  // per class
};

/// Runs all static checks; returns every diagnostic found (empty = valid).
/// Deterministic and side-effect free.
std::vector<Diagnostic> check(const Program& p);

/// Validates and resolves; throws ValidationError if check() is non-empty.
ValidatedProgram validate(Program p);

}  // namespace scoopwb::lang

#endif  // SCOOPWB_LANG_VALIDATE_HPP
