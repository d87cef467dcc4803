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

#ifndef SCOOPWB_RUNTIME_VALUE_HPP
#define SCOOPWB_RUNTIME_VALUE_HPP

#include <cstdint>
#include <string>

#include "scoopwb/lang/ast.hpp"

namespace scoopwb::runtime {

using HandlerId = std::uint16_t;
using ObjectId = std::uint32_t;
using ReservationId = std::uint32_t;

inline constexpr ObjectId kNoObject = ~ObjectId{0};

/// A runtime value: integer, boolean, object reference or NULL.
class Value {
 public:
  enum class Kind : std::uint8_t { Int, Bool, Ref, Null };

  constexpr Value() = default;

  static constexpr Value integer(std::int64_t v) { return Value(Kind::Int, v); }
  static constexpr Value boolean(bool b) { return Value(Kind::Bool, b ? 1 : 0); }
  static constexpr Value ref(ObjectId id) { return Value(Kind::Ref, id); }
  static constexpr Value null() { return Value(Kind::Null, 0); }

  /// Zero value of a declared type: 0, false or NULL.
  static Value default_for(const lang::TypeRef& t) {
    switch (t.base) {
      case lang::BaseType::Integer:
        return integer(0);
      case lang::BaseType::Boolean:
        return boolean(false);
      case lang::BaseType::Class:
        return null();
    }
    return null();
  }

  Kind kind() const { return kind_; }
  bool is_ref() const { return kind_ == Kind::Ref; }
  bool is_null() const { return kind_ == Kind::Null; }
  std::int64_t as_int() const { return bits_; }
  bool as_bool() const { return bits_ != 0; }
  ObjectId as_ref() const { return static_cast<ObjectId>(bits_); }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Int:
        return std::to_string(bits_);
      case Kind::Bool:
        return bits_ ? "true" : "false";
      case Kind::Ref:
        return "#" + std::to_string(bits_);
      case Kind::Null:
        return "NULL";
    }
    return "?";
  }

  friend bool operator==(const Value&, const Value&) = default;

 private:
  constexpr Value(Kind k, std::int64_t bits) : kind_(k), bits_(bits) {}

  Kind kind_ = Kind::Null;
  std::int64_t bits_ = 0;
};

}  // namespace scoopwb::runtime

#endif  // SCOOPWB_RUNTIME_VALUE_HPP
