/*
 * Copyright 2026 The explab Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "explab/polynomial.hpp"

namespace explab::poly {

/// Raised for any malformed expression. `offset` is the 0-based byte
/// position of the offending token.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, NonIntegerExponent, UnknownIdentifier };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

// Grammar (docs/grammar.md):
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' integer)?
//   primary := rational | identifier | '(' expr ')'
// Identifiers are x, y (and xp, yp for four variables).
Poly2 parse_poly2(std::string_view text);
Poly4 parse_poly4(std::string_view text);

}  // namespace explab::poly
