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

#include "explab/parser.hpp"

#include <cctype>

namespace explab::poly {
namespace {

template <std::size_t N>
class Parser {
 public:
  using Poly = Polynomial<N>;

  explicit Parser(std::string_view text) : text_(text) {}

  Poly parse() {
    Poly p = expr();
    skip_space();
    if (pos_ != text_.size()) fail(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg,
                         ParseError::Kind kind = ParseError::Kind::Syntax) const {
    throw ParseError(kind, at, msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (peek() == '*') {
      ++pos_;
      acc *= unary();
    }
    return acc;
  }

  Poly unary() {
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (peek() != '^') return base;
    ++pos_;
    skip_space();
    const std::size_t start = pos_;
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
    if (digits.empty()) fail(start, "exponent must be a non-negative integer", ParseError::Kind::NonIntegerExponent);
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/'))
      fail(start, "exponent must be a non-negative integer", ParseError::Kind::NonIntegerExponent);
    if (digits.size() > 4) fail(start, "exponent too large");
    if (peek() == '^') fail(pos_, "chained exponents need parentheses");
    return pow(base, static_cast<unsigned>(std::stoul(digits)));
  }

  Poly primary() {
    const char c = peek();
    const std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (peek() != ')') fail(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Poly(number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name += text_[pos_++];
      const auto& names = variable_names<N>();
      for (std::size_t v = 0; v < N; ++v)
        if (name == names[v]) return Poly::variable(v);
      fail(start, "unknown identifier '" + name + "'", ParseError::Kind::UnknownIdentifier);
    }
    if (c == '\0') fail(start, "unexpected end of input, expected operand");
    fail(start, "expected operand, found '" + std::string(1, c) + "'");
  }

  Rational number() {
    const std::size_t start = pos_;
    std::string lit;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) lit += text_[pos_++];
    if (pos_ < text_.size() && text_[pos_] == '.') fail(pos_, "decimal literals are not supported, write a/b");
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::string den;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) den += text_[pos_++];
      if (den.empty()) fail(pos_, "expected denominator");
      if (den.find_first_not_of('0') == std::string::npos) fail(start, "zero denominator");
      lit += "/" + den;
    }
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '('))
      fail(pos_, "implicit multiplication is not allowed");
    return parse_rational(lit);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly2 parse_poly2(std::string_view text) { return Parser<2>(text).parse(); }
Poly4 parse_poly4(std::string_view text) { return Parser<4>(text).parse(); }

}  // namespace explab::poly
