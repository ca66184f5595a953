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

#include "explab/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace explab {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no rational form");
  Rational q(v);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational literal: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

BigInt floor_of(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace explab

namespace explab::poly {

template <>
const std::array<const char*, 2>& variable_names<2>() {
  static const std::array<const char*, 2> names{"x", "y"};
  return names;
}

template <>
const std::array<const char*, 4>& variable_names<4>() {
  static const std::array<const char*, 4> names{"x", "xp", "y", "yp"};
  return names;
}

template <std::size_t N>
std::string to_string(const Polynomial<N>& p) {
  if (p.is_zero()) return "0";
  const auto& names = variable_names<N>();
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = c < 0;
    const Rational magnitude = abs(c);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;

    std::string mono;
    for (std::size_t v = 0; v < N; ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty()) {
      out << explab::to_string(magnitude);
    } else if (magnitude == 1) {
      out << mono;
    } else {
      out << explab::to_string(magnitude) << '*' << mono;
    }
  }
  return out.str();
}

template std::string to_string<2>(const Poly2&);
template std::string to_string<4>(const Poly4&);

Poly4 embed(const Poly2& p, std::size_t x_slot, std::size_t y_slot) {
  Poly4 r;
  for (const auto& [e, c] : p.terms()) {
    Poly4::Exps ne{};
    ne[x_slot] += e[kX];
    ne[y_slot] += e[kY];
    r += Poly4::monomial(ne, c);
  }
  return r;
}

}  // namespace explab::poly
