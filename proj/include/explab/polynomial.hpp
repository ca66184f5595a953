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

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "explab/rational.hpp"

namespace explab::poly {

template <std::size_t N>
using Exponents = std::array<unsigned, N>;

template <std::size_t N>
unsigned total_degree(const Exponents<N>& e) {
  unsigned d = 0;
  for (unsigned v : e) d += v;
  return d;
}

// Graded-lex, highest first: iteration order of a polynomial is its print order.
template <std::size_t N>
struct GradedLexGreater {
  bool operator()(const Exponents<N>& a, const Exponents<N>& b) const {
    const unsigned da = total_degree<N>(a);
    const unsigned db = total_degree<N>(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Variable names in storage order: (x, y) or (x, xp, y, yp).
template <std::size_t N>
const std::array<const char*, N>& variable_names();

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored, so structural equality is mathematical equality.
template <std::size_t N>
class Polynomial {
 public:
  using Exps = Exponents<N>;
  using Terms = std::map<Exps, Rational, GradedLexGreater<N>>;
  static constexpr std::size_t kArity = N;

  Polynomial() = default;
  explicit Polynomial(const Rational& constant) { add_term(Exps{}, constant); }

  static Polynomial variable(std::size_t index) {
    if (index >= N) throw std::out_of_range("variable index out of range");
    Exps e{};
    e[index] = 1;
    return monomial(e, Rational(1));
  }

  static Polynomial monomial(const Exps& e, const Rational& c) {
    Polynomial p;
    p.add_term(e, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// -1 marks the zero polynomial.
  int degree() const {
    return terms_.empty() ? -1 : static_cast<int>(total_degree<N>(terms_.begin()->first));
  }

  bool is_constant() const { return degree() <= 0; }

  Rational coefficient(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  unsigned max_exponent(std::size_t var) const {
    unsigned m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
    return m;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  Polynomial& operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exps e;
        for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Formal derivative of the given order in one variable.
  Polynomial partial(std::size_t var, unsigned order = 1) const {
    if (var >= N) throw std::out_of_range("variable index out of range");
    Polynomial r;
    for (const auto& [e, c] : terms_) {
      if (e[var] < order) continue;
      Rational coeff = c;
      for (unsigned i = 0; i < order; ++i) coeff *= e[var] - i;
      Exps ne = e;
      ne[var] -= order;
      r.add_term(ne, coeff);
    }
    return r;
  }

  Rational evaluate(const std::array<Rational, N>& point) const {
    std::array<std::vector<Rational>, N> powers;
    for (std::size_t v = 0; v < N; ++v) {
      const unsigned m = max_exponent(v);
      powers[v].resize(m + 1);
      powers[v][0] = 1;
      for (unsigned i = 1; i <= m; ++i) powers[v][i] = powers[v][i - 1] * point[v];
    }
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t v = 0; v < N; ++v)
        if (e[v] != 0) t *= powers[v][e[v]];
      sum += t;
    }
    return sum;
  }

  double evaluate(const std::array<double, N>& point) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = c.get_d();
      for (std::size_t v = 0; v < N; ++v)
        for (unsigned i = 0; i < e[v]; ++i) t *= point[v];
      sum += t;
    }
    return sum;
  }

 private:
  void add_term(const Exps& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

using Poly2 = Polynomial<2>;
using Poly4 = Polynomial<4>;

// Slot indices.
inline constexpr std::size_t kX = 0;
inline constexpr std::size_t kY = 1;
inline constexpr std::size_t kX4 = 0;
inline constexpr std::size_t kXp4 = 1;
inline constexpr std::size_t kY4 = 2;
inline constexpr std::size_t kYp4 = 3;

template <std::size_t N>
Polynomial<N> pow(const Polynomial<N>& base, unsigned exponent) {
  Polynomial<N> result(Rational(1));
  Polynomial<N> b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

/// Canonical graded-lex rendering, e.g. "x^2*y + 1/2*x". Parses back to the
/// same polynomial.
template <std::size_t N>
std::string to_string(const Polynomial<N>& p);

/// Copies P(x, y) into four variables, sending x to slot `x_slot` and y to
/// slot `y_slot` of (x, xp, y, yp).
Poly4 embed(const Poly2& p, std::size_t x_slot, std::size_t y_slot);

extern template std::string to_string<2>(const Poly2&);
extern template std::string to_string<4>(const Poly4&);

}  // namespace explab::poly
