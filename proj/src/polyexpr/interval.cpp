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

#include "explab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace explab::poly {

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw std::invalid_argument("interval with lo > hi");
}

Rational Interval::magnitude() const { return std::max(::abs(lo), ::abs(hi)); }

Rational Interval::mignitude() const {
  if (lo >= 0) return lo;
  if (hi <= 0) return -hi;
  return 0;
}

Interval Interval::abs() const { return Interval(mignitude(), magnitude()); }

Interval operator+(const Interval& a, const Interval& b) { return Interval(a.lo + b.lo, a.hi + b.hi); }
Interval operator-(const Interval& a, const Interval& b) { return Interval(a.lo - b.hi, a.hi - b.lo); }

Interval operator*(const Interval& a, const Interval& b) {
  if (a.lo >= 0 && b.lo >= 0) return Interval(a.lo * b.lo, a.hi * b.hi);
  const Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return Interval(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Interval operator*(const Rational& s, const Interval& a) {
  if (s >= 0) return Interval(s * a.lo, s * a.hi);
  return Interval(s * a.hi, s * a.lo);
}

namespace {

Rational rpow(const Rational& b, unsigned n) {
  Rational r = 1;
  for (unsigned i = 0; i < n; ++i) r *= b;
  return r;
}

}  // namespace

Interval pow(const Interval& a, unsigned n) {
  if (n == 0) return Interval::point(1);
  const Rational l = rpow(a.lo, n);
  const Rational h = rpow(a.hi, n);
  if (n % 2 == 1 || a.lo >= 0) return Interval(l, h);
  if (a.hi <= 0) return Interval(h, l);
  return Interval(0, std::max(l, h));
}

// ---- float backend ---------------------------------------------------------

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double v) { return std::nextafter(v, -kInf); }
double up(double v) { return std::nextafter(v, kInf); }

}  // namespace

double IntervalD::magnitude() const { return std::max(std::fabs(lo), std::fabs(hi)); }

double IntervalD::mignitude() const {
  if (lo >= 0) return lo;
  if (hi <= 0) return -hi;
  return 0.0;
}

IntervalD IntervalD::abs() const { return {mignitude(), magnitude()}; }

IntervalD IntervalD::from(const Rational& exact) {
  const double d = exact.get_d();
  if (Rational(d) == exact) return {d, d};
  return {down(d), up(d)};
}

IntervalD IntervalD::from(const Interval& exact) { return {from(exact.lo).lo, from(exact.hi).hi}; }

IntervalD operator+(const IntervalD& a, const IntervalD& b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }

IntervalD operator*(const IntervalD& a, const IntervalD& b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
}

IntervalD pow(const IntervalD& a, unsigned n) {
  if (n == 0) return {1.0, 1.0};
  IntervalD r = a;
  for (unsigned i = 1; i < n; ++i) r = r * a;
  // Repeated multiplication of a sign-straddling interval loses the sign of
  // an even power.
  if (n % 2 == 0) r.lo = std::max(r.lo, 0.0);
  return r;
}

// ---- polynomial ranges -----------------------------------------------------

template <std::size_t N>
Interval interval_range(const Polynomial<N>& p, const std::array<Interval, N>& box) {
  std::array<std::vector<Interval>, N> powers;
  for (std::size_t v = 0; v < N; ++v) {
    const unsigned m = p.max_exponent(v);
    powers[v].reserve(m + 1);
    for (unsigned i = 0; i <= m; ++i) powers[v].push_back(pow(box[v], i));
  }
  Interval sum = Interval::point(0);
  for (const auto& [e, c] : p.terms()) {
    Interval t = Interval::point(1);
    for (std::size_t v = 0; v < N; ++v)
      if (e[v] != 0) t = t * powers[v][e[v]];
    sum = sum + c * t;
  }
  return sum;
}

template <std::size_t N>
IntervalD interval_range(const Polynomial<N>& p, const std::array<IntervalD, N>& box) {
  IntervalD sum{0.0, 0.0};
  for (const auto& [e, c] : p.terms()) {
    IntervalD t{1.0, 1.0};
    for (std::size_t v = 0; v < N; ++v)
      if (e[v] != 0) t = t * pow(box[v], e[v]);
    sum = sum + IntervalD::from(c) * t;
  }
  return sum;
}

template Interval interval_range<2>(const Poly2&, const std::array<Interval, 2>&);
template Interval interval_range<4>(const Poly4&, const std::array<Interval, 4>&);
template IntervalD interval_range<2>(const Poly2&, const std::array<IntervalD, 2>&);
template IntervalD interval_range<4>(const Poly4&, const std::array<IntervalD, 4>&);

PowerTable::PowerTable(const Interval& x, unsigned max_degree) {
  powers_.reserve(max_degree + 1);
  for (unsigned i = 0; i <= max_degree; ++i) powers_.push_back(pow(x, i));
}

Interval interval_range(const Poly2& p, const PowerTable& xs, const PowerTable& ys) {
  Rational lo = 0;
  Rational hi = 0;
  for (const auto& [e, c] : p.terms()) {
    const Interval t = e[kX] == 0 ? ys[e[kY]] : (e[kY] == 0 ? xs[e[kX]] : xs[e[kX]] * ys[e[kY]]);
    if (c >= 0) {
      lo += c * t.lo;
      hi += c * t.hi;
    } else {
      lo += c * t.hi;
      hi += c * t.lo;
    }
  }
  return Interval(std::move(lo), std::move(hi));
}

std::string to_string(const Interval& i) {
  return "[" + explab::to_string(i.lo) + ", " + explab::to_string(i.hi) + "]";
}

}  // namespace explab::poly
