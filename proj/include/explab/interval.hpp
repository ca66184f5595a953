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
#include <string>
#include <vector>

#include "explab/polynomial.hpp"

namespace explab::poly {

/// Closed interval with exact rational endpoints, lo <= hi.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational l, Rational h);
  static Interval point(const Rational& v) { return Interval(v, v); }

  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  Rational width() const { return hi - lo; }
  /// Sup of |v| over the interval.
  Rational magnitude() const;
  /// Inf of |v| over the interval.
  Rational mignitude() const;
  /// Enclosure of {|v|}.
  Interval abs() const;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& s, const Interval& a);
Interval pow(const Interval& a, unsigned n);

/// Closed interval with double endpoints. Every operation rounds outward by
/// one ulp so the result still encloses the exact one.
struct IntervalD {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return lo <= v && v <= hi; }
  bool intersects(const IntervalD& o) const { return lo <= o.hi && o.lo <= hi; }
  double magnitude() const;
  double mignitude() const;
  IntervalD abs() const;
  static IntervalD from(const Interval& exact);
  static IntervalD from(const Rational& exact);
};

IntervalD operator+(const IntervalD& a, const IntervalD& b);
IntervalD operator*(const IntervalD& a, const IntervalD& b);
IntervalD pow(const IntervalD& a, unsigned n);

enum class IntervalBackend { Exact, Float };

/// Range enclosure of p over a box by per-monomial interval products. Exact
/// on boxes where every monomial is monotone (e.g. nonnegative boxes with
/// nonnegative coefficients); sound everywhere.
template <std::size_t N>
Interval interval_range(const Polynomial<N>& p, const std::array<Interval, N>& box);

template <std::size_t N>
IntervalD interval_range(const Polynomial<N>& p, const std::array<IntervalD, N>& box);

inline Interval interval_range(const Poly2& p, const Interval& x, const Interval& y) {
  return interval_range<2>(p, std::array<Interval, 2>{x, y});
}

/// Interval powers [X^0 .. X^d] of one variable, reused across many boxes
/// that share a side.
class PowerTable {
 public:
  PowerTable() = default;
  PowerTable(const Interval& x, unsigned max_degree);
  const Interval& operator[](unsigned i) const { return powers_[i]; }

 private:
  std::vector<Interval> powers_;
};

/// interval_range over a 2-box given precomputed power tables; identical
/// result to interval_range(p, {x, y}).
Interval interval_range(const Poly2& p, const PowerTable& xs, const PowerTable& ys);

std::string to_string(const Interval& i);

}  // namespace explab::poly
