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

// Reference implementations the unit and acceptance tests compare against.
// Each one is written from the definitions, not from the library's code paths.

#pragma once

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "explab/gridset.hpp"
#include "explab/polynomial.hpp"

namespace oracle {

using explab::Rational;
using explab::poly::Poly2;

/// a / b in lowest terms (mpq_class does not reduce on construction).
inline Rational Q(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

/// Random polynomial with up to `terms` monomials of total degree <= max_degree
/// and integer coefficients in [-3, 3].
inline Poly2 random_poly2(std::mt19937_64& rng, unsigned max_degree, unsigned terms = 6) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Poly2 p;
  for (unsigned n = 0; n < terms; ++n) {
    const unsigned d = std::uniform_int_distribution<unsigned>(0, max_degree)(rng);
    const unsigned i = std::uniform_int_distribution<unsigned>(0, d)(rng);
    p += Poly2::monomial({i, d - i}, Rational(coef(rng)));
  }
  return p;
}

/// Univariate polynomial in t of degree <= d, evaluated on a bivariate argument.
inline Poly2 compose(const std::vector<Rational>& h, const Poly2& t) {
  Poly2 r;
  for (auto it = h.rbegin(); it != h.rend(); ++it) r = r * t + Poly2(*it);
  return r;
}

inline std::vector<Rational> random_univariate(std::mt19937_64& rng, unsigned d) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<Rational> c(d + 1);
  for (auto& v : c) v = coef(rng);
  if (c.back() == 0) c.back() = 1;
  return c;
}

/// RAII mpfr value at a fixed working precision.
class Big {
 public:
  static constexpr mpfr_prec_t kPrec = 256;
  Big() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
  explicit Big(double d) : Big() { mpfr_set_d(v_, d, MPFR_RNDN); }
  explicit Big(const Rational& q) : Big() { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
  Big(const Big& o) : Big() { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Big& operator=(const Big& o) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~Big() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend Big operator+(const Big& a, const Big& b) { Big r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Big operator-(const Big& a, const Big& b) { Big r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Big operator*(const Big& a, const Big& b) { Big r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Big operator/(const Big& a, const Big& b) { Big r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Big sqrt(const Big& a) {
    Big r;
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Big log_abs(const Big& a) {
    Big r;
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    mpfr_log(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

/// Plain sum of c x^i y^j in high precision.
inline Big eval(const Poly2& p, const Big& x, const Big& y) {
  Big sum;
  for (const auto& [e, c] : p.terms()) {
    Big t(c);
    for (unsigned n = 0; n < e[0]; ++n) t = t * x;
    for (unsigned n = 0; n < e[1]; ++n) t = t * y;
    sum = sum + t;
  }
  return sum;
}

/// (P_x P_y)^2 d_xy log |P_x / P_y| at (x, y): a centered mixed difference
/// with step h in 256-bit arithmetic, given the exact first partials.
inline double mp_by_log_difference(const Poly2& px, const Poly2& py, const Rational& xr, const Rational& yr,
                                   double step = 1e-5) {
  const Big x(xr), y(yr), h(step);
  auto g = [&](const Big& u, const Big& v) { return log_abs(eval(px, u, v) / eval(py, u, v)); };
  const Big mixed = (g(x + h, y + h) - g(x + h, y - h) - g(x - h, y + h) + g(x - h, y - h)) / (Big(4.0) * h * h);
  const Big w = eval(px, x, y) * eval(py, x, y);
  return (w * w * mixed).to_double();
}

/// Blaschke curvature of three pinned distances, written out in (x, y):
/// with u = f1, v = f2 and w = f1_x f2_y - f1_y f2_x,
///   d_u = (f2_y d_x - f2_x d_y) / w,  d_v = (f1_x d_y - f1_y d_x) / w,
///   F = log |d_u f3 / d_v f3| = log |(f2_y f3_x - f2_x f3_y) / (f1_x f3_y - f1_y f3_x)|,
/// and the curvature is 2 d_u d_v F, each derivative a centered difference.
inline double pinned_curvature(const std::array<std::pair<double, double>, 3>& pins, double x0, double y0) {
  auto grad = [&](int n, const Big& x, const Big& y) {
    const Big dx = x - Big(pins[n].first), dy = y - Big(pins[n].second);
    const Big r = sqrt(dx * dx + dy * dy);
    return std::pair<Big, Big>{dx / r, dy / r};
  };
  auto F = [&](const Big& x, const Big& y) {
    const auto [ax, ay] = grad(0, x, y);
    const auto [bx, by] = grad(1, x, y);
    const auto [cx, cy] = grad(2, x, y);
    return log_abs((by * cx - bx * cy) / (ax * cy - ay * cx));
  };
  const Big h(1e-7);
  const Big two_h = h + h;
  auto dvF = [&](const Big& x, const Big& y) {
    const auto [ax, ay] = grad(0, x, y);
    const auto [bx, by] = grad(1, x, y);
    const Big w = ax * by - ay * bx;
    const Big fx = (F(x + h, y) - F(x - h, y)) / two_h, fy = (F(x, y + h) - F(x, y - h)) / two_h;
    return (ax * fy - ay * fx) / w;
  };
  const Big x(x0), y(y0);
  const auto [ax, ay] = grad(0, x, y);
  const auto [bx, by] = grad(1, x, y);
  const Big w = ax * by - ay * bx;
  const Big gx = (dvF(x + h, y) - dvF(x - h, y)) / two_h, gy = (dvF(x, y + h) - dvF(x, y - h)) / two_h;
  return 2.0 * ((by * gx - bx * gy) / w).to_double();
}

/// Range of P over a box inside the closed positive quadrant, by summing the
/// exact range of each monomial (monotone in x and y there).
inline std::pair<Rational, Rational> monomial_sum_range(const Poly2& p, const Rational& x0, const Rational& x1,
                                                        const Rational& y0, const Rational& y1) {
  Rational lo = 0, hi = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational a = c, b = c;
    for (unsigned n = 0; n < e[0]; ++n) { a *= x0; b *= x1; }
    for (unsigned n = 0; n < e[1]; ++n) { a *= y0; b *= y1; }
    lo += std::min(a, b);
    hi += std::max(a, b);
  }
  return {lo, hi};
}

/// Every quadruple (S, S', T, T') tested directly.
inline std::uint64_t brute_energy(const Poly2& p, const explab::grid::GridSet1D& a,
                                  const explab::grid::GridSet1D& b) {
  using explab::grid::cell_hi;
  using explab::grid::cell_lo;
  std::vector<std::pair<Rational, Rational>> r;
  const auto s = a.scale();
  for (auto i : a.cells())
    for (auto j : b.cells())
      r.push_back(monomial_sum_range(p, cell_lo(i, s), cell_hi(i, s), cell_lo(j, s), cell_hi(j, s)));
  std::uint64_t n = 0;
  for (const auto& u : r)
    for (const auto& v : r)
      if (u.first <= v.second && v.first <= u.second) ++n;
  return n;
}

/// Random subset of [0, 2^k) with `count` distinct cells.
inline explab::grid::GridSet1D random_set(std::mt19937_64& rng, int k, std::size_t count) {
  std::set<explab::grid::Index> s;
  std::uniform_int_distribution<explab::grid::Index> d(0, (1u << k) - 1);
  while (s.size() < count) s.insert(d(rng));
  return explab::grid::GridSet1D(explab::grid::Scale(k), {s.begin(), s.end()});
}

}  // namespace oracle
