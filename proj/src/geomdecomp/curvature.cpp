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

#include "explab/curvature.hpp"

#include <array>
#include <cmath>

#include "explab/errors.hpp"
#include "explab/symbolic.hpp"

namespace explab::geom {

namespace {

constexpr double kWedgeMin = 1e-8;

struct Grad {
  double x, y;
};

Grad grad(const SmoothMap2& f, double x, double y) { return {f.derivative(1, 0, x, y), f.derivative(0, 1, x, y)}; }

double wedge(Grad a, Grad b) { return a.x * b.y - a.y * b.x; }

void check_independent(const SmoothMap2& f1, const SmoothMap2& f2, const SmoothMap2& f3, double x, double y) {
  const Grad g1 = grad(f1, x, y), g2 = grad(f2, x, y), g3 = grad(f3, x, y);
  if (std::fabs(wedge(g1, g2)) <= kWedgeMin || std::fabs(wedge(g1, g3)) <= kWedgeMin ||
      std::fabs(wedge(g2, g3)) <= kWedgeMin)
    throw DomainError("blaschke_curvature: gradients are not pairwise independent at this point");
}

bool is_coordinate(const SmoothMap2& f, std::size_t var) {
  const poly::Poly2* p = f.as_polynomial();
  return p != nullptr && *p == poly::Poly2::variable(var);
}

double log_ratio(const SmoothMap2& f1, const SmoothMap2& f2, const SmoothMap2& f3, double x, double y) {
  const Grad g1 = grad(f1, x, y), g2 = grad(f2, x, y), g3 = grad(f3, x, y);
  return std::log(std::fabs(wedge(g3, g2))) - std::log(std::fabs(wedge(g1, g3)));
}

std::array<double, 2> invert(const SmoothMap2& f1, const SmoothMap2& f2, double u, double v, double x, double y) {
  for (int it = 0; it < 50; ++it) {
    const double r1 = f1.value(x, y) - u, r2 = f2.value(x, y) - v;
    const Grad g1 = grad(f1, x, y), g2 = grad(f2, x, y);
    const double det = wedge(g1, g2);
    if (det == 0.0) break;
    const double dx = (r1 * g2.y - r2 * g1.y) / det;
    const double dy = (g1.x * r2 - g2.x * r1) / det;
    x -= dx;
    y -= dy;
    if (std::fabs(dx) + std::fabs(dy) <= 1e-15 * (1.0 + std::fabs(x) + std::fabs(y)))
      return {x, y};
  }
  const double r = std::fabs(f1.value(x, y) - u) + std::fabs(f2.value(x, y) - v);
  if (r <= 1e-13 * (1.0 + std::fabs(u) + std::fabs(v))) return {x, y};
  throw DomainError("blaschke_curvature: Newton inversion did not converge");
}

// Second-order Taylor jet of a function of (x, y) at a point.
struct Jet {
  double v = 0, x = 0, y = 0, xx = 0, xy = 0, yy = 0;
};

Jet operator-(const Jet& a, const Jet& b) {
  return {a.v - b.v, a.x - b.x, a.y - b.y, a.xx - b.xx, a.xy - b.xy, a.yy - b.yy};
}

Jet operator*(const Jet& f, const Jet& g) {
  return {f.v * g.v,
          f.x * g.v + f.v * g.x,
          f.y * g.v + f.v * g.y,
          f.xx * g.v + 2 * f.x * g.x + f.v * g.xx,
          f.xy * g.v + f.x * g.y + f.y * g.x + f.v * g.xy,
          f.yy * g.v + 2 * f.y * g.y + f.v * g.yy};
}

Jet reciprocal(const Jet& g) {
  const double r = 1 / g.v, r2 = r * r, r3 = r2 * r;
  return {r,
          -g.x * r2,
          -g.y * r2,
          -g.xx * r2 + 2 * g.x * g.x * r3,
          -g.xy * r2 + 2 * g.x * g.y * r3,
          -g.yy * r2 + 2 * g.y * g.y * r3};
}

Jet log_abs(const Jet& g) {
  const double r = 1 / g.v, r2 = r * r;
  return {std::log(std::fabs(g.v)),
          g.x * r,
          g.y * r,
          g.xx * r - g.x * g.x * r2,
          g.xy * r - g.x * g.y * r2,
          g.yy * r - g.y * g.y * r2};
}

// Jet of d_x^a d_y^b f; needs derivatives up to order a + b + 2 <= 3.
Jet partial_jet(const SmoothMap2& f, unsigned a, unsigned b, double x, double y) {
  return {f.derivative(a, b, x, y),         f.derivative(a + 1, b, x, y),     f.derivative(a, b + 1, x, y),
          f.derivative(a + 2, b, x, y),     f.derivative(a + 1, b + 1, x, y), f.derivative(a, b + 2, x, y)};
}

// First-order part of d_x J and d_y J (second-order slots unknown, left 0).
Jet dx(const Jet& j) { return {j.x, j.xx, j.xy, 0, 0, 0}; }
Jet dy(const Jet& j) { return {j.y, j.xy, j.yy, 0, 0, 0}; }

// In the chart u = f1, v = f2 with w = f1_x f2_y - f1_y f2_x the coordinate
// fields are d_u = (f2_y d_x - f2_x d_y) / w and d_v = (f1_x d_y - f1_y d_x) / w.
// With F = log |d_u f3 / d_v f3| = log |f2_y f3_x - f2_x f3_y| - log |f1_x f3_y - f1_y f3_x|
// the curvature is 2 d_u (d_v F), evaluated from exact derivatives to order 3.
double curvature_from_jets(const SmoothMap2& f1, const SmoothMap2& f2, const SmoothMap2& f3, double x, double y) {
  const Jet ax = partial_jet(f1, 1, 0, x, y), ay = partial_jet(f1, 0, 1, x, y);
  const Jet bx = partial_jet(f2, 1, 0, x, y), by = partial_jet(f2, 0, 1, x, y);
  const Jet cx = partial_jet(f3, 1, 0, x, y), cy = partial_jet(f3, 0, 1, x, y);
  const Jet w = ax * by - ay * bx;
  const Jet f = log_abs(by * cx - bx * cy) - log_abs(ax * cy - ay * cx);
  // G = d_v F, only its first-order jet is needed.
  const Jet g = (ax * dy(f) - ay * dx(f)) * reciprocal(w);
  return 2 * (by.v * g.x - bx.v * g.y) / w.v;
}

}  // namespace

double blaschke_curvature_newton(const SmoothMap2& f1, const SmoothMap2& f2, const SmoothMap2& f3, double x,
                                 double y) {
  check_independent(f1, f2, f3, x, y);
  const double u0 = f1.value(x, y), v0 = f2.value(x, y);
  auto h = [&](double u, double v) {
    auto q = invert(f1, f2, u, v, x, y);
    return log_ratio(f1, f2, f3, q[0], q[1]);
  };
  auto mixed = [&](double e) {
    return (h(u0 + e, v0 + e) - h(u0 + e, v0 - e) - h(u0 - e, v0 + e) + h(u0 - e, v0 - e)) / (4 * e * e);
  };
  const double e = 2e-3;
  const double coarse = mixed(e), fine = mixed(e / 2);
  return 2.0 * (4.0 * fine - coarse) / 3.0;
}

double blaschke_curvature(const SmoothMap2& f1, const SmoothMap2& f2, const SmoothMap2& f3, double x, double y) {
  check_independent(f1, f2, f3, x, y);
  const poly::Poly2* p = f3.as_polynomial();
  if (p == nullptr || !is_coordinate(f1, poly::kX) || !is_coordinate(f2, poly::kY))
    return curvature_from_jets(f1, f2, f3, x, y);
  const std::array<Rational, 2> pt{rational_from_double(x), rational_from_double(y)};
  const Rational m = poly::mp_numerator(*p).evaluate(pt);
  const Rational g = p->partial(poly::kX).evaluate(pt) * p->partial(poly::kY).evaluate(pt);
  return to_double(Rational(2 * m / (g * g)));
}

}  // namespace explab::geom
