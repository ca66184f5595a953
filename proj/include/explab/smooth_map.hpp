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

#include <memory>
#include <string>

#include "explab/interval.hpp"
#include "explab/polynomial.hpp"

namespace explab::geom {

/// Axis-aligned box [x0, x1] x [y0, y1]. Dyadic boxes are exact in double.
struct Box {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  double cx() const { return 0.5 * (x0 + x1); }
  double cy() const { return 0.5 * (y0 + y1); }
  double half_diagonal() const;
  Box inflate(double s) const { return {x0 - s, x1 + s, y0 - s, y1 + s}; }
  /// The dyadic square of side 2^-level at (i, j).
  static Box dyadic(int level, std::uint32_t i, std::uint32_t j);
};

/// Smooth real function on a planar domain with derivatives up to order 3.
class SmoothMap2 {
 public:
  class Impl;

  static SmoothMap2 polynomial(const poly::Poly2& p);
  /// q -> |q - (px, py)|, singular at the center.
  static SmoothMap2 pinned_distance(double px, double py);
  /// (x, y) -> x cos(theta) + y sin(theta).
  static SmoothMap2 linear_projection(double theta);

  double value(double x, double y) const;
  /// d_x^a d_y^b at (x, y), a + b <= 3.
  double derivative(unsigned a, unsigned b, double x, double y) const;
  Box domain() const;
  /// Sound enclosure of the range over a box.
  poly::IntervalD enclose(const Box& box) const;
  /// Lower bound of min(|f_x|, |f_y|) over the box.
  double gradient_floor(const Box& box) const;
  /// Non-null for the polynomial realization.
  const poly::Poly2* as_polynomial() const;
  std::string describe() const;

 private:
  explicit SmoothMap2(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace explab::geom
