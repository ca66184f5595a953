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

#include "explab/smooth_map.hpp"

namespace explab::geom {

/// Coefficient of the Blaschke curvature form of the 3-web (f1, f2, f3) at
/// (x, y): 2 d_u d_v log |(d f3/d u) / (d f3/d v)| in the chart (u, v) = (f1, f2).
/// Uses the closed form 2 M_P / (P_x P_y)^2 when f1 = x, f2 = y and f3 = P is
/// a polynomial; otherwise pushes second-order jets of the gradients (exact
/// derivatives up to order 3) through the chart vector fields. Throws DomainError
/// when two gradients are nearly parallel (|wedge| <= 1e-8).
double blaschke_curvature(const SmoothMap2& f1, const SmoothMap2& f2, const SmoothMap2& f3, double x, double y);

/// Chart-free evaluation: inverts (f1, f2) near (x, y) by Newton iteration
/// and differentiates log |ratio| numerically (Richardson-extrapolated mixed
/// central differences).
double blaschke_curvature_newton(const SmoothMap2& f1, const SmoothMap2& f2, const SmoothMap2& f3, double x,
                                 double y);

}  // namespace explab::geom
