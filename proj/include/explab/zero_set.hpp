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

#include <cstdint>
#include <vector>

#include "explab/gridset.hpp"
#include "explab/smooth_map.hpp"

namespace explab::geom {

/// Cells of A whose s-inflation carries an enclosure of phi - t containing 0.
/// Over-approximates the cells meeting N_s({phi = t}). Requires delta <= s <= 1.
std::uint64_t level_nbhd_covering(const SmoothMap2& phi, const grid::GridSet2D& a, double s, double t);

inline std::uint64_t zero_nbhd_covering(const SmoothMap2& phi, const grid::GridSet2D& a, double s) {
  return level_nbhd_covering(phi, a, s, 0.0);
}
std::uint64_t zero_nbhd_covering(const SmoothMap2& phi, const grid::GridSet1D& a, const grid::GridSet1D& b,
                                 double s);

struct LevelChoice {
  double t = 0;
  std::uint64_t count = 0;
  std::vector<double> candidates;
  std::vector<std::uint64_t> counts;
};

/// Scans ceil(s^(-kappa/2)) evenly spaced levels in [t0, 2 t0] and returns
/// the first one with the fewest cells near {phi = t}. Requires
/// s^(kappa/2) < t0 <= 1/2.
LevelChoice select_level(const SmoothMap2& phi, const grid::GridSet2D& a, double s, double t0, double kappa);

}  // namespace explab::geom
