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

#include "explab/gridset.hpp"
#include "explab/measure.hpp"
#include "explab/smooth_map.hpp"

namespace explab::geom {

struct ExtractReport {
  std::uint64_t x_cells = 0;
  std::uint64_t intersection = 0;  // E(X ∩ (A x B)), at least x_cells / 2
  double column_threshold = 0;     // #X / (4 #pi_x X)
  double row_threshold = 0;        // #X / (4 #pi_y X)
  unsigned rounds = 0;
  double alpha = 0;  // log2(#X) / (2k), also used as kappa
  grid::NonConcentration eta_a;
  grid::NonConcentration eta_b;
  std::uint64_t image_cells = 0;  // delta-cells met by P(X ∩ (A x B))
};

struct ExtractResult {
  grid::GridSet1D a;
  grid::GridSet1D b;
  ExtractReport report;
};

/// Popularity pruning: alternately drop columns with fewer than
/// #X / (4 #pi_x X) cells and rows with fewer than #X / (4 #pi_y X) cells,
/// thresholds fixed from the input, until nothing changes.
ExtractResult extract_product(const grid::GridSet2D& x, const SmoothMap2& p);

/// delta-cells met by the enclosures of f over the cells of X.
std::uint64_t map_image_cells(const SmoothMap2& f, const grid::GridSet2D& x);

/// Enclosures of f over the cells of X, in key order.
std::vector<poly::IntervalD> map_ranges(const SmoothMap2& f, const grid::GridSet2D& x);

}  // namespace explab::geom
