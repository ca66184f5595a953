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

#include <functional>
#include <utility>
#include <vector>

#include "explab/gridset.hpp"

namespace explab::grid {

/// Least-squares line through (k, log2 value). slope is the exponent in
/// value ~ delta^-slope.
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square
  std::vector<std::pair<double, double>> points;
};

/// Needs at least two distinct abscissae.
ExponentFit exponent_regression(std::vector<std::pair<double, double>> points);

/// Fits log2 of positive counts against k.
ExponentFit fit_counts(const std::vector<int>& ks, const std::vector<double>& counts);

/// Slope of log2 covering_number(family(k), k) over at least three scales.
ExponentFit box_dim_fit(const std::function<GridSet1D(int)>& family, const std::vector<int>& ks);

}  // namespace explab::grid
