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

#include "explab/fit.hpp"

#include <cmath>

#include "explab/errors.hpp"
#include "explab/measure.hpp"

namespace explab::grid {

ExponentFit exponent_regression(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw DomainError("exponent fit needs at least two points");
  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (auto [x, y] : points) {
    sx += x;
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (auto [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw DomainError("exponent fit needs distinct scales");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (auto [x, y] : points) {
    const double e = y - (fit.intercept + fit.slope * x);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  fit.points = std::move(points);
  return fit;
}

ExponentFit fit_counts(const std::vector<int>& ks, const std::vector<double>& counts) {
  if (ks.size() != counts.size()) throw DomainError("fit_counts: length mismatch");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = 0; n < ks.size(); ++n) {
    if (!(counts[n] > 0)) throw DomainError("fit_counts: counts must be positive");
    pts.emplace_back(ks[n], std::log2(counts[n]));
  }
  return exponent_regression(std::move(pts));
}

ExponentFit box_dim_fit(const std::function<GridSet1D(int)>& family, const std::vector<int>& ks) {
  if (ks.size() < 3) throw DomainError("box_dim_fit needs at least three scales");
  std::vector<double> counts;
  for (int k : ks) counts.push_back(static_cast<double>(covering_number(family(k), k)));
  return fit_counts(ks, counts);
}

}  // namespace explab::grid
