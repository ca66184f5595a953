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

#include "explab/zero_set.hpp"

#include <cmath>

#include "explab/errors.hpp"

namespace explab::geom {

namespace {

struct Scan {
  const SmoothMap2& phi;
  const grid::GridSet2D& a;
  double s, t;
  int k;

  std::uint64_t visit(int level, grid::Index i, grid::Index j) const {
    auto [lo, hi] = a.square_range(level, i, j);
    if (lo == hi) return 0;
    // Inflation of a union of cells is the union of inflations, so a miss
    // here rules out every cell below.
    const poly::IntervalD e = phi.enclose(Box::dyadic(level, i, j).inflate(s));
    if (!e.contains(t)) return 0;
    if (level == k) return hi - lo;
    std::uint64_t total = 0;
    for (grid::Index di = 0; di < 2; ++di)
      for (grid::Index dj = 0; dj < 2; ++dj) total += visit(level + 1, 2 * i + di, 2 * j + dj);
    return total;
  }
};

void check_s(double s, const grid::Scale& scale) {
  if (!(s >= scale.delta()) || s > 1.0) throw DomainError("neighborhood radius s must lie in [delta, 1]");
}

}  // namespace

std::uint64_t level_nbhd_covering(const SmoothMap2& phi, const grid::GridSet2D& a, double s, double t) {
  check_s(s, a.scale());
  return Scan{phi, a, s, t, a.scale().k()}.visit(0, 0, 0);
}

std::uint64_t zero_nbhd_covering(const SmoothMap2& phi, const grid::GridSet1D& a, const grid::GridSet1D& b,
                                 double s) {
  return zero_nbhd_covering(phi, grid::GridSet2D::product(a, b), s);
}

LevelChoice select_level(const SmoothMap2& phi, const grid::GridSet2D& a, double s, double t0, double kappa) {
  check_s(s, a.scale());
  if (!(kappa > 0) || kappa > 1) throw DomainError("select_level: kappa must lie in (0, 1]");
  const double floor_t = std::pow(s, kappa / 2);
  if (!(floor_t < t0) || t0 > 0.5) throw DomainError("select_level: need s^(kappa/2) < t0 <= 1/2");
  const auto n = static_cast<std::size_t>(std::ceil(1.0 / floor_t - 1e-12));
  LevelChoice out;
  for (std::size_t m = 0; m < n; ++m) {
    const double t = n == 1 ? t0 : t0 * (1.0 + static_cast<double>(m) / static_cast<double>(n - 1));
    const std::uint64_t c = level_nbhd_covering(phi, a, s, t);
    out.candidates.push_back(t);
    out.counts.push_back(c);
    if (m == 0 || c < out.count) {
      out.count = c;
      out.t = t;
    }
  }
  return out;
}

}  // namespace explab::geom
