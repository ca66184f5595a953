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
#include <optional>
#include <vector>

#include "explab/gridset.hpp"
#include "explab/interval.hpp"
#include "explab/polynomial.hpp"

namespace explab::grid {

/// Number of dyadic cells at scale 2^-kc meeting S, 1 <= kc <= k.
std::uint64_t covering_number(const GridSet1D& s, int kc);
std::uint64_t covering_number(const GridSet2D& s, int kc);

struct NonConcentration {
  double eta = 0.0;  // max(raw, 0)
  double raw = 0.0;
  bool floored = false;  // raw <= 0
  int level = 0;         // the worst dyadic J has side 2^-level
  Index index = 0;       // and position index * 2^-level (1D) ...
  Index index_y = 0;     // ... or (index, index_y) * 2^-level (2D)
  std::uint64_t count = 0;
};

/// Least eta with E(S ∩ J) <= |J|^kappa delta^(-alpha-eta) for every dyadic
/// interval J of length >= delta.
NonConcentration nonconcentration_exponent(const GridSet1D& s, double kappa, double alpha);

/// Planar version over dyadic squares B of side r >= delta:
/// E(X ∩ B) <= r^kappa delta^(-base-eta). The three-map setting uses
/// kappa = alpha, base = 2 alpha.
NonConcentration nonconcentration_exponent(const GridSet2D& s, double kappa, double base);

/// Output grid of an image set. A value v sits in output cell
/// floor((v - offset) 2^k) at scale k + extra_bits, i.e. the affine map
/// v -> (v - offset) / 2^extra_bits sends P([0,1]^2) into [0, 1] while
/// keeping the cell width equal to delta in value units.
struct ImageSet {
  GridSet1D cells;
  Rational offset;
  int extra_bits = 0;
};

/// Output cells met by interval_range(P, S x T) for some (S, T) in A x B.
ImageSet image_set(const poly::Poly2& p, const GridSet1D& a, const GridSet1D& b);
ImageSet sum_set(const GridSet1D& a, const GridSet1D& b);
ImageSet product_set(const GridSet1D& a, const GridSet1D& b);

/// interval_range(P, S x T) for every (S, T) in A x B, A-major.
std::vector<poly::Interval> pair_ranges(const poly::Poly2& p, const GridSet1D& a, const GridSet1D& b);

/// Number of half-open delta-cells [n delta, (n+1) delta), n in Z, meeting
/// the union of the closed ranges.
std::uint64_t cells_meeting(const std::vector<poly::Interval>& ranges, Scale s);
std::uint64_t cells_meeting(const std::vector<poly::IntervalD>& ranges, Scale s);

/// Ordered pairs (p, q), diagonal included, whose closed ranges intersect.
std::uint64_t count_intersecting_pairs(const std::vector<poly::Interval>& ranges);
std::uint64_t count_intersecting_pairs(const std::vector<poly::IntervalD>& ranges);

/// Quadruples (S, S', T, T') in A^2 x B^2 with intersecting P-ranges on S x T
/// and S' x T'. With hf_min, quadruples whose enclosure of |H_F| on the
/// 4-cell stays below hf_min are dropped.
std::uint64_t energy_count(const poly::Poly2& p, const GridSet1D& a, const GridSet1D& b,
                           const std::optional<Rational>& hf_min = std::nullopt);

/// c cover^2 / energy. Requires energy >= cover > 0 and 0 < c <= 1.
double cs_growth_bound(double cover, double energy, double c);

}  // namespace explab::grid
