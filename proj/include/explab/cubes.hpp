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

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "explab/gridset.hpp"
#include "explab/smooth_map.hpp"

namespace explab::geom {

enum class CubeFlag {
  None,
  DepthLimit,    // reached k_max while still touching the boundary of the region
  DilateInside,  // Q inside, but 2Q also inside: no dyadic refinement can fix it
};

struct Cube {
  int level = 0;  // side 2^-level
  grid::Index i = 0;
  grid::Index j = 0;
  CubeFlag flag = CubeFlag::None;
  std::vector<Rational> bands;  // v_{Q,j} per tracked function

  Box box() const { return Box::dyadic(level, i, j); }
};

struct CubeDecomposition {
  std::vector<Cube> cubes;
  grid::GridSet2D leftover;
};

/// Lines "cube k=<level> i=<i> j=<j> [flag=<f>] [band j=<n> v=<rational>]...",
/// then the leftover as a gridset2d block.
void write_decomposition(std::ostream& out, const CubeDecomposition& d);
CubeDecomposition read_decomposition(std::istream& in);
const char* to_string(CubeFlag f);

enum class Membership { Inside, Outside, Touching };

/// A subset of [0, 1]^2, queried on closed boxes. Boxes reaching outside the
/// unit square are never Inside.
class Region {
 public:
  virtual ~Region() = default;
  virtual Membership classify(const Box& b) const = 0;
  virtual std::string describe() const = 0;

  static std::shared_ptr<const Region> empty();
  static std::shared_ptr<const Region> full_square();
  static std::shared_ptr<const Region> punctured(std::vector<std::pair<double, double>> points);
  /// {P != 0}: Inside where the enclosure of P excludes 0.
  static std::shared_ptr<const Region> polynomial_complement(const poly::Poly2& p);
};

/// Maximal dyadic squares inside the region; squares whose concentric
/// 2-fold dilate is still inside are flagged DilateInside, squares cut off at
/// k_max are flagged DepthLimit. Leftover is empty at scale k_max.
CubeDecomposition whitney_decompose(const Region& omega, grid::Scale k_max);

/// Quadtree over the cells of A. A square is accepted when every |f_j| has
/// an enclosure [lo, hi] with lo >= delta^w and hi < 4 lo (then v = lo); it is
/// sent to leftover when some enclosure lies entirely below delta^w, or when
/// it reaches single-cell size undecided.
CubeDecomposition band_partition(const std::vector<SmoothMap2>& fs, double w, const grid::GridSet2D& a);

}  // namespace explab::geom
