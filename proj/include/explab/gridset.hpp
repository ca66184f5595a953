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
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "explab/rational.hpp"

namespace explab::grid {

using Index = std::uint32_t;

/// Dyadic scale delta = 2^-k, 1 <= k <= 30.
class Scale {
 public:
  static constexpr int kMax = 30;

  explicit Scale(int k);
  int k() const { return k_; }
  double delta() const;
  Rational delta_exact() const;
  std::uint64_t cells() const { return std::uint64_t{1} << k_; }

  friend bool operator==(Scale a, Scale b) { return a.k_ == b.k_; }
  friend bool operator!=(Scale a, Scale b) { return a.k_ != b.k_; }

 private:
  int k_;
};

/// Cell j at scale k is [j 2^-k, (j+1) 2^-k].
Rational cell_lo(Index j, Scale s);
Rational cell_hi(Index j, Scale s);

class GridSet1D {
 public:
  /// Checks that cells are strictly increasing and inside [0, 2^k).
  GridSet1D(Scale s, std::vector<Index> cells);
  static GridSet1D from_unsorted(Scale s, std::vector<Index> cells);
  static GridSet1D full(Scale s);

  Scale scale() const { return scale_; }
  const std::vector<Index>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  bool contains(Index j) const;

  /// Parent cells at the coarser scale kc <= k.
  GridSet1D coarsen(int kc) const;
  /// Cells whose left endpoint lies in [lo, hi].
  GridSet1D restrict_left_endpoints(const Rational& lo, const Rational& hi) const;

  friend bool operator==(const GridSet1D& a, const GridSet1D& b) {
    return a.scale_ == b.scale_ && a.cells_ == b.cells_;
  }

 private:
  GridSet1D(Scale s, std::vector<Index> cells, bool trusted);
  Scale scale_;
  std::vector<Index> cells_;
};

using Key = std::uint64_t;

/// Bit-interleaved (i, j) so that every dyadic square is a contiguous key range.
Key morton_encode(Index i, Index j);
std::pair<Index, Index> morton_decode(Key key);

class GridSet2D {
 public:
  static GridSet2D from_cells(Scale s, const std::vector<std::pair<Index, Index>>& cells);
  static GridSet2D from_keys(Scale s, std::vector<Key> keys);
  static GridSet2D product(const GridSet1D& a, const GridSet1D& b);
  static GridSet2D full(Scale s);

  Scale scale() const { return scale_; }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  bool contains(Index i, Index j) const;
  const std::vector<Key>& keys() const { return keys_; }

  /// Cells in lexicographic (i, j) order.
  std::vector<std::pair<Index, Index>> cells() const;

  /// Index range [first, last) into keys() of the cells inside the dyadic
  /// square of side 2^-m at position (a, b), m <= k.
  std::pair<std::size_t, std::size_t> square_range(int m, Index a, Index b) const;
  std::size_t count_in_square(int m, Index a, Index b) const;

  GridSet2D coarsen(int kc) const;
  GridSet1D project_x() const;
  GridSet1D project_y() const;
  GridSet2D intersect(const GridSet2D& o) const;

  friend bool operator==(const GridSet2D& a, const GridSet2D& b) {
    return a.scale_ == b.scale_ && a.keys_ == b.keys_;
  }

 private:
  GridSet2D(Scale s, std::vector<Key> keys) : scale_(s), keys_(std::move(keys)) {}
  Scale scale_;
  std::vector<Key> keys_;  // sorted, unique
};

/// Text format: a header line "gridset1d k=<k>" or "gridset2d k=<k>", then one
/// index ("j") or pair ("i j") per line in ascending order.
void write_gridset(std::ostream& out, const GridSet1D& s);
void write_gridset(std::ostream& out, const GridSet2D& s);
std::variant<GridSet1D, GridSet2D> read_gridset(std::istream& in);
GridSet1D read_gridset1d(std::istream& in);
GridSet2D read_gridset2d(std::istream& in);

}  // namespace explab::grid
