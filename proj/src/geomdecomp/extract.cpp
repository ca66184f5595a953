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

#include "explab/extract.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "explab/errors.hpp"
#include "explab/parallel.hpp"

namespace explab::geom {

std::vector<poly::IntervalD> map_ranges(const SmoothMap2& f, const grid::GridSet2D& x) {
  const int k = x.scale().k();
  std::vector<poly::IntervalD> out(x.size());
  parallel_for(x.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t n = lo; n < hi; ++n) {
      auto [i, j] = grid::morton_decode(x.keys()[n]);
      out[n] = f.enclose(Box::dyadic(k, i, j));
    }
  });
  return out;
}

std::uint64_t map_image_cells(const SmoothMap2& f, const grid::GridSet2D& x) {
  return grid::cells_meeting(map_ranges(f, x), x.scale());
}

ExtractResult extract_product(const grid::GridSet2D& x, const SmoothMap2& p) {
  if (x.empty()) throw DomainError("extract_product: empty set");
  const auto cells = x.cells();
  const std::size_t total = cells.size();
  std::map<grid::Index, std::size_t> cols, rows;
  for (auto [i, j] : cells) {
    ++cols[i];
    ++rows[j];
  }
  ExtractReport rep;
  rep.x_cells = total;
  rep.column_threshold = static_cast<double>(total) / (4.0 * static_cast<double>(cols.size()));
  rep.row_threshold = static_cast<double>(total) / (4.0 * static_cast<double>(rows.size()));

  std::vector<char> alive(total, 1);
  for (bool changed = true; changed;) {
    changed = false;
    ++rep.rounds;
    for (int pass = 0; pass < 2; ++pass) {
      const double threshold = pass == 0 ? rep.column_threshold : rep.row_threshold;
      std::map<grid::Index, std::size_t> degree;
      for (std::size_t n = 0; n < total; ++n)
        if (alive[n]) ++degree[pass == 0 ? cells[n].first : cells[n].second];
      for (std::size_t n = 0; n < total; ++n) {
        if (!alive[n]) continue;
        const grid::Index key = pass == 0 ? cells[n].first : cells[n].second;
        if (static_cast<double>(degree[key]) < threshold) {
          alive[n] = 0;
          changed = true;
        }
      }
    }
  }

  std::vector<grid::Index> as, bs;
  for (std::size_t n = 0; n < total; ++n) {
    if (!alive[n]) continue;
    as.push_back(cells[n].first);
    bs.push_back(cells[n].second);
  }
  grid::GridSet1D a = grid::GridSet1D::from_unsorted(x.scale(), std::move(as));
  grid::GridSet1D b = grid::GridSet1D::from_unsorted(x.scale(), std::move(bs));
  const grid::GridSet2D inter = x.intersect(grid::GridSet2D::product(a, b));
  rep.intersection = inter.size();

  const int k = x.scale().k();
  rep.alpha = std::clamp(std::log2(static_cast<double>(total)) / (2.0 * k), 1e-9, 1.0 - 1e-9);
  if (!a.empty()) {
    rep.eta_a = grid::nonconcentration_exponent(a, rep.alpha, rep.alpha);
    rep.eta_b = grid::nonconcentration_exponent(b, rep.alpha, rep.alpha);
  }
  rep.image_cells = inter.empty() ? 0 : map_image_cells(p, inter);
  return ExtractResult{std::move(a), std::move(b), rep};
}

}  // namespace explab::geom
