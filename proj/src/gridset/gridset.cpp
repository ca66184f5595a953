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

#include "explab/gridset.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "explab/errors.hpp"

namespace explab::grid {

Scale::Scale(int k) : k_(k) {
  if (k < 1 || k > kMax) throw DomainError("scale k must be in [1, 30], got " + std::to_string(k));
}

double Scale::delta() const { return std::ldexp(1.0, -k_); }

Rational Scale::delta_exact() const {
  Rational d(1, 1);
  mpz_mul_2exp(d.get_den_mpz_t(), d.get_den_mpz_t(), static_cast<mp_bitcnt_t>(k_));
  return d;
}

Rational cell_lo(Index j, Scale s) {
  Rational r(static_cast<unsigned long>(j), 1UL);
  mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(s.k()));
  r.canonicalize();
  return r;
}

Rational cell_hi(Index j, Scale s) { return cell_lo(j + 1, s); }

GridSet1D::GridSet1D(Scale s, std::vector<Index> cells, bool) : scale_(s), cells_(std::move(cells)) {}

GridSet1D::GridSet1D(Scale s, std::vector<Index> cells) : scale_(s), cells_(std::move(cells)) {
  for (std::size_t n = 0; n < cells_.size(); ++n) {
    if (cells_[n] >= s.cells()) throw DomainError("cell index out of range");
    if (n > 0 && cells_[n] <= cells_[n - 1]) throw DomainError("cell indices must be strictly increasing");
  }
}

GridSet1D GridSet1D::from_unsorted(Scale s, std::vector<Index> cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return GridSet1D(s, std::move(cells));
}

GridSet1D GridSet1D::full(Scale s) {
  std::vector<Index> cells(s.cells());
  for (std::size_t j = 0; j < cells.size(); ++j) cells[j] = static_cast<Index>(j);
  return GridSet1D(s, std::move(cells), true);
}

bool GridSet1D::contains(Index j) const { return std::binary_search(cells_.begin(), cells_.end(), j); }

GridSet1D GridSet1D::coarsen(int kc) const {
  if (kc < 1 || kc > scale_.k()) throw DomainError("coarse scale must satisfy 1 <= k' <= k");
  const int shift = scale_.k() - kc;
  std::vector<Index> out;
  for (Index j : cells_) {
    Index p = j >> shift;
    if (out.empty() || out.back() != p) out.push_back(p);
  }
  return GridSet1D(Scale(kc), std::move(out), true);
}

GridSet1D GridSet1D::restrict_left_endpoints(const Rational& lo, const Rational& hi) const {
  std::vector<Index> out;
  for (Index j : cells_) {
    Rational l = cell_lo(j, scale_);
    if (lo <= l && l <= hi) out.push_back(j);
  }
  return GridSet1D(scale_, std::move(out), true);
}

namespace {

std::uint64_t spread(std::uint64_t v) {
  v &= 0xFFFFFFFFULL;
  v = (v | (v << 16)) & 0x0000FFFF0000FFFFULL;
  v = (v | (v << 8)) & 0x00FF00FF00FF00FFULL;
  v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0FULL;
  v = (v | (v << 2)) & 0x3333333333333333ULL;
  v = (v | (v << 1)) & 0x5555555555555555ULL;
  return v;
}

std::uint32_t squash(std::uint64_t v) {
  v &= 0x5555555555555555ULL;
  v = (v | (v >> 1)) & 0x3333333333333333ULL;
  v = (v | (v >> 2)) & 0x0F0F0F0F0F0F0F0FULL;
  v = (v | (v >> 4)) & 0x00FF00FF00FF00FFULL;
  v = (v | (v >> 8)) & 0x0000FFFF0000FFFFULL;
  v = (v | (v >> 16)) & 0x00000000FFFFFFFFULL;
  return static_cast<std::uint32_t>(v);
}

}  // namespace

Key morton_encode(Index i, Index j) { return (spread(i) << 1) | spread(j); }

std::pair<Index, Index> morton_decode(Key key) { return {squash(key >> 1), squash(key)}; }

GridSet2D GridSet2D::from_keys(Scale s, std::vector<Key> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  if (!keys.empty() && keys.back() >= (Key{1} << (2 * s.k()))) throw DomainError("cell index out of range");
  return GridSet2D(s, std::move(keys));
}

GridSet2D GridSet2D::from_cells(Scale s, const std::vector<std::pair<Index, Index>>& cells) {
  std::vector<Key> keys;
  keys.reserve(cells.size());
  for (auto [i, j] : cells) {
    if (i >= s.cells() || j >= s.cells()) throw DomainError("cell index out of range");
    keys.push_back(morton_encode(i, j));
  }
  return from_keys(s, std::move(keys));
}

GridSet2D GridSet2D::product(const GridSet1D& a, const GridSet1D& b) {
  if (a.scale() != b.scale()) throw DomainError("scale mismatch");
  std::vector<Key> keys;
  keys.reserve(a.size() * b.size());
  for (Index i : a.cells())
    for (Index j : b.cells()) keys.push_back(morton_encode(i, j));
  std::sort(keys.begin(), keys.end());
  return GridSet2D(a.scale(), std::move(keys));
}

GridSet2D GridSet2D::full(Scale s) {
  if (s.k() > 13) throw DomainError("full 2D grid limited to k <= 13");
  std::vector<Key> keys(std::size_t{1} << (2 * s.k()));
  for (std::size_t n = 0; n < keys.size(); ++n) keys[n] = n;
  return GridSet2D(s, std::move(keys));
}

bool GridSet2D::contains(Index i, Index j) const {
  return std::binary_search(keys_.begin(), keys_.end(), morton_encode(i, j));
}

std::vector<std::pair<Index, Index>> GridSet2D::cells() const {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(keys_.size());
  for (Key key : keys_) out.push_back(morton_decode(key));
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<std::size_t, std::size_t> GridSet2D::square_range(int m, Index a, Index b) const {
  if (m < 0 || m > scale_.k()) throw DomainError("square level out of range");
  const int shift = 2 * (scale_.k() - m);
  const Key first = morton_encode(a, b) << shift;
  const Key last = first + (Key{1} << shift);
  auto lo = std::lower_bound(keys_.begin(), keys_.end(), first);
  auto hi = std::lower_bound(lo, keys_.end(), last);
  return {static_cast<std::size_t>(lo - keys_.begin()), static_cast<std::size_t>(hi - keys_.begin())};
}

std::size_t GridSet2D::count_in_square(int m, Index a, Index b) const {
  auto [lo, hi] = square_range(m, a, b);
  return hi - lo;
}

GridSet2D GridSet2D::coarsen(int kc) const {
  if (kc < 1 || kc > scale_.k()) throw DomainError("coarse scale must satisfy 1 <= k' <= k");
  const int shift = 2 * (scale_.k() - kc);
  std::vector<Key> out;
  for (Key key : keys_) {
    Key p = key >> shift;
    if (out.empty() || out.back() != p) out.push_back(p);
  }
  return GridSet2D(Scale(kc), std::move(out));
}

GridSet1D GridSet2D::project_x() const {
  std::vector<Index> out;
  out.reserve(keys_.size());
  for (Key key : keys_) out.push_back(morton_decode(key).first);
  return GridSet1D::from_unsorted(scale_, std::move(out));
}

GridSet1D GridSet2D::project_y() const {
  std::vector<Index> out;
  out.reserve(keys_.size());
  for (Key key : keys_) out.push_back(morton_decode(key).second);
  return GridSet1D::from_unsorted(scale_, std::move(out));
}

GridSet2D GridSet2D::intersect(const GridSet2D& o) const {
  if (scale_ != o.scale_) throw DomainError("scale mismatch");
  std::vector<Key> out;
  std::set_intersection(keys_.begin(), keys_.end(), o.keys_.begin(), o.keys_.end(), std::back_inserter(out));
  return GridSet2D(scale_, std::move(out));
}

void write_gridset(std::ostream& out, const GridSet1D& s) {
  out << "gridset1d k=" << s.scale().k() << '\n';
  for (Index j : s.cells()) out << j << '\n';
}

void write_gridset(std::ostream& out, const GridSet2D& s) {
  out << "gridset2d k=" << s.scale().k() << '\n';
  for (auto [i, j] : s.cells()) out << i << ' ' << j << '\n';
}

namespace {

struct Header {
  bool two_d;
  int k;
};

Header read_header(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream ls(line);
  std::string tag, kfield;
  ls >> tag >> kfield;
  if ((tag != "gridset1d" && tag != "gridset2d") || kfield.rfind("k=", 0) != 0)
    throw DomainError("bad gridset header: '" + line + "'");
  int k = 0;
  try {
    k = std::stoi(kfield.substr(2));
  } catch (const std::exception&) {
    throw DomainError("bad gridset header: '" + line + "'");
  }
  return {tag == "gridset2d", k};
}

unsigned long parse_index(const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw DomainError("bad cell index '" + tok + "'");
  return std::stoul(tok);
}

GridSet1D read_body1d(std::istream& in, Scale s) {
  std::vector<Index> cells;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok, extra;
    if (!(ls >> tok)) continue;
    if (ls >> extra) throw DomainError("expected one index per line in gridset1d");
    unsigned long v = parse_index(tok);
    if (v >= s.cells()) throw DomainError("cell index out of range");
    cells.push_back(static_cast<Index>(v));
  }
  return GridSet1D(s, std::move(cells));
}

GridSet2D read_body2d(std::istream& in, Scale s) {
  std::vector<std::pair<Index, Index>> cells;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || (ls >> extra)) throw DomainError("expected an index pair per line in gridset2d");
    unsigned long i = parse_index(a), j = parse_index(b);
    if (i >= s.cells() || j >= s.cells()) throw DomainError("cell index out of range");
    if (!cells.empty() && std::make_pair(static_cast<Index>(i), static_cast<Index>(j)) <= cells.back())
      throw DomainError("gridset2d cells must be strictly ascending");
    cells.emplace_back(static_cast<Index>(i), static_cast<Index>(j));
  }
  return GridSet2D::from_cells(s, cells);
}

}  // namespace

std::variant<GridSet1D, GridSet2D> read_gridset(std::istream& in) {
  Header h = read_header(in);
  Scale s(h.k);
  if (h.two_d) return read_body2d(in, s);
  return read_body1d(in, s);
}

GridSet1D read_gridset1d(std::istream& in) {
  auto v = read_gridset(in);
  if (!std::holds_alternative<GridSet1D>(v)) throw DomainError("expected a gridset1d");
  return std::get<GridSet1D>(std::move(v));
}

GridSet2D read_gridset2d(std::istream& in) {
  auto v = read_gridset(in);
  if (!std::holds_alternative<GridSet2D>(v)) throw DomainError("expected a gridset2d");
  return std::get<GridSet2D>(std::move(v));
}

}  // namespace explab::grid
