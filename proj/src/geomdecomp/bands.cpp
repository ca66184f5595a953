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

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "explab/cubes.hpp"
#include "explab/errors.hpp"

namespace explab::geom {

const char* to_string(CubeFlag f) {
  switch (f) {
    case CubeFlag::None: return "none";
    case CubeFlag::DepthLimit: return "depth_limit";
    case CubeFlag::DilateInside: return "dilate_inside";
  }
  return "?";
}

void write_decomposition(std::ostream& out, const CubeDecomposition& d) {
  for (const Cube& c : d.cubes) {
    out << "cube k=" << c.level << " i=" << c.i << " j=" << c.j;
    if (c.flag != CubeFlag::None) out << " flag=" << to_string(c.flag);
    for (std::size_t n = 0; n < c.bands.size(); ++n) out << " band j=" << n << " v=" << explab::to_string(c.bands[n]);
    out << '\n';
  }
  grid::write_gridset(out, d.leftover);
}

namespace {

std::string field(const std::string& tok, const char* key) {
  const std::string prefix = std::string(key) + "=";
  if (tok.rfind(prefix, 0) != 0) throw DomainError("expected '" + prefix + "...' in cube line, got '" + tok + "'");
  return tok.substr(prefix.size());
}

CubeFlag parse_flag(const std::string& s) {
  if (s == "depth_limit") return CubeFlag::DepthLimit;
  if (s == "dilate_inside") return CubeFlag::DilateInside;
  if (s == "none") return CubeFlag::None;
  throw DomainError("unknown cube flag '" + s + "'");
}

}  // namespace

CubeDecomposition read_decomposition(std::istream& in) {
  std::vector<Cube> cubes;
  std::string line;
  std::ostringstream rest;
  while (std::getline(in, line)) {
    if (line.rfind("gridset2d", 0) == 0) {
      rest << line << '\n' << in.rdbuf();
      break;
    }
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok != "cube") throw DomainError("unexpected line in decomposition: '" + line + "'");
    Cube c;
    std::string t;
    try {
      ls >> t;
      c.level = std::stoi(field(t, "k"));
      ls >> t;
      c.i = static_cast<grid::Index>(std::stoul(field(t, "i")));
      ls >> t;
      c.j = static_cast<grid::Index>(std::stoul(field(t, "j")));
    } catch (const std::logic_error&) {
      throw DomainError("malformed cube line: '" + line + "'");
    }
    while (ls >> t) {
      if (t.rfind("flag=", 0) == 0) {
        c.flag = parse_flag(t.substr(5));
        continue;
      }
      if (t != "band") throw DomainError("malformed cube line: '" + line + "'");
      std::string jt, vt;
      ls >> jt >> vt;
      if (std::stoul(field(jt, "j")) != c.bands.size()) throw DomainError("band indices must be consecutive");
      c.bands.push_back(parse_rational(field(vt, "v")));
    }
    cubes.push_back(std::move(c));
  }
  std::istringstream tail(rest.str());
  return CubeDecomposition{std::move(cubes), grid::read_gridset2d(tail)};
}

namespace {

struct BandSearch {
  const std::vector<SmoothMap2>& fs;
  const grid::GridSet2D& a;
  double threshold;
  int k;
  std::vector<Cube> cubes;
  std::vector<grid::Key> leftover;

  void reject(std::size_t lo, std::size_t hi) {
    leftover.insert(leftover.end(), a.keys().begin() + static_cast<std::ptrdiff_t>(lo),
                    a.keys().begin() + static_cast<std::ptrdiff_t>(hi));
  }

  void visit(int level, grid::Index i, grid::Index j) {
    auto [lo, hi] = a.square_range(level, i, j);
    if (lo == hi) return;
    const Box box = Box::dyadic(level, i, j);
    std::vector<Rational> bands;
    bool accept = true;
    for (const SmoothMap2& f : fs) {
      const poly::IntervalD e = f.enclose(box);
      const double top = e.magnitude(), bottom = e.mignitude();
      if (top < threshold || (top == threshold && bottom < top)) {
        reject(lo, hi);
        return;
      }
      if (bottom >= threshold && top < 4 * bottom) {
        bands.push_back(rational_from_double(bottom));
      } else {
        accept = false;
      }
    }
    if (accept) {
      cubes.push_back(Cube{level, i, j, CubeFlag::None, std::move(bands)});
      return;
    }
    if (level == k) {
      reject(lo, hi);
      return;
    }
    for (grid::Index di = 0; di < 2; ++di)
      for (grid::Index dj = 0; dj < 2; ++dj) visit(level + 1, 2 * i + di, 2 * j + dj);
  }
};

}  // namespace

CubeDecomposition band_partition(const std::vector<SmoothMap2>& fs, double w, const grid::GridSet2D& a) {
  if (!(w > 0)) throw DomainError("band_partition: w must be positive");
  if (fs.empty()) throw DomainError("band_partition: no functions");
  const int k = a.scale().k();
  BandSearch search{fs, a, std::exp2(-w * k), k, {}, {}};
  search.visit(0, 0, 0);
  return CubeDecomposition{std::move(search.cubes), grid::GridSet2D::from_keys(a.scale(), std::move(search.leftover))};
}

}  // namespace explab::geom
