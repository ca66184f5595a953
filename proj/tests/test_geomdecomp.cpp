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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "explab/cubes.hpp"
#include "explab/curvature.hpp"
#include "explab/errors.hpp"
#include "explab/extract.hpp"
#include "explab/generators.hpp"
#include "explab/measure.hpp"
#include "explab/parser.hpp"
#include "explab/smooth_map.hpp"
#include "explab/symbolic.hpp"
#include "explab/zero_set.hpp"
#include "oracles.hpp"

using namespace explab;
using namespace explab::geom;
using grid::GridSet1D;
using grid::GridSet2D;
using grid::Index;
using grid::Scale;

namespace {

poly::Poly2 P(const char* s) { return poly::parse_poly2(s); }
SmoothMap2 M(const char* s) { return SmoothMap2::polynomial(P(s)); }

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-12});
}

// The closed box contains the point.
bool holds(const Box& b, double x, double y) { return b.x0 <= x && x <= b.x1 && b.y0 <= y && y <= b.y1; }

// Fine cells (at level k) covered by a cube list; fails on overlap.
std::set<std::pair<Index, Index>> tiles(const std::vector<Cube>& cubes, int k, bool& overlap) {
  std::set<std::pair<Index, Index>> s;
  overlap = false;
  for (const auto& c : cubes) {
    const Index w = 1u << (k - c.level);
    for (Index a = 0; a < w; ++a)
      for (Index b = 0; b < w; ++b) overlap |= !s.insert({c.i * w + a, c.j * w + b}).second;
  }
  return s;
}

}  // namespace

TEST_CASE("pinned distance: values and derivatives") {
  const SmoothMap2 d = SmoothMap2::pinned_distance(0, 0);
  CHECK(d.value(0.6, 0.8) == doctest::Approx(1.0));
  CHECK(d.derivative(1, 0, 0.6, 0.8) == doctest::Approx(0.6));
  CHECK(d.derivative(0, 1, 0.6, 0.8) == doctest::Approx(0.8));
  CHECK_THROWS_AS(d.value(0, 0), DomainError);
  CHECK_THROWS_AS(d.derivative(1, 1, 0, 0), DomainError);
  CHECK(d.describe() == "pin:0,0");
}

TEST_CASE("smooth maps: derivatives agree with centered differences") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.2, 0.8);
  const std::vector<SmoothMap2> maps{SmoothMap2::pinned_distance(0, 0), SmoothMap2::pinned_distance(1, 0.3),
                                     SmoothMap2::linear_projection(0.7), M("x^3*y - 2*x*y^2 + y^4")};
  const double h = 1e-5;
  for (const auto& f : maps) {
    for (int t = 0; t < 20; ++t) {
      const double x = u(rng), y = u(rng);
      for (unsigned a = 0; a <= 3; ++a)
        for (unsigned b = 0; a + b <= 3; ++b) {
          if (a + b == 0) continue;
          // Difference the derivative one order lower along a variable it has.
          const double fd = a > 0 ? (f.derivative(a - 1, b, x + h, y) - f.derivative(a - 1, b, x - h, y)) / (2 * h)
                                  : (f.derivative(a, b - 1, x, y + h) - f.derivative(a, b - 1, x, y - h)) / (2 * h);
          const double exact = f.derivative(a, b, x, y);
          CHECK_MESSAGE(std::abs(fd - exact) <= 1e-4 * std::max(std::abs(exact), 1e-2),
                        f.describe() << " a=" << a << " b=" << b);
        }
    }
  }
}

TEST_CASE("smooth maps: enclosures and gradient floors are sound") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  const std::vector<SmoothMap2> maps{SmoothMap2::pinned_distance(-0.1, 0.5), SmoothMap2::linear_projection(2.0),
                                     M("x^2 + x*y + y^2"), M("x + y + (x^2 + y^2)^2")};
  for (const auto& f : maps) {
    for (int t = 0; t < 50; ++t) {
      const int level = 1 + static_cast<int>(rng() % 8);
      const Index i = rng() % (1u << level), j = rng() % (1u << level);
      const Box b = Box::dyadic(level, i, j);
      const auto e = f.enclose(b);
      const double g = f.gradient_floor(b);
      for (int s = 0; s < 50; ++s) {
        const double x = b.x0 + u(rng) * (b.x1 - b.x0), y = b.y0 + u(rng) * (b.y1 - b.y0);
        CHECK(e.contains(f.value(x, y)));
        CHECK(g <= std::min(std::abs(f.derivative(1, 0, x, y)), std::abs(f.derivative(0, 1, x, y))));
      }
    }
  }
}

TEST_CASE("whitney: empty and full square") {
  CHECK(whitney_decompose(*Region::empty(), Scale(6)).cubes.empty());
  const auto full = whitney_decompose(*Region::full_square(), Scale(6));
  REQUIRE(full.cubes.size() == 1);
  CHECK(full.cubes[0].level == 0);
  CHECK(full.cubes[0].flag == CubeFlag::None);
  CHECK(full.leftover.empty());
}

TEST_CASE("whitney: punctured square") {
  const int k = 9;
  const auto d = whitney_decompose(*Region::punctured({{0.5, 0.5}}), Scale(k));
  bool overlap = false;
  const auto covered = tiles(d.cubes, k, overlap);
  CHECK_FALSE(overlap);
  CHECK(covered.size() == (std::size_t{1} << (2 * k)));

  std::vector<int> per_level(k + 1, 0);
  int flagged_dilate = 0;
  for (const auto& c : d.cubes) {
    const Box q = c.box();
    const double side = q.x1 - q.x0;
    const Box dilate = q.inflate(side / 2);
    const bool dilate_exits = dilate.x0 < 0 || dilate.y0 < 0 || dilate.x1 > 1 || dilate.y1 > 1 || holds(dilate, 0.5, 0.5);
    switch (c.flag) {
      case CubeFlag::None:
        CHECK_FALSE(holds(q, 0.5, 0.5));
        CHECK(dilate_exits);
        break;
      case CubeFlag::DilateInside:
        CHECK_FALSE(holds(q, 0.5, 0.5));
        CHECK_FALSE(dilate_exits);
        ++flagged_dilate;
        break;
      case CubeFlag::DepthLimit:
        CHECK(c.level == k);
        CHECK(holds(q, 0.5, 0.5));
        break;
    }
    if (c.flag != CubeFlag::DepthLimit && holds(q.inflate(side), 0.5, 0.5)) ++per_level[c.level];
  }
  // Cubes next to the puncture: a bounded number per generation.
  for (int g = 2; g < k; ++g) {
    CHECK(per_level[g] >= 1);
    CHECK(per_level[g] <= 16);
  }
  MESSAGE("DilateInside cubes: " << flagged_dilate);

  std::stringstream s;
  write_decomposition(s, d);
  const auto back = read_decomposition(s);
  REQUIRE(back.cubes.size() == d.cubes.size());
  for (std::size_t n = 0; n < d.cubes.size(); ++n) {
    CHECK(back.cubes[n].level == d.cubes[n].level);
    CHECK(back.cubes[n].i == d.cubes[n].i);
    CHECK(back.cubes[n].j == d.cubes[n].j);
    CHECK(back.cubes[n].flag == d.cubes[n].flag);
  }
  CHECK(back.leftover == d.leftover);
}

TEST_CASE("bands: constant function") {
  const auto d = band_partition({M("1")}, 0.3, GridSet2D::full(Scale(6)));
  REQUIRE(d.cubes.size() == 1);
  CHECK(d.cubes[0].level == 0);
  CHECK(d.cubes[0].bands == std::vector<Rational>{Rational(1)});
  CHECK(d.leftover.empty());
}

TEST_CASE("bands: coordinate function gives dyadic strips") {
  const int k = 6;
  const auto d = band_partition({M("x")}, 0.5, GridSet2D::full(Scale(k)));
  // delta^w = 2^-3: the leftover is the strip x < 1/8, i.e. columns 0..7.
  std::vector<std::pair<Index, Index>> strip;
  for (Index i = 0; i < 8; ++i)
    for (Index j = 0; j < 64; ++j) strip.emplace_back(i, j);
  CHECK(d.leftover == GridSet2D::from_cells(Scale(k), strip));
  for (const auto& c : d.cubes) {
    const Box q = c.box();
    REQUIRE(c.bands.size() == 1);
    const double v = c.bands[0].get_d();
    CHECK(v >= 0.125);
    CHECK(v == q.x0);
    CHECK(q.x1 < 4 * v);
  }
  bool overlap = false;
  const auto covered = tiles(d.cubes, k, overlap);
  CHECK_FALSE(overlap);
  CHECK(covered.size() + d.leftover.size() == 64u * 64u);

  std::stringstream s;
  write_decomposition(s, d);
  const auto back = read_decomposition(s);
  REQUIRE(back.cubes.size() == d.cubes.size());
  CHECK(back.cubes.back().bands == d.cubes.back().bands);
  CHECK(back.leftover == d.leftover);
}

TEST_CASE("bands: certificates sampled for x^2 + xy + y^2") {
  const poly::Poly2 p = P("x^2 + x*y + y^2");
  const std::vector<SmoothMap2> fs{SmoothMap2::polynomial(p.partial(poly::kX)),
                                   SmoothMap2::polynomial(p.partial(poly::kY)),
                                   SmoothMap2::polynomial(p.partial(poly::kX).partial(poly::kY)),
                                   SmoothMap2::polynomial(poly::mp_numerator(p))};
  const double w = 0.2;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  double prev = 2;
  for (int k = 8; k <= 10; ++k) {
    const auto d = band_partition(fs, w, GridSet2D::full(Scale(k)));
    const double floor_value = std::exp2(-w * k);
    for (const auto& c : d.cubes) {
      const Box q = c.box();
      REQUIRE(c.bands.size() == fs.size());
      for (std::size_t j = 0; j < fs.size(); ++j) {
        const double v = c.bands[j].get_d();
        CHECK(v >= floor_value);
        for (int s = 0; s < 50; ++s) {
          const double x = q.x0 + u(rng) * (q.x1 - q.x0), y = q.y0 + u(rng) * (q.y1 - q.y0);
          const double f = std::abs(fs[j].value(x, y));
          CHECK(v <= f);
          CHECK(f < 4 * v);
        }
      }
    }
    const double fraction = static_cast<double>(d.leftover.size()) / std::exp2(2 * k);
    CHECK(fraction < prev);
    prev = fraction;
  }
}

TEST_CASE("zero-set neighbourhoods") {
  const int k = 8;
  const Scale sc(k);
  const double delta = sc.delta();
  CHECK(zero_nbhd_covering(M("x - 3"), GridSet2D::full(sc), delta) == 0);
  // The delta-inflated cell (i, j) carries x - y in [i - j - 3, i - j + 3] delta,
  // so exactly the cells with |i - j| <= 3 count: 7 n - 12 of them.
  const auto diag = zero_nbhd_covering(M("x - y"), GridSet2D::full(sc), delta);
  CHECK(diag == 7 * (1u << k) - 12);

  const GridSet1D g = grid::gen_ap(0.5, 0, sc);
  CHECK(zero_nbhd_covering(M("x - y"), g, g, delta) == g.size());
  CHECK(zero_nbhd_covering(M("x - y"), GridSet2D::product(g, g), delta) == g.size());

  std::mt19937_64 rng(5);
  const SmoothMap2 phi = M("x^2 + y^2 - 1/2");
  std::vector<std::pair<Index, Index>> cells;
  for (int t = 0; t < 4000; ++t) cells.emplace_back(rng() % 256, rng() % 256);
  const GridSet2D a = GridSet2D::from_cells(sc, cells);
  std::vector<std::pair<Index, Index>> half(cells.begin(), cells.begin() + 2000);
  const GridSet2D b = GridSet2D::from_cells(sc, half);
  std::uint64_t last = 0;
  for (double s : {delta, 2 * delta, 8 * delta, 0.1, 1.0}) {
    const auto n = zero_nbhd_covering(phi, a, s);
    CHECK(n >= last);
    CHECK(zero_nbhd_covering(phi, b, s) <= n);
    last = n;
  }
  CHECK(last == a.size());
  CHECK_THROWS_AS(zero_nbhd_covering(phi, a, delta / 2), DomainError);
}

TEST_CASE("select_level") {
  const int k = 10;
  const Scale sc(k);
  const double s = sc.delta();
  const auto full = select_level(M("x"), GridSet2D::full(sc), s, 0.25, 1.0);
  CHECK(full.candidates.size() == 32);
  for (auto c : full.counts) {
    CHECK(c % 1024 == 0);
    CHECK(c >= full.count);
  }
  CHECK(full.count == *std::min_element(full.counts.begin(), full.counts.end()));
  CHECK(full.t >= 0.25);
  CHECK(full.t <= 0.5);

  const GridSet2D teeth = GridSet2D::product(grid::gen_ap(0.5, 0, sc), GridSet1D::full(sc));
  CHECK(select_level(M("x"), teeth, s, 0.25, 1.0).count == 0);

  const auto xy = select_level(M("x*y"), GridSet2D::full(Scale(8)), 1.0 / 256, 0.25, 1.0);
  double mean = 0;
  for (auto c : xy.counts) mean += static_cast<double>(c) / xy.counts.size();
  CHECK(static_cast<double>(xy.count) <= mean);

  CHECK_THROWS_AS(select_level(M("x"), GridSet2D::full(sc), s, 0.75, 1.0), DomainError);
  CHECK_THROWS_AS(select_level(M("x"), GridSet2D::full(sc), 0.5, 0.25, 1.0), DomainError);
}

TEST_CASE("curvature: linear webs and special forms vanish") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const auto l1 = SmoothMap2::linear_projection(0.1), l2 = SmoothMap2::linear_projection(1.2),
             l3 = SmoothMap2::linear_projection(2.3);
  for (int t = 0; t < 100; ++t) CHECK(std::abs(blaschke_curvature(l1, l2, l3, u(rng), u(rng))) < 1e-8);
  const auto X = M("x"), Y = M("y");
  CHECK(std::abs(blaschke_curvature(X, Y, M("x*y"), 0.5, 1.0 / 3)) < 1e-12);
  for (int t = 0; t < 50; ++t)
    CHECK(std::abs(blaschke_curvature(X, Y, M("x*y + x + y"), u(rng), u(rng))) < 1e-8);
  CHECK_THROWS_AS(blaschke_curvature(l1, l1, l3, 0.5, 0.5), DomainError);
}

TEST_CASE("curvature: chart formula against Newton evaluation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  const auto X = M("x"), Y = M("y");
  int compared = 0;
  for (const char* s : {"x^2 + x*y + y^2", "x + y + (x^2 + y^2)^2", "x*y^2 + 2*x^3 + y"}) {
    const auto f = M(s);
    bool nonzero = false;
    for (int t = 0; t < 40; ++t) {
      const double x = u(rng), y = u(rng);
      if (std::abs(f.derivative(1, 0, x, y)) < 0.1 || std::abs(f.derivative(0, 1, x, y)) < 0.1) continue;
      const double chart = blaschke_curvature(X, Y, f, x, y);
      const double newton = blaschke_curvature_newton(X, Y, f, x, y);
      CHECK_MESSAGE(rel_close(chart, newton, 1e-3), s << " at " << x << "," << y);
      nonzero |= std::abs(chart) > 1e-6;
      ++compared;
    }
    CHECK(nonzero);
  }
  CHECK(compared > 60);
}

TEST_CASE("curvature: pinned distances against the vector-field oracle") {
  const std::array<std::pair<double, double>, 3> pins{{{0, 0}, {1, 0}, {0, 1}}};
  const auto f1 = SmoothMap2::pinned_distance(0, 0), f2 = SmoothMap2::pinned_distance(1, 0),
             f3 = SmoothMap2::pinned_distance(0, 1);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.3, 0.7);
  int large = 0;
  for (int t = 0; t < 30; ++t) {
    const double x = u(rng), y = u(rng);
    const double c = blaschke_curvature(f1, f2, f3, x, y);
    CHECK_MESSAGE(rel_close(c, oracle::pinned_curvature(pins, x, y), 1e-3), x << "," << y);
    large += std::abs(c) > 1e-3;
  }
  CHECK(large > 20);
  // Close to the line through (1, 0) and (0, 1) the curvature blows up.
  const double near = blaschke_curvature(f1, f2, f3, 0.4945, 0.5037);
  CHECK(rel_close(near, oracle::pinned_curvature(pins, 0.4945, 0.5037), 1e-6));
  CHECK(std::abs(near) > 1e4);
  // Away from it, the Newton chart with numerical differences agrees.
  for (int t = 0; t < 10; ++t) {
    const double x = u(rng) * 0.3, y = u(rng) * 0.3;
    CHECK(rel_close(blaschke_curvature(f1, f2, f3, x, y), blaschke_curvature_newton(f1, f2, f3, x, y), 1e-4));
  }
}

TEST_CASE("extract_product") {
  const SmoothMap2 p = M("x^2 + x*y + y^2");
  const GridSet1D a0 = grid::gen_cantor({0, 2}, 4, 4), b0 = grid::gen_ap(0.5, 0, Scale(8));
  const auto exact = extract_product(GridSet2D::product(a0, b0), p);
  CHECK(exact.a == a0);
  CHECK(exact.b == b0);
  CHECK(exact.report.intersection == a0.size() * b0.size());

  const auto full = extract_product(GridSet2D::full(Scale(6)), p);
  CHECK(full.a == GridSet1D::full(Scale(6)));
  CHECK(full.b == GridSet1D::full(Scale(6)));

  std::mt19937_64 rng(9);
  for (int run = 0; run < 10; ++run) {
    const int k = 8;
    const GridSet1D a = oracle::random_set(rng, k, 40), b = oracle::random_set(rng, k, 40);
    auto cells = GridSet2D::product(a, b).cells();
    std::set<Index> noise_rows;
    const std::size_t noise = cells.size() / 9;
    for (std::size_t t = 0; t < noise; ++t) {
      const Index i = rng() % 256, j = rng() % 256;
      cells.emplace_back(i, j);
      if (!b.contains(j)) noise_rows.insert(j);
    }
    const GridSet2D x = GridSet2D::from_cells(Scale(k), cells);
    const auto r = extract_product(x, p);
    CHECK(2 * r.report.intersection >= x.size());
    CHECK(r.report.x_cells == x.size());
    std::size_t kept_noise_rows = 0;
    for (Index j : noise_rows) kept_noise_rows += r.b.contains(j);
    CHECK(kept_noise_rows == 0);
  }
  CHECK_THROWS_AS(extract_product(GridSet2D::from_keys(Scale(4), {}), p), DomainError);
}
