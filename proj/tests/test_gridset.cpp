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
#include <map>
#include <random>
#include <sstream>

#include "explab/errors.hpp"
#include "explab/fit.hpp"
#include "explab/generators.hpp"
#include "explab/measure.hpp"
#include "explab/parallel.hpp"
#include "explab/parser.hpp"
#include "oracles.hpp"

using namespace explab;
using namespace explab::grid;

namespace {

poly::Poly2 P(const char* s) { return poly::parse_poly2(s); }

// Runs of consecutive cells; the number of connected pieces of the union.
std::size_t clusters(const GridSet1D& s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i == 0 || s.cells()[i] != s.cells()[i - 1] + 1) ++n;
  return n;
}

// max over dyadic J of (log2 E(S ∩ J) + m kappa) / k - alpha, by direct counting.
double brute_eta(const GridSet1D& s, double kappa, double alpha) {
  const int k = s.scale().k();
  double best = -1e300;
  for (int m = 0; m <= k; ++m) {
    std::map<Index, double> count;
    for (Index j : s.cells()) count[j >> (k - m)] += 1;
    for (auto [J, c] : count) best = std::max(best, (std::log2(c) + m * kappa) / k - alpha);
  }
  return best;
}

}  // namespace

TEST_CASE("scale and cell geometry") {
  CHECK_THROWS_AS(Scale(0), DomainError);
  CHECK_THROWS_AS(Scale(31), DomainError);
  CHECK(Scale(30).cells() == (std::uint64_t{1} << 30));
  CHECK(Scale(3).delta_exact() == oracle::Q(1, 8));
  CHECK(cell_lo(3, Scale(3)) == oracle::Q(3, 8));
  CHECK(cell_hi(3, Scale(3)) == oracle::Q(1, 2));
  CHECK_THROWS_AS(GridSet1D(Scale(3), {2, 1}), DomainError);
  CHECK_THROWS_AS(GridSet1D(Scale(3), {1, 1}), DomainError);
  CHECK_THROWS_AS(GridSet1D(Scale(3), {8}), DomainError);
  CHECK(GridSet1D::from_unsorted(Scale(3), {5, 1, 5}).cells() == std::vector<Index>{1, 5});
}

TEST_CASE("covering_number: examples") {
  CHECK(covering_number(GridSet1D::full(Scale(10)), 10) == 1024);
  const int k = 9;
  CHECK(covering_number(GridSet1D(Scale(k), {0, (1u << k) - 1}), 1) == 2);
  CHECK(covering_number(gen_ap(0.5, 0.0, Scale(12)), 12) == 64);
  CHECK_THROWS_AS(covering_number(GridSet1D::full(Scale(4)), 5), DomainError);
  CHECK_THROWS_AS(covering_number(GridSet1D::full(Scale(4)), 0), DomainError);
}

TEST_CASE("covering_number: coarsening monotonicity") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 20; ++n) {
    const GridSet1D s = oracle::random_set(rng, 12, 1 + rng() % 300);
    for (int kc = 2; kc <= 12; ++kc) {
      const auto fine = covering_number(s, kc), coarse = covering_number(s, kc - 1);
      CHECK(coarse <= fine);
      CHECK(fine <= 2 * coarse);
    }
    std::vector<std::pair<Index, Index>> cells;
    for (int t = 0; t < 200; ++t) cells.emplace_back(rng() % 512, rng() % 512);
    const GridSet2D x = GridSet2D::from_cells(Scale(9), cells);
    for (int kc = 2; kc <= 9; ++kc) {
      const auto fine = covering_number(x, kc), coarse = covering_number(x, kc - 1);
      CHECK(coarse <= fine);
      CHECK(fine <= 4 * coarse);
    }
  }
}

TEST_CASE("nonconcentration_exponent") {
  const auto full = nonconcentration_exponent(GridSet1D::full(Scale(10)), 0.5, 0.5);
  CHECK(full.eta == doctest::Approx(0.5));
  CHECK_FALSE(full.floored);

  const auto one = nonconcentration_exponent(GridSet1D(Scale(10), {17}), 0.5, 0.5);
  CHECK(one.eta == 0.0);
  CHECK(one.floored);

  for (double eta0 : {0.0, 0.25}) {
    const int k = 12;
    const auto r = nonconcentration_exponent(gen_ap(0.5, eta0, Scale(k)), 0.5, 0.5);
    CHECK(r.eta <= eta0 + 2.0 / k);
  }

  std::mt19937_64 rng(8);
  for (int n = 0; n < 20; ++n) {
    const GridSet1D s = oracle::random_set(rng, 10, 1 + rng() % 200);
    const double kappa = 0.1 + 0.9 * (n % 7) / 6.0;
    const auto r = nonconcentration_exponent(s, kappa, 0.4);
    CHECK(r.raw == doctest::Approx(brute_eta(s, kappa, 0.4)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(nonconcentration_exponent(GridSet1D(Scale(4), {}), 0.5, 0.5), DomainError);
}

TEST_CASE("gen_ap") {
  const GridSet1D a = gen_ap(0.5, 0.0, Scale(8));
  REQUIRE(a.size() == 16);
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(a.cells()[j] == 16 * j);
  CHECK(gen_ap(1.0, 0.0, Scale(6)) == GridSet1D::full(Scale(6)));
  // delta^(alpha + eta) 2^k = 2^(8 - 6) = 4 cells apart.
  const GridSet1D b = gen_ap(0.5, 0.25, Scale(8));
  REQUIRE(b.size() == 16);
  for (std::size_t j = 0; j < b.size(); ++j) CHECK(b.cells()[j] == 4 * j);
  CHECK_THROWS_AS(gen_ap(0.8, 0.3, Scale(8)), DomainError);
  CHECK_THROWS_AS(gen_ap(0.0, 0.0, Scale(8)), DomainError);
}

TEST_CASE("gen_cantor") {
  const GridSet1D c = gen_cantor({0, 1}, 4, 5);
  CHECK(c.scale().k() == 10);
  CHECK(c.size() == 32);
  // Digits of every cell index in base 4 are 0 or 1.
  for (Index j : c.cells())
    for (Index v = j; v != 0; v /= 4) CHECK(v % 4 <= 1);
  CHECK(gen_cantor({0, 1, 2, 3, 4, 5, 6, 7}, 8, 3) == GridSet1D::full(Scale(9)));
  CHECK(gen_cantor({0}, 2, 7) == GridSet1D(Scale(7), {0}));
  CHECK_THROWS_AS(gen_cantor({0, 1}, 3, 4), DomainError);
  CHECK_THROWS_AS(gen_cantor({}, 4, 4), DomainError);
  CHECK_THROWS_AS(gen_cantor({4}, 4, 4), DomainError);
}

TEST_CASE("box_dim_fit and exponent_regression") {
  const auto full = box_dim_fit([](int k) { return GridSet1D::full(Scale(k)); }, {6, 8, 10, 12});
  CHECK(full.slope == doctest::Approx(1.0).epsilon(0.01));
  const auto cantor = box_dim_fit([](int k) { return gen_cantor({0, 1}, 4, k / 2); }, {6, 8, 10, 12});
  CHECK(std::abs(cantor.slope - 0.5) <= 0.03);
  CHECK_THROWS_AS(box_dim_fit([](int k) { return GridSet1D::full(Scale(k)); }, {6, 8}), DomainError);

  std::vector<std::pair<double, double>> exact, noisy, flat;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  for (int k = 8; k <= 16; ++k) {
    exact.emplace_back(k, k);
    noisy.emplace_back(k, std::log2(std::exp2(1.5 * k) * (1 + u(rng))));
    flat.emplace_back(k, std::log2(37.0));
  }
  const auto e = exponent_regression(exact);
  CHECK(e.slope == doctest::Approx(1.0));
  CHECK(e.residual == doctest::Approx(0.0));
  CHECK(std::abs(exponent_regression(noisy).slope - 1.5) <= 0.05);
  CHECK(std::abs(exponent_regression(flat).slope) <= 1e-12);
  CHECK_THROWS_AS(exponent_regression({{3, 1}}), DomainError);
  CHECK_THROWS_AS(exponent_regression({{3, 1}, {3, 2}}), DomainError);
  CHECK_THROWS_AS(fit_counts({1, 2}, {1, 0}), DomainError);
}

TEST_CASE("image_set: small sums and tie convention") {
  const int k = 10;
  const GridSet1D two(Scale(k), {0, 1u << (k - 1)});
  const ImageSet img = sum_set(two, two);
  // Closed ranges [0, 2d], [1/2, 1/2 + 2d], [1, 1 + 2d] each touch three
  // half-open cells; the pieces sit at 0, 1/2 and 1.
  CHECK(img.offset == 0);
  CHECK(img.extra_bits == 1);
  CHECK(img.cells.size() == 9);
  CHECK(clusters(img.cells) == 3);
  CHECK(img.cells.cells().front() == 0);
  CHECK(img.cells.cells()[3] == (1u << (k - 1)));
  CHECK(img.cells.cells()[6] == (1u << k));

  const GridSet1D zero(Scale(k), {0});
  const ImageSet z = sum_set(zero, zero);
  CHECK(z.cells.cells() == std::vector<Index>{0, 1, 2});

  CHECK_THROWS_AS(sum_set(zero, GridSet1D(Scale(k + 1), {0})), DomainError);
}

TEST_CASE("image_set: arithmetic progression sums") {
  const int k = 12;
  const GridSet1D a = gen_ap(0.5, 0.0, Scale(k));
  const ImageSet img = sum_set(a, a);
  // 2N - 1 distinct sums, each a closed interval of width 2 delta.
  CHECK(clusters(img.cells) == 2 * a.size() - 1);
  CHECK(clusters(img.cells) <= 2 * std::exp2(k * 0.5));
  CHECK(img.cells.size() == 3 * (2 * a.size() - 1));
}

TEST_CASE("image_set: sums and products grow on a Cantor set") {
  const GridSet1D a = gen_cantor({0, 1}, 4, 6);
  const double grown = static_cast<double>(sum_set(a, a).cells.size() + product_set(a, a).cells.size());
  CHECK(grown > std::pow(static_cast<double>(a.size()), 1.05));
}

TEST_CASE("image_set: soundness on sampled points") {
  std::mt19937_64 rng(12);
  for (const char* s : {"x^2 + x*y + y^2", "x + y + (x^2 + y^2)^2", "x*y - 3*x^3 + 1/2", "-x - y^2"}) {
    const poly::Poly2 p = P(s);
    const int k = 9;
    const GridSet1D a = oracle::random_set(rng, k, 40), b = oracle::random_set(rng, k, 40);
    const ImageSet img = image_set(p, a, b);
    for (int t = 0; t < 200; ++t) {
      const Index i = a.cells()[rng() % a.size()], j = b.cells()[rng() % b.size()];
      const Rational x = (i + oracle::Q(rng() % 1001, 1000)) / (1 << k);
      const Rational y = (j + oracle::Q(rng() % 1001, 1000)) / (1 << k);
      const Rational v = p.evaluate(std::array<Rational, 2>{x, y});
      const BigInt c = floor_of((v - img.offset) * (1 << k));
      REQUIRE(c >= 0);
      CHECK_MESSAGE(img.cells.contains(static_cast<Index>(c.get_ui())), s);
    }
  }
}

TEST_CASE("energy_count: two-point sums") {
  const int k = 8;
  const GridSet1D two(Scale(k), {0, 100});
  CHECK(energy_count(P("x + y"), two, two) == 6);
  CHECK(oracle::brute_energy(P("x + y"), two, two) == 6);
}

TEST_CASE("energy_count: matches brute-force quadruple enumeration") {
  std::mt19937_64 rng(21);
  for (int n = 0; n < 12; ++n) {
    const poly::Poly2 p = oracle::random_poly2(rng, 4, 5);
    const int k = 4 + n % 3;
    const GridSet1D a = oracle::random_set(rng, k, 1 + rng() % 12), b = oracle::random_set(rng, k, 1 + rng() % 12);
    const auto e = energy_count(p, a, b);
    CHECK(e == oracle::brute_energy(p, a, b));
    CHECK(e >= a.size() * b.size());
    CHECK((e - a.size() * b.size()) % 2 == 0);
  }
}

TEST_CASE("energy_count: filter and determinism") {
  const GridSet1D a = gen_cantor({0, 1}, 4, 4);
  const poly::Poly2 p = P("x^2 + x*y + y^2");
  const auto all = energy_count(p, a, a);
  std::uint64_t prev = all;
  for (Rational h : {Rational(0), oracle::Q(1, 100), oracle::Q(1, 10), Rational(1), Rational(100)}) {
    const auto f = energy_count(p, a, a, h);
    CHECK(f <= prev);
    prev = f;
  }
  CHECK(prev == 0);

  const GridSet1D big = gen_ap(0.5, 0.0, Scale(14));
  set_thread_limit(1);
  const auto one = energy_count(P("x + y + (x^2 + y^2)^2"), big, big);
  set_thread_limit(7);
  const auto seven = energy_count(P("x + y + (x^2 + y^2)^2"), big, big);
  set_thread_limit(0);
  CHECK(one == seven);
  CHECK_THROWS_AS(energy_count(p, a, GridSet1D::full(Scale(3))), DomainError);
}

TEST_CASE("energy_count: additive progression exponent") {
  std::vector<int> ks;
  std::vector<double> counts;
  for (int k = 10; k <= 14; ++k) {
    const GridSet1D a = gen_ap(0.5, 0.0, Scale(k));
    ks.push_back(k);
    counts.push_back(static_cast<double>(energy_count(P("x + y"), a, a)));
  }
  CHECK(std::abs(fit_counts(ks, counts).slope - 1.5) <= 0.15);
  // N = 64 points spaced evenly: (2 N^3 + N) / 3 colliding quadruples.
  CHECK(counts[2] == (2.0 * 64 * 64 * 64 + 64) / 3);
}

TEST_CASE("pair ranges, cells_meeting and intersecting pairs") {
  std::mt19937_64 rng(31);
  std::vector<poly::Interval> r;
  std::vector<poly::IntervalD> rd;
  for (int n = 0; n < 300; ++n) {
    const Rational lo = oracle::Q(static_cast<long>(rng() % 4000), 1024);
    const Rational hi = lo + oracle::Q(static_cast<long>(rng() % 20), 1024);
    r.emplace_back(lo, hi);
    rd.push_back(poly::IntervalD::from(r.back()));
  }
  std::uint64_t pairs = 0;
  for (const auto& u : r)
    for (const auto& v : r) pairs += u.intersects(v);
  CHECK(count_intersecting_pairs(r) == pairs);
  CHECK(count_intersecting_pairs(rd) == pairs);

  std::set<long> cells;
  for (const auto& u : r)
    for (long c = floor_of(u.lo * 1024).get_si(); c <= floor_of(u.hi * 1024).get_si(); ++c) cells.insert(c);
  CHECK(cells_meeting(r, Scale(10)) == cells.size());
  // Outward rounding may add the neighbour of an endpoint on a cell boundary.
  CHECK(cells_meeting(rd, Scale(10)) >= cells.size());
  CHECK(cells_meeting(rd, Scale(10)) <= cells.size() + 2 * r.size());

  const GridSet1D a(Scale(5), {1, 7}), b(Scale(5), {2});
  const auto pr = pair_ranges(P("x*y"), a, b);
  REQUIRE(pr.size() == 2);
  CHECK(pr[1].lo == oracle::Q(7 * 2, 1024));
  CHECK(pr[1].hi == oracle::Q(8 * 3, 1024));
}

TEST_CASE("cs_growth_bound") {
  CHECK(cs_growth_bound(16, 256, 1) == doctest::Approx(1.0));
  // 2^12 / 2^12.5 = 2^-0.5.
  CHECK(cs_growth_bound(64, std::exp2(12.5), 1) == doctest::Approx(std::sqrt(0.5)));
  CHECK(cs_growth_bound(64, 1000, 0.25) == doctest::Approx(0.25 * cs_growth_bound(64, 1000, 1)));
  CHECK_THROWS_AS(cs_growth_bound(16, 0, 1), DomainError);
  CHECK_THROWS_AS(cs_growth_bound(16, 8, 1), DomainError);
  CHECK_THROWS_AS(cs_growth_bound(16, 256, 0), DomainError);
  CHECK_THROWS_AS(cs_growth_bound(16, 256, 1.5), DomainError);
}

TEST_CASE("GridSet2D: keys, squares and projections") {
  std::mt19937_64 rng(41);
  for (int n = 0; n < 1000; ++n) {
    const Index i = rng() & 0x3fffffff, j = rng() & 0x3fffffff;
    CHECK(morton_decode(morton_encode(i, j)) == std::make_pair(i, j));
  }
  std::vector<std::pair<Index, Index>> cells;
  for (int t = 0; t < 500; ++t) cells.emplace_back(rng() % 128, rng() % 128);
  const GridSet2D x = GridSet2D::from_cells(Scale(7), cells);
  for (int m = 0; m <= 7; ++m) {
    const Index a = static_cast<Index>(rng() % (1u << m)), b = static_cast<Index>(rng() % (1u << m));
    std::size_t brute = 0;
    for (auto [i, j] : x.cells()) brute += (i >> (7 - m)) == a && (j >> (7 - m)) == b;
    CHECK(x.count_in_square(m, a, b) == brute);
  }
  std::set<Index> px;
  for (auto [i, j] : cells) px.insert(i);
  CHECK(x.project_x().cells() == std::vector<Index>(px.begin(), px.end()));
  const auto lex = x.cells();
  CHECK(std::is_sorted(lex.begin(), lex.end()));

  const GridSet1D a = gen_ap(0.5, 0.0, Scale(8)), b = gen_cantor({1, 2}, 4, 4);
  const GridSet2D prod = GridSet2D::product(a, b);
  CHECK(prod.size() == a.size() * b.size());
  CHECK(prod.project_x() == a);
  CHECK(prod.project_y() == b);
  CHECK(prod.intersect(GridSet2D::full(Scale(8))) == prod);
  CHECK(GridSet2D::full(Scale(4)).coarsen(2) == GridSet2D::full(Scale(2)));
}

TEST_CASE("gridset text format round-trips") {
  std::mt19937_64 rng(51);
  const GridSet1D a = oracle::random_set(rng, 11, 77);
  std::stringstream s1;
  write_gridset(s1, a);
  CHECK(s1.str().rfind("gridset1d k=11\n", 0) == 0);
  CHECK(read_gridset1d(s1) == a);

  std::vector<std::pair<Index, Index>> cells;
  for (int t = 0; t < 60; ++t) cells.emplace_back(rng() % 64, rng() % 64);
  const GridSet2D x = GridSet2D::from_cells(Scale(6), cells);
  std::stringstream s2;
  write_gridset(s2, x);
  CHECK(s2.str().rfind("gridset2d k=6\n", 0) == 0);
  CHECK(std::get<GridSet2D>(read_gridset(s2)) == x);

  std::istringstream bad1("gridset1d k=4\n3\n2\n"), bad2("gridset3d k=4\n"), bad3("gridset1d k=4\n16\n");
  CHECK_THROWS_AS(read_gridset(bad1), DomainError);
  CHECK_THROWS_AS(read_gridset(bad2), DomainError);
  CHECK_THROWS_AS(read_gridset(bad3), DomainError);
}
