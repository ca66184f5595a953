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

#include "explab/runner.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "explab/errors.hpp"
#include "explab/extract.hpp"
#include "explab/generators.hpp"
#include "explab/measure.hpp"
#include "explab/parser.hpp"
#include "explab/smooth_map.hpp"
#include "explab/symbolic.hpp"

namespace explab::harness {

using grid::GridSet1D;
using grid::GridSet2D;
using grid::Index;
using grid::Scale;

double Report::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

GridSet1D base_set(const Scenario& s, int k) {
  if (s.gen == "ap") return grid::gen_ap(s.alpha, s.eta, Scale(k));
  if (s.gen == "cantor") {
    if (s.base < 2 || (s.base & (s.base - 1)) != 0) throw DomainError("cantor base must be a power of two");
    const int bits = std::countr_zero(s.base);
    const unsigned depth = static_cast<unsigned>((k + bits - 1) / bits);
    GridSet1D c = grid::gen_cantor(s.pattern, s.base, depth);
    return c.scale().k() == k ? c : c.coarsen(k);
  }
  // random: each cell kept with probability 2^(-k(1-alpha)).
  if (!(s.alpha > 0) || s.alpha > 1) throw DomainError("random sets need alpha in (0, 1]");
  std::mt19937_64 rng(s.seed * 1000003ULL + static_cast<std::uint64_t>(k));
  const double p = std::exp2(-k * (1.0 - s.alpha));
  std::vector<Index> cells;
  const Scale sc(k);
  for (std::uint64_t j = 0; j < sc.cells(); ++j)
    if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) cells.push_back(static_cast<Index>(j));
  return GridSet1D(sc, std::move(cells));
}

}  // namespace

GridSet1D scenario_set(const Scenario& s, int k) {
  GridSet1D g = base_set(s, k);
  if (s.offset == 0.0 && s.stretch == 1.0) return g;
  if (!(s.stretch > 0)) throw DomainError("stretch must be positive");
  const double d = std::ldexp(1.0, -k);
  const double src = std::ldexp(1.0, -g.scale().k());
  std::vector<Index> out;
  for (Index c : g.cells()) {
    const double lo = s.offset + s.stretch * c * src, hi = s.offset + s.stretch * (c + 1) * src;
    const auto first = static_cast<long long>(std::floor(lo / d));
    const auto last = static_cast<long long>(std::ceil(hi / d)) - 1;
    for (long long n = std::max(first, 0LL); n <= last; ++n) {
      if (n >= static_cast<long long>(Scale(k).cells())) break;
      out.push_back(static_cast<Index>(n));
    }
  }
  return GridSet1D::from_unsorted(Scale(k), std::move(out));
}

namespace {

struct Builder {
  Report r;
  void param(const std::string& k, const std::string& v) { r.params.emplace_back(k, v); }
  void metric(const std::string& k, double v) { r.metrics.emplace_back(k, v); }
  void fit(const std::string& name, const std::vector<int>& ks, const std::vector<double>& vals) {
    if (ks.size() < 3) return;
    grid::ExponentFit f = grid::fit_counts(ks, vals);
    metric(name, f.slope);
    r.fits.emplace_back(name, std::move(f));
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<int> segment_ks(const std::vector<int>& ks, const Segment& seg) {
  std::vector<int> out;
  for (int k : ks)
    if (k >= seg.lo && k <= seg.hi) out.push_back(k);
  return out;
}

std::vector<double> pick(const std::vector<int>& ks, const std::vector<double>& vals, const std::vector<int>& sub) {
  std::vector<double> out;
  for (int k : sub) out.push_back(vals[static_cast<std::size_t>(std::find(ks.begin(), ks.end(), k) - ks.begin())]);
  return out;
}

GridSet1D cells_in(const GridSet1D& s, int level, Index a) {
  const int shift = s.scale().k() - level;
  std::vector<Index> out;
  for (Index j : s.cells())
    if ((j >> shift) == a) out.push_back(j);
  return GridSet1D(s.scale(), std::move(out));
}

struct CsResult {
  double min_ratio = std::numeric_limits<double>::infinity();
  unsigned checks = 0;
};

// Cauchy-Schwarz lower bound on every dyadic square up to cs_levels where
// the gradient floor is positive.
void cs_check(const poly::Poly2& p, const GridSet1D& a, const GridSet1D& b, int levels, std::uint64_t full_energy,
              std::uint64_t full_image, CsResult& out) {
  const geom::SmoothMap2 map = geom::SmoothMap2::polynomial(p);
  for (int level = 0; level <= std::min(levels, a.scale().k()); ++level) {
    for (Index i = 0; i < (Index{1} << level); ++i) {
      const GridSet1D aq = level == 0 ? a : cells_in(a, level, i);
      if (aq.empty()) continue;
      for (Index j = 0; j < (Index{1} << level); ++j) {
        const GridSet1D bq = level == 0 ? b : cells_in(b, level, j);
        if (bq.empty()) continue;
        const double c = std::min(1.0, map.gradient_floor(geom::Box::dyadic(level, i, j)));
        if (!(c > 0)) continue;
        const std::uint64_t e = level == 0 ? full_energy : grid::energy_count(p, aq, bq);
        const std::uint64_t img = level == 0 ? full_image : grid::image_set(p, aq, bq).cells.size();
        const double cover = static_cast<double>(aq.size()) * static_cast<double>(bq.size());
        const double bound = grid::cs_growth_bound(cover, static_cast<double>(e), c) / 64.0;
        out.min_ratio = std::min(out.min_ratio, static_cast<double>(img) / bound);
        ++out.checks;
      }
    }
  }
}

void run_product(const Scenario& s, Builder& b) {
  const poly::Poly2 p = poly::parse_poly2(s.poly);
  std::optional<poly::Poly2> ref;
  if (!s.ref_poly.empty()) ref = poly::parse_poly2(s.ref_poly);
  b.param("poly", poly::to_string(p));
  if (ref) b.param("ref_poly", poly::to_string(*ref));
  b.metric("expander", poly::classify_special_form(p).verdict == poly::Verdict::Expander ? 1 : 0);

  Table& t = b.r.scales;
  t.columns = {"k", "cells", "image"};
  if (s.energy) t.columns.insert(t.columns.end(), {"energy", "cs_ratio"});
  if (ref) {
    t.columns.push_back("ref_image");
    if (s.energy) t.columns.push_back("ref_energy");
  }
  std::vector<double> images, energies, ref_images, ref_energies;
  CsResult cs;
  double energy_ratio_min = std::numeric_limits<double>::infinity();
  double eta_a = 0;
  for (int k : s.scales) {
    const GridSet1D a = scenario_set(s, k);
    if (a.empty()) throw DomainError("scenario set is empty at k=" + std::to_string(k));
    std::vector<double> row{double(k), double(a.size())};
    const std::uint64_t img = grid::image_set(p, a, a).cells.size();
    images.push_back(double(img));
    row.push_back(double(img));
    std::uint64_t e = 0;
    if (s.energy) {
      e = grid::energy_count(p, a, a);
      energies.push_back(double(e));
      CsResult local;
      cs_check(p, a, a, s.cs_levels, e, img, local);
      cs.checks += local.checks;
      cs.min_ratio = std::min(cs.min_ratio, local.min_ratio);
      row.push_back(double(e));
      row.push_back(local.checks ? local.min_ratio : std::numeric_limits<double>::quiet_NaN());
    }
    if (ref) {
      const std::uint64_t rimg = grid::image_set(*ref, a, a).cells.size();
      ref_images.push_back(double(rimg));
      row.push_back(double(rimg));
      if (s.energy) {
        const std::uint64_t re = grid::energy_count(*ref, a, a);
        ref_energies.push_back(double(re));
        row.push_back(double(re));
        energy_ratio_min = std::min(energy_ratio_min, double(re) / double(e));
      }
    }
    if (k == s.scales.back() && s.alpha > 0 && s.alpha < 1) {
      eta_a = grid::nonconcentration_exponent(a, s.alpha, s.alpha).eta;
    }
    t.rows.push_back(std::move(row));
  }
  b.fit("image_exponent", s.scales, images);
  if (s.energy) b.fit("energy_exponent", s.scales, energies);
  if (ref) {
    b.fit("ref_image_exponent", s.scales, ref_images);
    if (s.energy) b.fit("ref_energy_exponent", s.scales, ref_energies);
  }
  for (std::size_t n = 0; n < s.segments.size(); ++n) {
    const auto sub = segment_ks(s.scales, s.segments[n]);
    const std::string sfx = "_seg" + std::to_string(n);
    b.fit("image_exponent" + sfx, sub, pick(s.scales, images, sub));
    if (ref) b.fit("ref_image_exponent" + sfx, sub, pick(s.scales, ref_images, sub));
  }
  if (!s.energy_box_scales.empty()) {
    Table& bt = b.r.box_scales;
    bt.columns = {"k", "box_cells", "box_energy"};
    std::vector<double> box_energies;
    for (int k : s.energy_box_scales) {
      const GridSet1D a = scenario_set(s, k);
      // [0, factor * delta^power], compared exactly on dyadic left endpoints.
      const Rational edge = rational_from_double(s.box_factor * std::exp2(-k * s.box_power));
      const GridSet1D ab = a.restrict_left_endpoints(Rational(0), edge);
      if (ab.empty()) throw DomainError("energy box is empty at k=" + std::to_string(k));
      const std::uint64_t e = grid::energy_count(p, ab, ab);
      box_energies.push_back(double(e));
      bt.rows.push_back({double(k), double(ab.size()), double(e)});
    }
    b.fit("box_energy_exponent", s.energy_box_scales, box_energies);
  }
  if (ref && s.energy) b.metric("energy_ref_ratio_min", energy_ratio_min);
  if (s.energy) {
    b.metric("cs_checks", cs.checks);
    b.metric("cs_min_ratio", cs.checks ? cs.min_ratio : std::numeric_limits<double>::quiet_NaN());
    b.metric("cs_all_ok", cs.checks == 0 || cs.min_ratio >= 1.0 ? 1 : 0);
  }
  b.metric("eta_a", eta_a);
}

}  // namespace

std::vector<geom::SmoothMap2> parse_map_list(const std::string& text) {
  std::vector<geom::SmoothMap2> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ';')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw DomainError("map '" + item + "' needs a kind prefix");
    const std::string kind = item.substr(0, colon), arg = item.substr(colon + 1);
    if (kind == "pin") {
      const auto comma = arg.find(',');
      if (comma == std::string::npos) throw DomainError("pin needs x,y");
      out.push_back(geom::SmoothMap2::pinned_distance(parse_real(arg.substr(0, comma)), parse_real(arg.substr(comma + 1))));
    } else if (kind == "linear") {
      out.push_back(geom::SmoothMap2::linear_projection(parse_real(arg)));
    } else if (kind == "poly") {
      out.push_back(geom::SmoothMap2::polynomial(poly::parse_poly2(arg)));
    } else {
      throw DomainError("unknown map kind '" + kind + "'");
    }
  }
  return out;
}

namespace {

std::vector<geom::SmoothMap2> parse_maps(const std::string& text) {
  auto out = parse_map_list(text);
  if (out.size() != 3) throw DomainError("projection scenarios need exactly three maps");
  return out;
}

GridSet2D build_x(const Scenario& s, const std::vector<geom::SmoothMap2>& f, const GridSet1D& base, int k) {
  const Scale sc(k);
  const double d = sc.delta();
  const auto lo_i = static_cast<Index>(std::max(0.0, std::floor(s.domain[0] / d)));
  const auto hi_i = static_cast<Index>(std::min(double(sc.cells()), std::ceil(s.domain[1] / d)));
  const auto lo_j = static_cast<Index>(std::max(0.0, std::floor(s.domain[2] / d)));
  const auto hi_j = static_cast<Index>(std::min(double(sc.cells()), std::ceil(s.domain[3] / d)));
  // Some base cell meets the enclosure of the map over the cell.
  auto meets_base = [&](const geom::SmoothMap2& m, const geom::Box& box) {
    const poly::IntervalD e = m.enclose(box);
    const double lo = std::max(e.lo, 0.0), hi = std::min(e.hi, 1.0 - d);
    if (lo > hi) return false;
    const auto first = static_cast<Index>(std::floor(lo / d)), last = static_cast<Index>(std::floor(hi / d));
    auto it = std::lower_bound(base.cells().begin(), base.cells().end(), first);
    return it != base.cells().end() && *it <= last;
  };
  std::vector<std::pair<Index, Index>> cells;
  for (Index i = lo_i; i < hi_i; ++i) {
    for (Index j = lo_j; j < hi_j; ++j) {
      const double cx = (i + 0.5) * d, cy = (j + 0.5) * d;
      if (cx < s.domain[0] || cx > s.domain[1] || cy < s.domain[2] || cy > s.domain[3]) continue;
      const bool keep = s.construction == "product" ? base.contains(i) && base.contains(j)
                                                    : meets_base(f[0], geom::Box::dyadic(k, i, j)) &&
                                                          meets_base(f[1], geom::Box::dyadic(k, i, j));
      if (keep) cells.emplace_back(i, j);
    }
  }
  return GridSet2D::from_cells(sc, cells);
}

void run_projection(const Scenario& s, Builder& b) {
  const auto f = parse_maps(s.maps);
  for (int n = 0; n < 3; ++n) b.param("map" + std::to_string(n + 1), f[n].describe());
  b.param("construction", s.construction);
  Table& t = b.r.scales;
  t.columns = {"k", "cells", "eta_x", "image_1", "image_2", "image_3", "margin", "energy_3", "cs_ratio"};
  std::vector<double> im[3], margins;
  const geom::Box dom{s.domain[0], s.domain[1], s.domain[2], s.domain[3]};
  const double c = std::min(1.0, f[2].gradient_floor(dom));
  CsResult cs;
  double eta_max = 0, proj_excess = -std::numeric_limits<double>::infinity();
  for (int k : s.scales) {
    const GridSet1D base = scenario_set(s, k);
    const GridSet2D x = build_x(s, f, base, k);
    if (x.empty()) throw DomainError("constructed X is empty at k=" + std::to_string(k));
    const grid::NonConcentration nc = grid::nonconcentration_exponent(x, s.alpha, 2 * s.alpha);
    eta_max = std::max(eta_max, nc.eta);
    std::vector<double> row{double(k), double(x.size()), nc.eta};
    std::uint64_t img[3];
    for (int n = 0; n < 3; ++n) {
      img[n] = geom::map_image_cells(f[n], x);
      im[n].push_back(double(img[n]));
      row.push_back(double(img[n]));
    }
    for (int n = 0; n < 2; ++n) proj_excess = std::max(proj_excess, std::log2(double(img[n])) / k - s.alpha);
    const double margin = std::log2(double(img[2])) / k - s.alpha;
    margins.push_back(margin);
    row.push_back(margin);
    const std::uint64_t e3 = grid::count_intersecting_pairs(geom::map_ranges(f[2], x));
    row.push_back(double(e3));
    double ratio = std::numeric_limits<double>::quiet_NaN();
    if (c > 0) {
      ratio = double(img[2]) / (grid::cs_growth_bound(double(x.size()), double(e3), c) / 64.0);
      cs.min_ratio = std::min(cs.min_ratio, ratio);
      ++cs.checks;
    }
    row.push_back(ratio);
    t.rows.push_back(std::move(row));
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int n = 0; n < 3; ++n) {
    b.fit("image_exponent_" + std::to_string(n + 1), s.scales, im[n]);
    best = std::max(best, b.r.metric("image_exponent_" + std::to_string(n + 1)));
  }
  b.metric("max_image_exponent", best);
  b.metric("margin_min", *std::min_element(margins.begin(), margins.end()));
  bool nondecreasing = true;
  for (std::size_t n = 1; n < margins.size(); ++n) nondecreasing = nondecreasing && margins[n] >= margins[n - 1];
  b.metric("margin_nondecreasing", nondecreasing ? 1 : 0);
  b.metric("eta_x_max", eta_max);
  b.metric("projection_excess_12", proj_excess);
  b.metric("cs_checks", cs.checks);
  b.metric("cs_min_ratio", cs.checks ? cs.min_ratio : std::numeric_limits<double>::quiet_NaN());
  b.metric("cs_all_ok", cs.checks == 0 || cs.min_ratio >= 1.0 ? 1 : 0);
}

}  // namespace

Report run_scenario(const Scenario& s, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  if (s.scales.empty()) throw DomainError("scenario has no scales");
  Builder b;
  b.r.scenario = s.name;
  b.r.kind = s.kind;
  b.r.description = s.description;
  b.param("gen", s.gen);
  b.param("alpha", fmt(s.alpha));
  if (s.gen == "ap") b.param("eta", fmt(s.eta));
  if (s.gen != "ap") b.param("seed", std::to_string(s.seed));
  if (s.kind == "product")
    run_product(s, b);
  else
    run_projection(s, b);
  for (const Expectation& e : s.expectations) {
    Outcome o{e, b.r.metric(e.metric), false, false};
    o.present = !std::isnan(o.measured);
    o.passed = o.present && e.check(o.measured);
    b.r.passed = b.r.passed && o.passed;
    b.r.outcomes.push_back(o);
  }
  if (timing)
    b.r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return std::move(b.r);
}

}  // namespace explab::harness
