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

#include "explab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "explab/errors.hpp"
#include "explab/parallel.hpp"

namespace explab::grid {

using poly::Interval;
using poly::IntervalD;
using poly::Poly2;

std::uint64_t covering_number(const GridSet1D& s, int kc) {
  if (kc < 1 || kc > s.scale().k()) throw DomainError("covering_number: need 1 <= k' <= k");
  return s.coarsen(kc).size();
}

std::uint64_t covering_number(const GridSet2D& s, int kc) {
  if (kc < 1 || kc > s.scale().k()) throw DomainError("covering_number: need 1 <= k' <= k");
  return s.coarsen(kc).size();
}

namespace {

void consider(NonConcentration& best, bool& have, int k, int level, double kappa, double base,
              std::uint64_t count, Index i, Index j) {
  const double eta = (std::log2(static_cast<double>(count)) + level * kappa) / k - base;
  if (!have || eta > best.raw) {
    best.raw = eta;
    best.level = level;
    best.index = i;
    best.index_y = j;
    best.count = count;
    have = true;
  }
}

void finish(NonConcentration& r) {
  r.floored = r.raw <= 0.0;
  r.eta = std::max(r.raw, 0.0);
}

void check_exponents(double kappa, double base) {
  if (!(kappa > 0.0) || kappa > 1.0) throw DomainError("nonconcentration: kappa must be in (0, 1]");
  if (!(base > 0.0)) throw DomainError("nonconcentration: alpha must be positive");
}

}  // namespace

NonConcentration nonconcentration_exponent(const GridSet1D& s, double kappa, double alpha) {
  if (s.empty()) throw DomainError("nonconcentration: empty set");
  check_exponents(kappa, alpha);
  if (alpha >= 1.0) throw DomainError("nonconcentration: alpha must be in (0, 1)");
  const int k = s.scale().k();
  NonConcentration best;
  bool have = false;
  for (int level = 0; level <= k; ++level) {
    const int shift = k - level;
    const auto& c = s.cells();
    for (std::size_t n = 0; n < c.size();) {
      const Index parent = c[n] >> shift;
      std::size_t m = n;
      while (m < c.size() && (c[m] >> shift) == parent) ++m;
      consider(best, have, k, level, kappa, alpha, m - n, parent, 0);
      n = m;
    }
  }
  finish(best);
  return best;
}

NonConcentration nonconcentration_exponent(const GridSet2D& s, double kappa, double base) {
  if (s.empty()) throw DomainError("nonconcentration: empty set");
  check_exponents(kappa, base);
  const int k = s.scale().k();
  NonConcentration best;
  bool have = false;
  for (int level = 0; level <= k; ++level) {
    const int shift = 2 * (k - level);
    const auto& keys = s.keys();
    for (std::size_t n = 0; n < keys.size();) {
      const Key parent = keys[n] >> shift;
      std::size_t m = n;
      while (m < keys.size() && (keys[m] >> shift) == parent) ++m;
      auto [i, j] = morton_decode(parent);
      consider(best, have, k, level, kappa, base, m - n, i, j);
      n = m;
    }
  }
  finish(best);
  return best;
}

std::vector<Interval> pair_ranges(const Poly2& p, const GridSet1D& a, const GridSet1D& b) {
  if (a.scale() != b.scale()) throw DomainError("scale mismatch");
  const Scale s = a.scale();
  const unsigned dx = p.max_exponent(poly::kX);
  const unsigned dy = p.max_exponent(poly::kY);
  std::vector<poly::PowerTable> ys(b.size());
  parallel_for(b.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t n = lo; n < hi; ++n) {
      const Index j = b.cells()[n];
      ys[n] = poly::PowerTable(Interval(cell_lo(j, s), cell_hi(j, s)), dy);
    }
  });
  std::vector<Interval> out(a.size() * b.size());
  parallel_for(a.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t n = lo; n < hi; ++n) {
      const Index i = a.cells()[n];
      const poly::PowerTable xs(Interval(cell_lo(i, s), cell_hi(i, s)), dx);
      for (std::size_t m = 0; m < b.size(); ++m) out[n * b.size() + m] = poly::interval_range(p, xs, ys[m]);
    }
  });
  return out;
}

namespace {

using Span = std::pair<std::int64_t, std::int64_t>;

std::uint64_t union_size(std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end());
  std::uint64_t total = 0;
  bool open = false;
  Span cur{0, 0};
  for (const Span& sp : spans) {
    if (open && sp.first <= cur.second + 1) {
      cur.second = std::max(cur.second, sp.second);
      continue;
    }
    if (open) total += static_cast<std::uint64_t>(cur.second - cur.first + 1);
    cur = sp;
    open = true;
  }
  if (open) total += static_cast<std::uint64_t>(cur.second - cur.first + 1);
  return total;
}

std::int64_t floor_scaled(const Rational& v, int k) {
  Rational t = v;
  mpz_mul_2exp(t.get_num_mpz_t(), t.get_num_mpz_t(), static_cast<mp_bitcnt_t>(k));
  t.canonicalize();
  BigInt f = floor_of(t);
  if (!f.fits_slong_p()) throw DomainError("value too large for the cell grid");
  return f.get_si();
}

std::int64_t floor_scaled(double v, int k) {
  const double t = std::floor(std::ldexp(v, k));
  if (!(std::fabs(t) < 9.0e18)) throw DomainError("value too large for the cell grid");
  return static_cast<std::int64_t>(t);
}

}  // namespace

std::uint64_t cells_meeting(const std::vector<Interval>& ranges, Scale s) {
  std::vector<Span> spans(ranges.size());
  for (std::size_t n = 0; n < ranges.size(); ++n)
    spans[n] = {floor_scaled(ranges[n].lo, s.k()), floor_scaled(ranges[n].hi, s.k())};
  return union_size(std::move(spans));
}

std::uint64_t cells_meeting(const std::vector<IntervalD>& ranges, Scale s) {
  std::vector<Span> spans(ranges.size());
  for (std::size_t n = 0; n < ranges.size(); ++n)
    spans[n] = {floor_scaled(ranges[n].lo, s.k()), floor_scaled(ranges[n].hi, s.k())};
  return union_size(std::move(spans));
}

ImageSet image_set(const Poly2& p, const GridSet1D& a, const GridSet1D& b) {
  if (a.scale() != b.scale()) throw DomainError("scale mismatch");
  const int k = a.scale().k();
  const Interval whole = poly::interval_range(p, Interval(0, 1), Interval(0, 1));
  int m = 0;
  const Rational span = whole.width();
  for (Rational reach(1); reach < span && m <= Scale::kMax; reach *= 2) ++m;
  if (k + m > Scale::kMax) throw DomainError("image_set: output scale exceeds 2^-30; lower k");
  const Scale out_scale(k + m);
  const std::int64_t last = static_cast<std::int64_t>(out_scale.cells()) - 1;
  const std::vector<Interval> ranges = pair_ranges(p, a, b);
  std::vector<Span> spans(ranges.size());
  for (std::size_t n = 0; n < ranges.size(); ++n) {
    const std::int64_t lo = floor_scaled(ranges[n].lo - whole.lo, k);
    const std::int64_t hi = floor_scaled(ranges[n].hi - whole.lo, k);
    spans[n] = {std::clamp<std::int64_t>(lo, 0, last), std::clamp<std::int64_t>(hi, 0, last)};
  }
  std::sort(spans.begin(), spans.end());
  std::vector<Index> cells;
  for (const Span& sp : spans) {
    std::int64_t from = sp.first;
    if (!cells.empty()) from = std::max<std::int64_t>(from, static_cast<std::int64_t>(cells.back()) + 1);
    for (std::int64_t c = from; c <= sp.second; ++c) cells.push_back(static_cast<Index>(c));
  }
  return ImageSet{GridSet1D(out_scale, std::move(cells)), whole.lo, m};
}

ImageSet sum_set(const GridSet1D& a, const GridSet1D& b) {
  return image_set(Poly2::variable(poly::kX) + Poly2::variable(poly::kY), a, b);
}

ImageSet product_set(const GridSet1D& a, const GridSet1D& b) {
  return image_set(Poly2::variable(poly::kX) * Poly2::variable(poly::kY), a, b);
}

namespace {

template <class I>
std::uint64_t count_pairs_impl(const std::vector<I>& ranges) {
  using T = std::decay_t<decltype(ranges[0].lo)>;
  std::vector<T> los(ranges.size());
  for (std::size_t n = 0; n < ranges.size(); ++n) los[n] = ranges[n].lo;
  std::sort(los.begin(), los.end());
  // Ordered pairs (p, q) with q entirely to the right of p.
  std::uint64_t separated = 0;
  for (const I& r : ranges)
    separated += static_cast<std::uint64_t>(los.end() - std::upper_bound(los.begin(), los.end(), r.hi));
  const std::uint64_t n = ranges.size();
  return n * n - 2 * separated;
}

}  // namespace

std::uint64_t count_intersecting_pairs(const std::vector<Interval>& ranges) { return count_pairs_impl(ranges); }
std::uint64_t count_intersecting_pairs(const std::vector<IntervalD>& ranges) { return count_pairs_impl(ranges); }

std::uint64_t energy_count(const Poly2& p, const GridSet1D& a, const GridSet1D& b,
                           const std::optional<Rational>& hf_min) {
  if (a.scale() != b.scale()) throw DomainError("scale mismatch");
  const std::vector<Interval> ranges = pair_ranges(p, a, b);
  if (!hf_min) return count_intersecting_pairs(ranges);
  if (*hf_min < 0) throw DomainError("energy_count: hf_min must be >= 0");

  // H_F on (S,T,S',T') = G(S,T) Pxy(S',T') - G(S',T') Pxy(S,T), G = Px Py.
  const Poly2 pxy = p.partial(poly::kX).partial(poly::kY);
  const Poly2 g = p.partial(poly::kX) * p.partial(poly::kY);
  const std::vector<Interval> g_r = pair_ranges(g, a, b);
  const std::vector<Interval> pxy_r = pair_ranges(pxy, a, b);
  const std::size_t n = ranges.size();
  std::vector<IntervalD> gd(n), pd(n);
  for (std::size_t t = 0; t < n; ++t) {
    gd[t] = IntervalD::from(g_r[t]);
    pd[t] = IntervalD::from(pxy_r[t]);
  }
  const double threshold = to_double(*hf_min);
  auto keep = [&](std::size_t u, std::size_t v) {
    const IntervalD h = gd[u] * pd[v] + IntervalD{-1.0, -1.0} * (gd[v] * pd[u]);
    return !(h.magnitude() < threshold);
  };

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
    if (ranges[u].lo != ranges[v].lo) return ranges[u].lo < ranges[v].lo;
    return u < v;
  });
  std::vector<std::uint64_t> partial(n, 0);
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      const std::size_t u = order[r];
      std::uint64_t c = keep(u, u) ? 1 : 0;
      for (std::size_t t = r + 1; t < n && ranges[order[t]].lo <= ranges[u].hi; ++t)
        if (keep(u, order[t])) c += 2;
      partial[r] = c;
    }
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

double cs_growth_bound(double cover, double energy, double c) {
  if (!(energy > 0.0)) throw DomainError("cs_growth_bound: zero energy");
  if (!(c > 0.0) || c > 1.0) throw DomainError("cs_growth_bound: c must be in (0, 1]");
  if (energy < cover) throw DomainError("cs_growth_bound: energy below cover (diagonal quadruples missing)");
  return c * cover * cover / energy;
}

}  // namespace explab::grid
