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

#include "explab/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "explab/errors.hpp"

namespace explab::grid {

namespace {

// Guards floor/ceil of exact powers of two against libm rounding.
constexpr double kSlack = 1e-12;

}  // namespace

GridSet1D gen_ap(double alpha, double eta, Scale scale) {
  if (!(alpha > 0.0) || !(eta >= 0.0) || alpha + eta > 1.0 + kSlack)
    throw DomainError("gen_ap needs alpha > 0, eta >= 0 and alpha + eta <= 1");
  const int k = scale.k();
  const double count = std::floor(std::exp2(k * alpha) * (1.0 + kSlack));
  const double spacing = std::ceil(std::exp2(k * (1.0 - alpha - eta)) * (1.0 - kSlack));
  const auto n = static_cast<std::uint64_t>(count);
  const auto step = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(spacing));
  if (n == 0) throw DomainError("gen_ap: delta^-alpha < 1");
  if ((n - 1) * step >= scale.cells()) throw DomainError("gen_ap: progression does not fit in [0, 1)");
  std::vector<Index> cells(n);
  for (std::uint64_t j = 0; j < n; ++j) cells[j] = static_cast<Index>(j * step);
  return GridSet1D(scale, std::move(cells));
}

GridSet1D gen_cantor(const std::vector<unsigned>& pattern, unsigned base, unsigned depth) {
  if (base < 2 || (base & (base - 1)) != 0) throw DomainError("gen_cantor: base must be a power of two >= 2");
  if (pattern.empty()) throw DomainError("gen_cantor: empty digit pattern");
  if (depth == 0) throw DomainError("gen_cantor: depth must be positive");
  std::vector<unsigned> digits = pattern;
  std::sort(digits.begin(), digits.end());
  digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
  if (digits.back() >= base) throw DomainError("gen_cantor: digit outside [0, base)");
  const int bits = std::countr_zero(base);
  const long k = static_cast<long>(bits) * depth;
  if (k > Scale::kMax) throw DomainError("gen_cantor: depth * log2(base) exceeds 30");
  std::vector<Index> cells{0};
  for (unsigned level = 0; level < depth; ++level) {
    std::vector<Index> next;
    next.reserve(cells.size() * digits.size());
    for (Index c : cells)
      for (unsigned d : digits) next.push_back((c << bits) | d);
    cells = std::move(next);
  }
  return GridSet1D(Scale(static_cast<int>(k)), std::move(cells));
}

}  // namespace explab::grid
