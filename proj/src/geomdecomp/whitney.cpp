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

#include <algorithm>
#include <sstream>

#include "explab/cubes.hpp"
#include "explab/errors.hpp"

namespace explab::geom {

namespace {

bool within_unit_square(const Box& b) { return b.x0 >= 0 && b.y0 >= 0 && b.x1 <= 1 && b.y1 <= 1; }

class EmptyRegion final : public Region {
 public:
  Membership classify(const Box&) const override { return Membership::Outside; }
  std::string describe() const override { return "empty"; }
};

class FullSquare final : public Region {
 public:
  Membership classify(const Box& b) const override {
    return within_unit_square(b) ? Membership::Inside : Membership::Touching;
  }
  std::string describe() const override { return "full"; }
};

class Punctured final : public Region {
 public:
  explicit Punctured(std::vector<std::pair<double, double>> pts) : pts_(std::move(pts)) {}
  Membership classify(const Box& b) const override {
    if (!within_unit_square(b)) return Membership::Touching;
    for (auto [x, y] : pts_)
      if (b.x0 <= x && x <= b.x1 && b.y0 <= y && y <= b.y1) return Membership::Touching;
    return Membership::Inside;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "punctured";
    for (auto [x, y] : pts_) os << ' ' << x << ',' << y;
    return os.str();
  }

 private:
  std::vector<std::pair<double, double>> pts_;
};

class PolynomialComplement final : public Region {
 public:
  explicit PolynomialComplement(poly::Poly2 p) : map_(SmoothMap2::polynomial(p)), zero_(p.is_zero()) {}
  Membership classify(const Box& b) const override {
    if (zero_) return Membership::Outside;
    const bool clear = !map_.enclose(b).contains(0.0);
    if (clear && within_unit_square(b)) return Membership::Inside;
    return Membership::Touching;
  }
  std::string describe() const override { return "complement " + map_.describe(); }

 private:
  SmoothMap2 map_;
  bool zero_;
};

void recurse(const Region& omega, int k_max, int level, grid::Index i, grid::Index j, std::vector<Cube>& out) {
  const Box q = Box::dyadic(level, i, j);
  switch (omega.classify(q)) {
    case Membership::Outside:
      return;
    case Membership::Inside: {
      const double half = 0.5 * (q.x1 - q.x0);
      const Box dilate = q.inflate(half);
      const bool inside = omega.classify(dilate) == Membership::Inside;
      out.push_back(Cube{level, i, j, inside ? CubeFlag::DilateInside : CubeFlag::None, {}});
      return;
    }
    case Membership::Touching:
      if (level == k_max) {
        out.push_back(Cube{level, i, j, CubeFlag::DepthLimit, {}});
        return;
      }
      for (grid::Index di = 0; di < 2; ++di)
        for (grid::Index dj = 0; dj < 2; ++dj) recurse(omega, k_max, level + 1, 2 * i + di, 2 * j + dj, out);
  }
}

}  // namespace

std::shared_ptr<const Region> Region::empty() { return std::make_shared<EmptyRegion>(); }
std::shared_ptr<const Region> Region::full_square() { return std::make_shared<FullSquare>(); }

std::shared_ptr<const Region> Region::punctured(std::vector<std::pair<double, double>> points) {
  return std::make_shared<Punctured>(std::move(points));
}

std::shared_ptr<const Region> Region::polynomial_complement(const poly::Poly2& p) {
  return std::make_shared<PolynomialComplement>(p);
}

CubeDecomposition whitney_decompose(const Region& omega, grid::Scale k_max) {
  CubeDecomposition d{{}, grid::GridSet2D::from_keys(k_max, {})};
  recurse(omega, k_max.k(), 0, 0, 0, d.cubes);
  return d;
}

}  // namespace explab::geom
