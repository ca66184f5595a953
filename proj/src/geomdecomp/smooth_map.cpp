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

#include "explab/smooth_map.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "explab/errors.hpp"

namespace explab::geom {

using poly::Interval;
using poly::IntervalD;
using poly::Poly2;

double Box::half_diagonal() const { return 0.5 * std::hypot(x1 - x0, y1 - y0); }

Box Box::dyadic(int level, std::uint32_t i, std::uint32_t j) {
  const double side = std::ldexp(1.0, -level);
  return {i * side, (i + 1) * side, j * side, (j + 1) * side};
}

class SmoothMap2::Impl {
 public:
  virtual ~Impl() = default;
  virtual double value(double x, double y) const = 0;
  virtual double derivative(unsigned a, unsigned b, double x, double y) const = 0;
  virtual IntervalD enclose(const Box& box) const = 0;
  virtual double gradient_floor(const Box& box) const = 0;
  virtual const Poly2* polynomial() const { return nullptr; }
  virtual std::string describe() const = 0;
};

namespace {

// c +- h, padded for the rounding in computing c and h.
IntervalD around(double c, double h) {
  const double pad = 4e-16 * (std::fabs(c) + h);
  return {std::nextafter(c - h - pad, -INFINITY), std::nextafter(c + h + pad, INFINITY)};
}

double shrink(double v) { return v <= 0 ? 0.0 : std::nextafter(v, 0.0) * (1.0 - 1e-15); }

std::array<Interval, 2> exact_box(const Box& b) {
  return {Interval(rational_from_double(b.x0), rational_from_double(b.x1)),
          Interval(rational_from_double(b.y0), rational_from_double(b.y1))};
}

class PolynomialMap final : public SmoothMap2::Impl {
 public:
  explicit PolynomialMap(const Poly2& p) : p_(p) {
    for (unsigned a = 0; a <= 3; ++a)
      for (unsigned b = 0; a + b <= 3; ++b) partials_[a][b] = p.partial(poly::kX, a).partial(poly::kY, b);
  }
  double value(double x, double y) const override { return p_.evaluate(std::array<double, 2>{x, y}); }
  double derivative(unsigned a, unsigned b, double x, double y) const override {
    return partials_[a][b].evaluate(std::array<double, 2>{x, y});
  }
  IntervalD enclose(const Box& box) const override {
    return IntervalD::from(poly::interval_range<2>(p_, exact_box(box)));
  }
  double gradient_floor(const Box& box) const override {
    const auto eb = exact_box(box);
    const double fx = IntervalD::from(poly::interval_range<2>(partials_[1][0], eb)).mignitude();
    const double fy = IntervalD::from(poly::interval_range<2>(partials_[0][1], eb)).mignitude();
    return shrink(std::min(fx, fy));
  }
  const Poly2* polynomial() const override { return &p_; }
  std::string describe() const override { return "poly:" + poly::to_string(p_); }

 private:
  Poly2 p_;
  std::array<std::array<Poly2, 4>, 4> partials_;
};

class PinnedDistance final : public SmoothMap2::Impl {
 public:
  PinnedDistance(double px, double py) : px_(px), py_(py) {}
  double value(double x, double y) const override {
    const double r = std::hypot(x - px_, y - py_);
    if (r == 0.0) throw DomainError("pinned distance evaluated at its center");
    return r;
  }
  double derivative(unsigned a, unsigned b, double x, double y) const override {
    const double u = x - px_, v = y - py_;
    const double r = std::hypot(u, v);
    if (r == 0.0) throw DomainError("pinned distance is not differentiable at its center");
    const double r3 = r * r * r, r5 = r3 * r * r;
    switch (a * 4 + b) {
      case 0: return r;
      case 4: return u / r;
      case 1: return v / r;
      case 8: return v * v / r3;
      case 5: return -u * v / r3;
      case 2: return u * u / r3;
      case 12: return -3 * u * v * v / r5;
      case 9: return v * (2 * u * u - v * v) / r5;
      case 6: return u * (2 * v * v - u * u) / r5;
      case 3: return -3 * u * u * v / r5;
      default: throw DomainError("derivative order above 3");
    }
  }
  IntervalD enclose(const Box& box) const override {
    // 1-Lipschitz: f(center) +- half diagonal. The box may be centred on the pin.
    const double c = std::hypot(box.cx() - px_, box.cy() - py_);
    const double h = box.half_diagonal();
    IntervalD r = around(c, h);
    r.lo = std::max(r.lo, 0.0);
    return r;
  }
  double gradient_floor(const Box& box) const override {
    auto mig = [](double lo, double hi) { return lo > 0 ? lo : (hi < 0 ? -hi : 0.0); };
    const double u0 = box.x0 - px_, u1 = box.x1 - px_, v0 = box.y0 - py_, v1 = box.y1 - py_;
    const double rmax = std::hypot(std::max(std::fabs(u0), std::fabs(u1)), std::max(std::fabs(v0), std::fabs(v1)));
    if (rmax == 0.0) return 0.0;
    return shrink(std::min(mig(u0, u1), mig(v0, v1)) / std::nextafter(rmax, INFINITY));
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "pin:" << px_ << ',' << py_;
    return os.str();
  }

 private:
  double px_, py_;
};

class LinearProjection final : public SmoothMap2::Impl {
 public:
  explicit LinearProjection(double theta) : theta_(theta), c_(std::cos(theta)), s_(std::sin(theta)) {}
  double value(double x, double y) const override { return x * c_ + y * s_; }
  double derivative(unsigned a, unsigned b, double x, double y) const override {
    if (a + b > 3) throw DomainError("derivative order above 3");
    if (a == 0 && b == 0) return value(x, y);
    if (a == 1 && b == 0) return c_;
    if (a == 0 && b == 1) return s_;
    return 0.0;
  }
  IntervalD enclose(const Box& box) const override {
    const double c = value(box.cx(), box.cy());
    const double h = std::fabs(c_) * 0.5 * (box.x1 - box.x0) + std::fabs(s_) * 0.5 * (box.y1 - box.y0);
    return around(c, h);
  }
  double gradient_floor(const Box&) const override { return shrink(std::min(std::fabs(c_), std::fabs(s_))); }
  std::string describe() const override {
    std::ostringstream os;
    os << "linear:" << theta_;
    return os.str();
  }

 private:
  double theta_, c_, s_;
};

}  // namespace

SmoothMap2 SmoothMap2::polynomial(const Poly2& p) { return SmoothMap2(std::make_shared<PolynomialMap>(p)); }

SmoothMap2 SmoothMap2::pinned_distance(double px, double py) {
  return SmoothMap2(std::make_shared<PinnedDistance>(px, py));
}

SmoothMap2 SmoothMap2::linear_projection(double theta) {
  return SmoothMap2(std::make_shared<LinearProjection>(theta));
}

double SmoothMap2::value(double x, double y) const { return impl_->value(x, y); }

double SmoothMap2::derivative(unsigned a, unsigned b, double x, double y) const {
  if (a + b > 3) throw DomainError("derivative order above 3");
  return impl_->derivative(a, b, x, y);
}

Box SmoothMap2::domain() const { return Box{}; }
IntervalD SmoothMap2::enclose(const Box& box) const { return impl_->enclose(box); }
double SmoothMap2::gradient_floor(const Box& box) const { return impl_->gradient_floor(box); }
const Poly2* SmoothMap2::as_polynomial() const { return impl_->polynomial(); }
std::string SmoothMap2::describe() const { return impl_->describe(); }

}  // namespace explab::geom
