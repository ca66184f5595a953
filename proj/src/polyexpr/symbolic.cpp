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

#include "explab/symbolic.hpp"

namespace explab::poly {

Poly2 mp_numerator(const Poly2& p) {
  const Poly2 px = p.partial(kX);
  const Poly2 py = p.partial(kY);
  const Poly2 pxx = px.partial(kX);
  const Poly2 pxy = px.partial(kY);
  const Poly2 pyy = py.partial(kY);
  const Poly2 pxxy = pxx.partial(kY);
  const Poly2 pxyy = pxy.partial(kY);
  return py * py * (px * pxxy - pxx * pxy) - px * px * (py * pxyy - pxy * pyy);
}

Classification classify_special_form(const Poly2& p) {
  const Poly2 px = p.partial(kX);
  if (px.is_zero()) return {Verdict::SpecialForm, Reason::PxIdenticallyZero, std::nullopt};
  const Poly2 py = p.partial(kY);
  if (py.is_zero()) return {Verdict::SpecialForm, Reason::PyIdenticallyZero, std::nullopt};
  Poly2 m = mp_numerator(p);
  if (m.is_zero()) {
    const bool separable = px.partial(kY).is_zero();
    return {Verdict::SpecialForm,
            separable ? Reason::PxyIdenticallyZeroAndMPZero : Reason::MPIdenticallyZero, std::nullopt};
  }
  return {Verdict::Expander, Reason::MPNonzero, std::move(m)};
}

const char* to_string(Verdict v) { return v == Verdict::SpecialForm ? "SpecialForm" : "Expander"; }

const char* to_string(Reason r) {
  switch (r) {
    case Reason::PxIdenticallyZero: return "PxIdenticallyZero";
    case Reason::PyIdenticallyZero: return "PyIdenticallyZero";
    case Reason::PxyIdenticallyZeroAndMPZero: return "PxyIdenticallyZeroAndMPZero";
    case Reason::MPIdenticallyZero: return "MPIdenticallyZero";
    case Reason::MPNonzero: return "MPNonzero";
  }
  return "?";
}

Poly4 hf_poly(const Poly2& p) {
  const Poly2 px = p.partial(kX);
  const Poly2 py = p.partial(kY);
  const Poly2 pxy = px.partial(kY);
  const Poly2 grad_product = px * py;
  const Poly4 at_xy = embed(grad_product, kX4, kY4);
  const Poly4 at_xpyp = embed(grad_product, kXp4, kYp4);
  return at_xy * embed(pxy, kXp4, kYp4) - at_xpyp * embed(pxy, kX4, kY4);
}

Poly4 hf_general(const Poly4& f) {
  const Poly4 fx = f.partial(kX4);
  const Poly4 fxp = f.partial(kXp4);
  const Poly4 fy = f.partial(kY4);
  const Poly4 fyp = f.partial(kYp4);
  return fx * fyp * fxp.partial(kY4) - fx * fy * fxp.partial(kYp4) - fxp * fyp * fx.partial(kY4) +
         fxp * fy * fx.partial(kYp4);
}

}  // namespace explab::poly
