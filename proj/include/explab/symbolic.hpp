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

#pragma once

#include <optional>
#include <string>

#include "explab/polynomial.hpp"

namespace explab::poly {

/// M_P = (P_y)^2 (P_x P_xxy - P_xx P_xy) - (P_x)^2 (P_y P_xyy - P_xy P_yy).
///
/// Wherever P_x P_y != 0 this equals (P_x P_y)^2 d_xy log(P_x / P_y), and
/// wherever P_xy != 0 it equals (P_xy)^2 K_P, so it stands in for K_P in all
/// zero tests and lower bounds.
Poly2 mp_numerator(const Poly2& p);

enum class Verdict { SpecialForm, Expander };

enum class Reason {
  PxIdenticallyZero,
  PyIdenticallyZero,
  PxyIdenticallyZeroAndMPZero,
  MPIdenticallyZero,
  MPNonzero,
};

struct Classification {
  Verdict verdict;
  Reason reason;
  std::optional<Poly2> witness;  // the nonzero M_P, present iff Expander
};

/// Decides h(a(x) + b(y)) versus expander by the exact identity test on M_P.
/// Constants and the zero polynomial report PxIdenticallyZero.
Classification classify_special_form(const Poly2& p);

const char* to_string(Verdict v);
const char* to_string(Reason r);

/// H_F for F(x, x', y, y') = P(x, y) - P(x', y'):
///   P_x P_y (x, y) * P_xy (x', y') - P_x P_y (x', y') * P_xy (x, y).
Poly4 hf_poly(const Poly2& p);

/// The general four-term bracket
///   F_x F_y' F_x'y - F_x F_y F_x'y' - F_x' F_y' F_xy + F_x' F_y F_xy'.
Poly4 hf_general(const Poly4& f);

}  // namespace explab::poly
