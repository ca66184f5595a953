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

#include <vector>

#include "explab/gridset.hpp"

namespace explab::grid {

/// floor(delta^-alpha) cells j * s, j = 0 .. N-1, with spacing
/// s = ceil(delta^(alpha+eta) 2^k) cells. Requires 0 < alpha, 0 <= eta,
/// alpha + eta <= 1.
GridSet1D gen_ap(double alpha, double eta, Scale scale);

/// Depth-d set of base-b expansions whose digits all lie in pattern. b must
/// be a power of two so every level sits on the dyadic grid; k = d log2 b.
GridSet1D gen_cantor(const std::vector<unsigned>& pattern, unsigned base, unsigned depth);

}  // namespace explab::grid
