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


#include "explab/errors.hpp"
#include "explab/runner.hpp"

namespace explab::harness {

namespace {

struct Builtin {
  const char* name;
  const char* text;
};

// Order is the listing order.
const Builtin kBuiltins[] = {
    {"special_form_collapse", R"(schema=1
name=special_form_collapse
description=x+y on arithmetic progressions: image ~ 2 delta^-alpha, energy ~ delta^-3alpha
kind=product
poly=x + y
gen=ap
alpha=1/2
eta=0
scales=10-14
expect=energy_exponent approx 1.5 0.15 PAPER
expect=image_exponent approx 0.5 0.1 PAPER
expect=expander approx 0 0 TRIVIAL
expect=cs_all_ok ge 1 0 DERIVED
)"},
    {"eps_alpha_cap", R"(schema=1
name=eps_alpha_cap
description=x+y+(x^2+y^2)^2 on progressions: image exponent stays below min(2 alpha, 1)
kind=product
poly=x + y + (x^2 + y^2)^2
gen=ap
alpha=1/2
eta=0
scales=10-14
expect=image_exponent le 1 0.15 PAPER
expect=expander approx 1 0 DERIVED
expect=cs_all_ok ge 1 0 DERIVED
)"},
    {"eta_depends_on_D", R"(schema=1
name=eta_depends_on_D
description=D=8 > 1/eta: the perturbation drops below delta and the image collapses to ~delta^-alpha
kind=product
poly=x + y + (x^2 + y^2)^4
gen=ap
alpha=1/2
eta=1/4
scales=10-14
expect=image_exponent approx 0.5 0.1 PAPER
expect=cs_all_ok ge 1 0 DERIVED
)"},
    {"eps_D_energy", R"(schema=1
name=eps_D_energy
description=energy on [0, delta^(1/D)/4]^4 grows like delta^(-3 alpha + 3/D); larger D gives larger energy
kind=product
poly=x + y + (x^2 + y^2)^2
ref_poly=x + y + (x^2 + y^2)^4
gen=ap
alpha=1/2
eta=0
scales=10-14
energy_box_scales=16-28:2
box_factor=1/4
box_power=1/4
expect=box_energy_exponent approx 0.75 0.15 PAPER
expect=energy_ref_ratio_min ge 1 0 PAPER
expect=cs_all_ok ge 1 0 DERIVED
)"},
    {"small_c_delta", R"(schema=1
name=small_c_delta
description=x+y+c(x^2+y^2)^2 with c=2^-6 looks like x+y until delta is small compared to c
kind=product
poly=x + y + 1/64*(x^2 + y^2)^2
ref_poly=x + y
gen=ap
alpha=1/2
eta=0
scales=4-15
segments=4-7;12-15
expect=image_exponent_seg0 approx 0.5 0.15 PAPER
expect=ref_image_exponent_seg0 approx 0.5 0.15 TRIVIAL
expect=image_exponent_seg1 gt 0.5 0.15 PAPER
expect=cs_all_ok ge 1 0 DERIVED
)"},
    {"three_projection", R"(schema=1
name=three_projection
description=X = preimage of X1 under phi1 intersect preimage of X2 under phi2 has small phi1, phi2 images; the third pinned distance image is larger
kind=projection
maps=pin:0,0;pin:1,0;pin:0,1
construction=preimage
domain=0.3,0.7,0.3,0.7
gen=cantor
pattern=0,1
base=4
offset=0.45
stretch=1/2
alpha=1/2
scales=8-10
expect=margin_min gt 0 0 DERIVED
expect=margin_nondecreasing ge 1 0 DERIVED
expect=projection_excess_12 le 0 0.05 DERIVED
expect=cs_all_ok ge 1 0 DERIVED
)"},
    {"pinned_distance", R"(schema=1
name=pinned_distance
description=product Cantor set in [0.3,0.7]^2; one of three non-collinear pinned distance sets grows
kind=projection
maps=pin:0,0;pin:1,0;pin:0,1
construction=product
domain=0.3,0.7,0.3,0.7
gen=cantor
pattern=1,2
base=4
alpha=1/2
scales=8-10
expect=max_image_exponent gt 0.5 0 DERIVED
expect=cs_all_ok ge 1 0 DERIVED
)"},
    {"expander_dimension", R"(schema=1
name=expander_dimension
description=x^2+xy+y^2 on the base-4 {0,1} Cantor set: image box dimension above 1/2
kind=product
poly=x^2 + x*y + y^2
gen=cantor
pattern=0,1
base=4
alpha=1/2
scales=10-14
expect=expander approx 1 0 DERIVED
expect=image_exponent gt 0.5 0 DERIVED
expect=cs_all_ok ge 1 0 DERIVED
)"},
};

}  // namespace

std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> out;
  for (const Builtin& b : kBuiltins) out.push_back(parse_scenario_text(b.text));
  return out;
}

std::string builtin_scenario_text(const std::string& name) {
  for (const Builtin& b : kBuiltins)
    if (name == b.name) return b.text;
  throw DomainError("unknown builtin scenario '" + name + "'");
}

Scenario builtin_scenario(const std::string& name) { return parse_scenario_text(builtin_scenario_text(name)); }

}  // namespace explab::harness
