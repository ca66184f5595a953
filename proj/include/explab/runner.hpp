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
#include <utility>
#include <vector>

#include "explab/fit.hpp"
#include "explab/gridset.hpp"
#include "explab/scenario.hpp"
#include "explab/smooth_map.hpp"

namespace explab::harness {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Outcome {
  Expectation expectation;
  double measured = 0;
  bool present = false;
  bool passed = false;
};

struct Report {
  std::string scenario;
  std::string kind;
  std::string description;
  std::vector<std::pair<std::string, std::string>> params;
  Table scales;
  Table box_scales;
  std::vector<std::pair<std::string, grid::ExponentFit>> fits;
  std::vector<std::pair<std::string, double>> metrics;  // fit slopes are mirrored here
  std::vector<Outcome> outcomes;
  bool passed = true;
  std::optional<double> seconds;  // only when timing was requested

  /// NaN when absent.
  double metric(const std::string& name) const;
};

/// Runs every measurement the scenario asks for, then evaluates its
/// expectations. Failed expectations are reported, not thrown; invalid
/// parameters throw DomainError.
Report run_scenario(const Scenario& s, bool timing = false);

/// The scenario's sets at scale k: S = offset + stretch * G_k as delta-cells,
/// G_k being the ap / cantor / random generator.
grid::GridSet1D scenario_set(const Scenario& s, int k);

/// ';'-separated "pin:x,y", "linear:theta" or "poly:<expr>" items.
std::vector<geom::SmoothMap2> parse_map_list(const std::string& text);

std::vector<Scenario> builtin_scenarios();
/// Throws DomainError for unknown names.
Scenario builtin_scenario(const std::string& name);
/// The text form of a builtin, as parse_scenario accepts it.
std::string builtin_scenario_text(const std::string& name);

}  // namespace explab::harness
