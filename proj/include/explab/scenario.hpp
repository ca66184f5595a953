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

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace explab::harness {

/// Malformed scenario text; carries the 1-based line number (0 if global).
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& what, int line);
  int line() const { return line_; }

 private:
  int line_;
};

enum class Comparator { Approx, Ge, Le, Gt, Lt };
enum class Provenance { Paper, Trivial, Derived };

/// metric <cmp> target with tolerance:
///   approx  |m - t| <= tol
///   ge, le  m >= t - tol,  m <= t + tol   (tol is slack)
///   gt, lt  m >  t + tol,  m <  t - tol   (tol is a required margin)
struct Expectation {
  std::string metric;
  Comparator cmp = Comparator::Approx;
  double target = 0;
  double tolerance = 0;
  Provenance provenance = Provenance::Derived;

  bool check(double measured) const;
};

struct Segment {
  int lo = 0;
  int hi = 0;
};

struct Scenario {
  std::string name;
  std::string description;
  std::string kind = "product";  // product | projection

  // product kind
  std::string poly;
  std::string ref_poly;
  bool energy = true;
  std::vector<int> energy_box_scales;
  double box_factor = 0.25;
  double box_power = 0.25;
  std::vector<Segment> segments;
  int cs_levels = 2;

  // sets
  std::string gen = "ap";  // ap | cantor | random
  double alpha = 0.5;
  double eta = 0.0;
  std::vector<unsigned> pattern{0, 1};
  unsigned base = 4;
  double offset = 0.0;
  double stretch = 1.0;
  std::vector<int> scales{10, 11, 12, 13, 14};
  std::uint64_t seed = 1;

  // projection kind
  std::string maps;  // "pin:0,0;pin:1,0;pin:0,1", "linear:<theta>", "poly:<expr>"
  double domain[4] = {0.3, 0.7, 0.3, 0.7};
  std::string construction = "preimage";  // preimage | product

  std::vector<Expectation> expectations;
};

/// key=value lines, '#' comments, "schema=1" required first. See docs/schema.md.
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_text(const std::string& text);
void write_scenario(std::ostream& out, const Scenario& s);

const char* to_string(Comparator c);
const char* to_string(Provenance p);

/// "10-14", "16-28:2" or "8,9,10".
std::vector<int> parse_scale_list(const std::string& text);
/// "1/2", "0.25", "-3".
double parse_real(const std::string& text);

}  // namespace explab::harness
