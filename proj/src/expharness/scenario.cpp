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

#include "explab/scenario.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "explab/gridset.hpp"
#include "explab/rational.hpp"

namespace explab::harness {

ScenarioError::ScenarioError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "scenario line " + std::to_string(line) + ": " + what : what), line_(line) {}

bool Expectation::check(double m) const {
  if (std::isnan(m)) return false;
  switch (cmp) {
    case Comparator::Approx: return std::fabs(m - target) <= tolerance;
    case Comparator::Ge: return m >= target - tolerance;
    case Comparator::Le: return m <= target + tolerance;
    case Comparator::Gt: return m > target + tolerance;
    case Comparator::Lt: return m < target - tolerance;
  }
  return false;
}

const char* to_string(Comparator c) {
  switch (c) {
    case Comparator::Approx: return "approx";
    case Comparator::Ge: return "ge";
    case Comparator::Le: return "le";
    case Comparator::Gt: return "gt";
    case Comparator::Lt: return "lt";
  }
  return "?";
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Paper: return "PAPER";
    case Provenance::Trivial: return "TRIVIAL";
    case Provenance::Derived: return "DERIVED";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

int parse_int(const std::string& t) {
  int v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) throw std::invalid_argument("not an integer: '" + t + "'");
  return v;
}

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

Comparator parse_cmp(const std::string& t) {
  if (t == "approx") return Comparator::Approx;
  if (t == "ge") return Comparator::Ge;
  if (t == "le") return Comparator::Le;
  if (t == "gt") return Comparator::Gt;
  if (t == "lt") return Comparator::Lt;
  throw std::invalid_argument("unknown comparator '" + t + "'");
}

Provenance parse_prov(const std::string& t) {
  if (t == "PAPER") return Provenance::Paper;
  if (t == "TRIVIAL") return Provenance::Trivial;
  if (t == "DERIVED") return Provenance::Derived;
  throw std::invalid_argument("provenance must be PAPER, TRIVIAL or DERIVED, got '" + t + "'");
}

bool parse_bool(const std::string& t) {
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  throw std::invalid_argument("not a boolean: '" + t + "'");
}

void apply(Scenario& s, const std::string& key, const std::string& value) {
  if (key == "name") {
    s.name = value;
  } else if (key == "description") {
    s.description = value;
  } else if (key == "kind") {
    if (value != "product" && value != "projection") throw std::invalid_argument("kind must be product or projection");
    s.kind = value;
  } else if (key == "poly") {
    s.poly = value;
  } else if (key == "ref_poly") {
    s.ref_poly = value;
  } else if (key == "energy") {
    s.energy = parse_bool(value);
  } else if (key == "energy_box_scales") {
    s.energy_box_scales = parse_scale_list(value);
  } else if (key == "box_factor") {
    s.box_factor = parse_real(value);
  } else if (key == "box_power") {
    s.box_power = parse_real(value);
  } else if (key == "segments") {
    s.segments.clear();
    for (const std::string& part : split(value, ';')) {
      auto ks = parse_scale_list(part);
      s.segments.push_back(Segment{ks.front(), ks.back()});
    }
  } else if (key == "cs_levels") {
    s.cs_levels = parse_int(value);
  } else if (key == "gen") {
    if (value != "ap" && value != "cantor" && value != "random")
      throw std::invalid_argument("gen must be ap, cantor or random");
    s.gen = value;
  } else if (key == "alpha") {
    s.alpha = parse_real(value);
  } else if (key == "eta") {
    s.eta = parse_real(value);
  } else if (key == "pattern") {
    s.pattern.clear();
    for (const std::string& d : split(value, ',')) s.pattern.push_back(static_cast<unsigned>(parse_int(d)));
  } else if (key == "base") {
    s.base = static_cast<unsigned>(parse_int(value));
  } else if (key == "offset") {
    s.offset = parse_real(value);
  } else if (key == "stretch") {
    s.stretch = parse_real(value);
  } else if (key == "scales") {
    s.scales = parse_scale_list(value);
  } else if (key == "seed") {
    s.seed = std::stoull(value);
  } else if (key == "maps") {
    s.maps = value;
  } else if (key == "domain") {
    auto parts = split(value, ',');
    if (parts.size() != 4) throw std::invalid_argument("domain needs x0,x1,y0,y1");
    for (int n = 0; n < 4; ++n) s.domain[n] = parse_real(parts[n]);
  } else if (key == "construction") {
    if (value != "preimage" && value != "product") throw std::invalid_argument("construction must be preimage or product");
    s.construction = value;
  } else if (key == "expect") {
    std::istringstream is(value);
    std::string metric, cmp, target, tol, prov, extra;
    if (!(is >> metric >> cmp >> target >> tol >> prov) || (is >> extra))
      throw std::invalid_argument("expect needs: <metric> <cmp> <target> <tolerance> <PAPER|TRIVIAL|DERIVED>");
    s.expectations.push_back(
        Expectation{metric, parse_cmp(cmp), parse_real(target), parse_real(tol), parse_prov(prov)});
  } else {
    throw std::invalid_argument("unknown key '" + key + "'");
  }
}

}  // namespace

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  if (t.find('/') != std::string::npos) return to_double(parse_rational(t));
  double v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size() || !std::isfinite(v))
    throw std::invalid_argument("not a number: '" + t + "'");
  return v;
}

std::vector<int> parse_scale_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& part : split(text, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(parse_int(part));
      continue;
    }
    std::string hi = part.substr(dash + 1);
    int step = 1;
    if (auto colon = hi.find(':'); colon != std::string::npos) {
      step = parse_int(hi.substr(colon + 1));
      hi = hi.substr(0, colon);
    }
    const int a = parse_int(part.substr(0, dash)), b = parse_int(hi);
    if (step <= 0 || b < a) throw std::invalid_argument("bad scale range '" + part + "'");
    for (int k = a; k <= b; k += step) out.push_back(k);
  }
  if (out.empty()) throw std::invalid_argument("empty scale list");
  for (int k : out)
    if (k < 1 || k > grid::Scale::kMax) throw std::invalid_argument("scale " + std::to_string(k) + " outside 1..30");
  return out;
}

Scenario parse_scenario(std::istream& in) {
  Scenario s;
  std::string raw;
  int line = 0;
  bool saw_schema = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ScenarioError("expected key=value", line);
    const std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
    if (!saw_schema) {
      if (key != "schema") throw ScenarioError("first entry must be schema=1", line);
      if (value != "1") throw ScenarioError("unsupported schema version '" + value + "'", line);
      saw_schema = true;
      continue;
    }
    try {
      apply(s, key, value);
    } catch (const std::exception& e) {
      throw ScenarioError(e.what(), line);
    }
  }
  if (!saw_schema) throw ScenarioError("missing schema=1", 0);
  if (s.name.empty()) throw ScenarioError("missing name", 0);
  if (s.kind == "product" && s.poly.empty()) throw ScenarioError("product scenarios need poly", 0);
  if (s.kind == "projection" && s.maps.empty()) throw ScenarioError("projection scenarios need maps", 0);
  return s;
}

Scenario parse_scenario_text(const std::string& text) {
  std::istringstream is(text);
  return parse_scenario(is);
}

namespace {

std::string join_scales(const std::vector<int>& ks) {
  std::string out;
  for (std::size_t n = 0; n < ks.size(); ++n) out += (n ? "," : "") + std::to_string(ks[n]);
  return out;
}

}  // namespace

void write_scenario(std::ostream& out, const Scenario& s) {
  out << "schema=1\n";
  out << "name=" << s.name << '\n';
  if (!s.description.empty()) out << "description=" << s.description << '\n';
  out << "kind=" << s.kind << '\n';
  if (!s.poly.empty()) out << "poly=" << s.poly << '\n';
  if (!s.ref_poly.empty()) out << "ref_poly=" << s.ref_poly << '\n';
  out << "energy=" << (s.energy ? 1 : 0) << '\n';
  if (!s.energy_box_scales.empty()) {
    out << "energy_box_scales=" << join_scales(s.energy_box_scales) << '\n';
    out << "box_factor=" << fmt(s.box_factor) << '\n';
    out << "box_power=" << fmt(s.box_power) << '\n';
  }
  if (!s.segments.empty()) {
    out << "segments=";
    for (std::size_t n = 0; n < s.segments.size(); ++n)
      out << (n ? ";" : "") << s.segments[n].lo << '-' << s.segments[n].hi;
    out << '\n';
  }
  out << "cs_levels=" << s.cs_levels << '\n';
  out << "gen=" << s.gen << '\n';
  out << "alpha=" << fmt(s.alpha) << '\n';
  out << "eta=" << fmt(s.eta) << '\n';
  out << "pattern=";
  for (std::size_t n = 0; n < s.pattern.size(); ++n) out << (n ? "," : "") << s.pattern[n];
  out << '\n';
  out << "base=" << s.base << '\n';
  out << "offset=" << fmt(s.offset) << '\n';
  out << "stretch=" << fmt(s.stretch) << '\n';
  out << "scales=" << join_scales(s.scales) << '\n';
  out << "seed=" << s.seed << '\n';
  if (!s.maps.empty()) out << "maps=" << s.maps << '\n';
  out << "domain=" << fmt(s.domain[0]) << ',' << fmt(s.domain[1]) << ',' << fmt(s.domain[2]) << ','
      << fmt(s.domain[3]) << '\n';
  out << "construction=" << s.construction << '\n';
  for (const Expectation& e : s.expectations)
    out << "expect=" << e.metric << ' ' << to_string(e.cmp) << ' ' << fmt(e.target) << ' ' << fmt(e.tolerance) << ' '
        << to_string(e.provenance) << '\n';
}

}  // namespace explab::harness
