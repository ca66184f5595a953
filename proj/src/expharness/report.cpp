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

#include "explab/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace explab::harness {

using nlohmann::json;

namespace {

bool is_exact_integer(double v) { return std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9007199254740992.0; }

json number(double v, int digits) {
  if (!std::isfinite(v)) return nullptr;
  if (is_exact_integer(v)) return static_cast<std::int64_t>(v);
  return round_significant(v, digits);
}

json fit_json(const grid::ExponentFit& f, int digits) {
  json pts = json::array();
  for (auto [k, v] : f.points) pts.push_back({number(k, digits), number(v, digits)});
  return {{"slope", number(f.slope, digits)},
          {"intercept", number(f.intercept, digits)},
          {"residual", number(f.residual, digits)},
          {"points", pts}};
}

json table_json(const Table& t, int digits) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json o = json::object();
    for (std::size_t n = 0; n < t.columns.size(); ++n) o[t.columns[n]] = number(row[n], digits);
    rows.push_back(o);
  }
  return rows;
}

}  // namespace

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || is_exact_integer(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  if (is_exact_integer(v)) {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
  } else {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  }
  return buf;
}

json to_json(const Report& r, int digits) {
  json j;
  j["schema"] = 1;
  j["scenario"] = r.scenario;
  j["kind"] = r.kind;
  j["description"] = r.description;
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["scales"] = table_json(r.scales, digits);
  if (!r.box_scales.rows.empty()) j["box_scales"] = table_json(r.box_scales, digits);
  json fits = json::object();
  for (const auto& [name, f] : r.fits) fits[name] = fit_json(f, digits);
  j["fits"] = fits;
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = number(v, digits);
  j["metrics"] = metrics;
  json outcomes = json::array();
  for (const Outcome& o : r.outcomes) {
    outcomes.push_back({{"metric", o.expectation.metric},
                        {"comparator", to_string(o.expectation.cmp)},
                        {"target", number(o.expectation.target, digits)},
                        {"tolerance", number(o.expectation.tolerance, digits)},
                        {"provenance", to_string(o.expectation.provenance)},
                        {"measured", o.present ? number(o.measured, digits) : json(nullptr)},
                        {"passed", o.passed}});
  }
  j["expectations"] = outcomes;
  j["passed"] = r.passed;
  if (r.seconds) j["seconds"] = number(*r.seconds, digits);
  return j;
}

void write_json(std::ostream& out, const Report& r, int digits) { out << to_json(r, digits).dump(2) << '\n'; }

void write_csv(std::ostream& out, const Report& r, int digits) {
  for (std::size_t n = 0; n < r.scales.columns.size(); ++n) out << (n ? "," : "") << r.scales.columns[n];
  out << '\n';
  for (const auto& row : r.scales.rows) {
    for (std::size_t n = 0; n < row.size(); ++n) out << (n ? "," : "") << format_number(row[n], digits);
    out << '\n';
  }
}

void write_plot(std::ostream& out, const Report& r, const std::string& column, int digits) {
  std::size_t col = r.scales.columns.size();
  for (std::size_t n = 0; n < r.scales.columns.size(); ++n)
    if (r.scales.columns[n] == column) col = n;
  if (col == r.scales.columns.size()) throw std::invalid_argument("report has no column '" + column + "'");
  out << "# k log2(" << column << ")\n";
  for (const auto& row : r.scales.rows)
    out << format_number(row[0], digits) << ' ' << format_number(std::log2(row[col]), digits) << '\n';
}

void write_text(std::ostream& out, const Report& r, int digits) {
  out << "scenario " << r.scenario << " (" << r.kind << ")\n";
  if (!r.description.empty()) out << "  " << r.description << '\n';
  for (const auto& [k, v] : r.params) out << "  " << k << " = " << v << '\n';
  out << '\n';
  write_csv(out, r, digits);
  if (!r.box_scales.rows.empty()) {
    out << '\n';
    for (std::size_t n = 0; n < r.box_scales.columns.size(); ++n) out << (n ? "," : "") << r.box_scales.columns[n];
    out << '\n';
    for (const auto& row : r.box_scales.rows) {
      for (std::size_t n = 0; n < row.size(); ++n) out << (n ? "," : "") << format_number(row[n], digits);
      out << '\n';
    }
  }
  out << '\n';
  for (const auto& [name, f] : r.fits)
    out << "fit " << name << ": slope " << format_number(f.slope, digits) << ", residual "
        << format_number(f.residual, digits) << '\n';
  for (const auto& [k, v] : r.metrics) out << "metric " << k << " = " << format_number(v, digits) << '\n';
  for (const Outcome& o : r.outcomes)
    out << (o.passed ? "PASS " : "FAIL ") << o.expectation.metric << ' ' << to_string(o.expectation.cmp) << ' '
        << format_number(o.expectation.target, digits) << " +- " << format_number(o.expectation.tolerance, digits)
        << " [" << to_string(o.expectation.provenance) << "] measured "
        << (o.present ? format_number(o.measured, digits) : std::string("missing")) << '\n';
  if (r.seconds) out << "seconds " << format_number(*r.seconds, digits) << '\n';
  out << (r.passed ? "all expectations passed" : "some expectations FAILED") << '\n';
}

}  // namespace explab::harness
