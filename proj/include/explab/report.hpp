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

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "explab/runner.hpp"

namespace explab::harness {

/// v rounded to `digits` significant digits; integers below 2^53 unchanged.
double round_significant(double v, int digits);
/// Shortest text for round_significant(v, digits); "nan"/"inf" spelled out.
std::string format_number(double v, int digits);

/// Floats rounded to `digits` significant digits. Non-finite values become null.
nlohmann::json to_json(const Report& r, int digits = 6);
void write_json(std::ostream& out, const Report& r, int digits = 6);
/// Header plus one row per scale.
void write_csv(std::ostream& out, const Report& r, int digits = 6);
/// Two columns: k and log2 of the named scale column.
void write_plot(std::ostream& out, const Report& r, const std::string& column, int digits = 6);
void write_text(std::ostream& out, const Report& r, int digits = 6);

}  // namespace explab::harness
