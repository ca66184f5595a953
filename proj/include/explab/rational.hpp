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

#include <gmpxx.h>

#include <string>

namespace explab {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Prints "a" for integers and "a/b" otherwise.
std::string to_string(const Rational& q);

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double v);

/// Parses "a", "-a" or "a/b".
Rational parse_rational(const std::string& text);

BigInt floor_of(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace explab
