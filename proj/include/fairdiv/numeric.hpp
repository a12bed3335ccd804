/*
 * Copyright (C) 2026 The fairdiv Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>
#include <string_view>

namespace fairdiv {

/// Exact rational scalar. Always kept canonical (lowest terms, positive
/// denominator).
using Rational = mpq_class;

/// Extended-precision real used by the value-tree family.
using Real = boost::multiprecision::cpp_bin_float_50;

/// Parses "p/q", "p" or a finite decimal such as "0.25" into a canonical
/// rational. Throws ArgumentError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator ("1", "0").
std::string to_string(const Rational& value);

/// Decimal rendering with `digits` significant digits.
std::string to_string(const Real& value, int digits = 30);

Real to_real(const Rational& value);

/// Exact rational equal to the binary floating value (no rounding).
Rational to_rational(const Real& value);

/// Canonical num/den.
inline Rational ratio(unsigned long num, unsigned long den) {
  Rational out(num, den);
  out.canonicalize();
  return out;
}

/// 3^exponent as an exact integer.
mpz_class pow3(unsigned exponent);

}  // namespace fairdiv
