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

#include "fairdiv/numeric.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw ArgumentError("malformed rational literal: '" + std::string(whole) + "'");
  }
  std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
  if (start == digits.size()) {
    throw ArgumentError("malformed rational literal: '" + std::string(whole) + "'");
  }
  for (std::size_t i = start; i < digits.size(); ++i) {
    if (digits[i] < '0' || digits[i] > '9') {
      throw ArgumentError("malformed rational literal: '" + std::string(whole) + "'");
    }
  }
  std::string text(digits[0] == '+' ? digits.substr(1) : digits);
  return mpz_class(text, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), text);
    mpz_class den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
      throw ArgumentError("zero denominator in '" + std::string(text) + "'");
    }
    Rational out(num, den);
    out.canonicalize();
    return out;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    if (int_part.empty() || int_part == "-" || int_part == "+") {
      int_part = "0";
    }
    mpz_class whole = parse_integer(int_part, text);
    mpz_class frac = frac_part.empty() ? mpz_class(0) : parse_integer(frac_part, text);
    if (!frac_part.empty() && (frac_part[0] == '-' || frac_part[0] == '+')) {
      throw ArgumentError("malformed rational literal: '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    Rational out(frac, scale);
    out.canonicalize();
    out = negative ? Rational(Rational(whole) - out) : Rational(Rational(whole) + out);
    return out;
  }
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_string(const Real& value, int digits) {
  return value.str(digits, std::ios_base::fmtflags(0));
}

Real to_real(const Rational& value) {
  // Both parts may exceed any native range; go through decimal-free big ints.
  Real num(value.get_num().get_str(10));
  Real den(value.get_den().get_str(10));
  return num / den;
}

Rational to_rational(const Real& value) {
  using boost::multiprecision::cpp_int;
  if (value == 0) {
    return Rational(0);
  }
  int exponent = 0;
  Real mantissa = boost::multiprecision::frexp(value, &exponent);
  constexpr int kBits = std::numeric_limits<Real>::digits;
  Real scaled = boost::multiprecision::ldexp(mantissa, kBits);
  cpp_int integral = scaled.convert_to<cpp_int>();
  Rational out(mpz_class(integral.str(), 10));
  int shift = exponent - kBits;
  if (shift >= 0) {
    out *= mpz_class(1) << shift;
  } else {
    out /= mpz_class(1) << (-shift);
  }
  out.canonicalize();
  return out;
}

mpz_class pow3(unsigned exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 3, exponent);
  return out;
}

}  // namespace fairdiv
