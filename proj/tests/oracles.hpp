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


// Independent reference computations used to freeze expected literals.
// Nothing here touches the library's own arithmetic.

#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace oracle {

/// Step density given as (segment end, density) pairs in plain doubles.
struct StepDensity {
  std::vector<std::pair<double, double>> segments;

  double at(double t) const {
    for (const auto& [end, density] : segments) {
      if (t < end) {
        return density;
      }
    }
    return segments.back().second;
  }
};

/// Midpoint rule over a fine uniform grid clipped to [x, y].
inline double integrate(const StepDensity& f, double x, double y, std::size_t cells = 1 << 20) {
  double h = 1.0 / static_cast<double>(cells);
  double total = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    double lo = std::max(x, i * h);
    double hi = std::min(y, (i + 1) * h);
    if (hi > lo) {
      total += f.at(0.5 * (lo + hi)) * (hi - lo);
    }
  }
  return total;
}

/// Smallest y with integrate(x, y) >= r, by bisection; NaN when unreachable.
inline double cut_by_bisection(const StepDensity& f, double x, double r, std::size_t cells = 1 << 14) {
  if (integrate(f, x, 1.0, cells) < r - 1e-12) {
    return std::nan("");
  }
  double lo = x;
  double hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (integrate(f, x, mid, cells) >= r) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

/// beta = 2^(6 / ln n) at n = 3^depth, in long double.
inline long double beta(unsigned depth) {
  return std::pow(2.0L, 6.0L / (static_cast<long double>(depth) * std::log(3.0L)));
}

/// beta^h (3/2 - beta/2)^q.
inline long double density(unsigned depth, unsigned h, unsigned q) {
  long double b = beta(depth);
  return std::pow(b, static_cast<long double>(h)) * std::pow(1.5L - b / 2.0L, static_cast<long double>(q));
}

/// f(n) for n = 3^k: beta^(ln n / 6) (3/2 - beta/2)^(k - ln n / 6).
inline long double f_of_n(long double k) {
  long double ln_n = k * std::log(3.0L);
  long double b = std::pow(2.0L, 6.0L / ln_n);
  return std::pow(b, ln_n / 6.0L) * std::pow(1.5L - b / 2.0L, k - ln_n / 6.0L);
}

}  // namespace oracle
