// Copyright 2026 The kbody-qfi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kbody/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kbody {

double evaluate_polynomial(std::span<const double> c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> real_cubic_roots(const std::array<double, 4>& c) {
  std::vector<double> roots;
  const double scale = std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]), std::abs(c[3])});
  if (scale == 0.0) return roots;

  if (std::abs(c[3]) <= 1e-14 * scale) {
    if (std::abs(c[2]) <= 1e-14 * scale) {
      if (c[1] != 0.0) roots.push_back(-c[0] / c[1]);
      return roots;
    }
    const double disc = c[1] * c[1] - 4.0 * c[2] * c[0];
    if (disc < 0.0) return roots;
    // citardauq form avoids cancellation
    const double q = -0.5 * (c[1] + std::copysign(std::sqrt(disc), c[1]));
    roots.push_back(q / c[2]);
    if (q != 0.0) roots.push_back(c[0] / q);
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  // x^3 + a x^2 + b x + d, then x = t - a/3 gives t^3 + p t + q.
  const double a = c[2] / c[3];
  const double b = c[1] / c[3];
  const double d = c[0] / c[3];
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
  const double shift = -a / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;

  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) + shift);
  } else if (p == 0.0) {
    roots.push_back(shift);
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift);
    }
  }

  // One Newton step per root to clean up rounding from the closed form.
  const std::array<double, 3> derivative{c[1], 2.0 * c[2], 3.0 * c[3]};
  for (double& x : roots) {
    const double f = evaluate_polynomial(c, x);
    const double df = evaluate_polynomial(derivative, x);
    if (df != 0.0) {
      const double refined = x - f / df;
      if (std::abs(evaluate_polynomial(c, refined)) <= std::abs(f)) x = refined;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

IntervalMaximum maximize_quartic(const std::array<double, 5>& c, double lo, double hi) {
  IntervalMaximum best{lo, evaluate_polynomial(c, lo)};
  auto consider = [&](double x) {
    const double v = evaluate_polynomial(c, x);
    const double tie = 1e-12 * std::max(1.0, std::abs(best.value));
    if (v > best.value + tie || (std::abs(v - best.value) <= tie && x > best.argmax)) best = {x, v};
  };
  consider(hi);
  for (double x : real_cubic_roots({c[1], 2.0 * c[2], 3.0 * c[3], 4.0 * c[4]})) {
    if (x >= lo && x <= hi) consider(x);
  }
  return best;
}

}  // namespace kbody
