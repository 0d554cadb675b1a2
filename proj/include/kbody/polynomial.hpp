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

#pragma once

#include <array>
#include <span>
#include <vector>

namespace kbody {

/// Real roots of c[0] + c[1] x + c[2] x^2 + c[3] x^3, ascending. Falls back to
/// the quadratic/linear case when leading coefficients vanish.
std::vector<double> real_cubic_roots(const std::array<double, 4>& c);

struct IntervalMaximum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Maximizes c[0] + ... + c[4] x^4 on [lo, hi] from the exact stationary points
/// of its cubic derivative plus the endpoints. Equal maxima (1e-12 relative)
/// resolve to the larger argument.
IntervalMaximum maximize_quartic(const std::array<double, 5>& c, double lo, double hi);

double evaluate_polynomial(std::span<const double> c, double x);

}  // namespace kbody
