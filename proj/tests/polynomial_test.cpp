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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "kbody/polynomial.hpp"

using namespace kbody;
using doctest::Approx;

TEST_CASE("evaluate_polynomial uses ascending coefficients") {
  const std::vector<double> c{1.0, -2.0, 3.0};
  CHECK(evaluate_polynomial(c, 2.0) == 9.0);
  CHECK(evaluate_polynomial(c, 0.0) == 1.0);
  CHECK(evaluate_polynomial(std::vector<double>{}, 3.0) == 0.0);
}

TEST_CASE("real cubic roots") {
  // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
  auto r = real_cubic_roots({-6.0, 11.0, -6.0, 1.0});
  std::sort(r.begin(), r.end());
  REQUIRE(r.size() == 3);
  CHECK(r[0] == Approx(1.0).epsilon(1e-13));
  CHECK(r[1] == Approx(2.0).epsilon(1e-13));
  CHECK(r[2] == Approx(3.0).epsilon(1e-13));

  // x^3 + x + 1 has one real root
  r = real_cubic_roots({1.0, 1.0, 0.0, 1.0});
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] * r[0] * r[0] + r[0] + 1.0) < 1e-14);

  // degenerate leading coefficient falls back to the quadratic
  r = real_cubic_roots({-4.0, 0.0, 1.0, 0.0});
  std::sort(r.begin(), r.end());
  REQUIRE(r.size() == 2);
  CHECK(r[0] == Approx(-2.0));
  CHECK(r[1] == Approx(2.0));

  r = real_cubic_roots({-3.0, 1.5, 0.0, 0.0});
  REQUIRE(r.size() == 1);
  CHECK(r[0] == Approx(2.0));
}

TEST_CASE("maximize_quartic interior and boundary maxima") {
  // -(x - 0.3)^2 + 1 written as a quartic with zero high terms
  auto best = maximize_quartic({0.91, 0.6, -1.0, 0.0, 0.0}, 0.0, 1.0);
  CHECK(best.argmax == Approx(0.3).epsilon(1e-12));
  CHECK(best.value == Approx(1.0).epsilon(1e-12));

  best = maximize_quartic({0.0, 1.0, 0.0, 0.0, 0.0}, 0.0, 1.0);
  CHECK(best.argmax == 1.0);

  // x^2 (1 - x)^2 is symmetric about 1/2
  best = maximize_quartic({0.0, 0.0, 1.0, -2.0, 1.0}, 0.0, 1.0);
  CHECK(best.argmax == Approx(0.5).epsilon(1e-12));
  CHECK(best.value == Approx(0.0625).epsilon(1e-12));

  // (x^2 - 1/4)^2 style double well: ties go to the larger x
  best = maximize_quartic({0.0, 0.0, -1.0, 0.0, 1.0}, -1.0, 1.0);
  CHECK(best.argmax == 1.0);
  CHECK(best.value == Approx(0.0));
}

TEST_CASE("maximize_quartic agrees with a dense scan") {
  const std::array<double, 5> c{0.1, 2.3, -7.0, 6.5, -2.2};
  double scan = -1e300;
  for (int i = 0; i <= 200000; ++i) scan = std::max(scan, evaluate_polynomial(c, i / 200000.0));
  const auto best = maximize_quartic(c, 0.0, 1.0);
  CHECK(best.value >= scan - 1e-12);
  CHECK(best.value - scan < 1e-9);
}
