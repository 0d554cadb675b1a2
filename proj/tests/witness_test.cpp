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

#include <cmath>

#include "doctest.h"
#include "kbody/errors.hpp"
#include "kbody/witness.hpp"

using namespace kbody;
using doctest::Approx;

TEST_CASE("detect compares strictly against the bound") {
  const double b = bound_b12(4);
  CHECK(detect(b + 1e-6, 4).verdict == Verdict::AtLeastThreeLocal);
  CHECK(detect(b, 4).verdict == Verdict::Inconclusive);
  CHECK(detect(1.0, 4).verdict == Verdict::Inconclusive);
  CHECK(detect(3.0, 4).bound == Approx(3.6114).epsilon(1e-4));
  CHECK_THROWS_AS(detect(1.0, 2), DomainError);
  CHECK_THROWS_AS(detect(-1.0, 4), DomainError);
  CHECK_THROWS_AS(detect(std::nan(""), 4), DomainError);
}

TEST_CASE("ising_with_field") {
  const auto spec = ising_with_field(4, 0.5);
  CHECK(spec.axis == std::array<double, 3>{1.0, 0.0, 0.0});
  CHECK(spec.normalization == Normalization::OperatorNormHalfN);
  CHECK(spec.couplings.size() == 3);
  CHECK_THROWS_AS(ising_with_field(4, -0.1), DomainError);
  CHECK_THROWS_AS(ising_with_field(4, INFINITY), DomainError);
  CHECK_THROWS_AS(ising_with_field(2, 0.0), DomainError);
}

TEST_CASE("gamma scan starts at the bound and rises") {
  const std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
  const auto rows = gamma_scan(3, grid, {10, 0});
  REQUIRE(rows.size() == 4);
  CHECK(std::abs(rows[0].max_product_qfi - bound_b12(3)) < 1e-5);
  CHECK_FALSE(rows[0].violated);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].max_product_qfi >= rows[i - 1].max_product_qfi - 1e-9);
  CHECK(rows.back().violated);

  const std::vector<double> descending{1.0, 0.0};
  CHECK_THROWS_AS(gamma_scan(3, descending), DomainError);
  CHECK_THROWS_AS(gamma_scan(3, std::vector<double>{}), DomainError);
}

TEST_CASE("ising_qfi on a simple state") {
  // |0...0> is an eigenstate of no x-type string, so the QFI is positive
  const std::vector<double> ones(3, 1.0);
  const auto psi = PureState::product(ones);
  CHECK(ising_qfi(3, 0.0, psi) > 0.0);
  // |+++> is an x eigenstate
  const std::vector<double> half(3, 0.5);
  CHECK(ising_qfi(3, 0.7, PureState::product(half)) == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("draw_sample is a pure function of seed and index") {
  MonteCarloConfig config;
  config.samples = 10;
  config.seed = 99;
  const auto a = draw_sample(config, 3);
  const auto b = draw_sample(config, 3);
  CHECK(a.gamma3 == b.gamma3);
  CHECK(a.probs == b.probs);
  CHECK(a.phases == b.phases);
  CHECK(a.qfi == b.qfi);
  CHECK(draw_sample(config, 4).probs != a.probs);
  CHECK(a.gamma3 >= 0.0);
  CHECK(a.gamma3 < 1.0);
  for (double p : a.probs) CHECK((p >= 0.0 && p < 1.0));

  config.fixed_gamma3 = 0.25;
  CHECK(draw_sample(config, 3).gamma3 == 0.25);
  CHECK(draw_sample(config, 3).probs == a.probs);
}

TEST_CASE("monte carlo reproducibility and guards") {
  MonteCarloConfig config;
  config.samples = 5000;
  config.seed = 1;
  const auto a = monte_carlo_violation(config);
  const auto b = monte_carlo_violation(config);
  CHECK(a.violations == b.violations);
  CHECK(a.frequency == b.frequency);
  CHECK(a.samples == 5000);
  CHECK(a.wilson_interval_95.first <= a.frequency);
  CHECK(a.wilson_interval_95.second >= a.frequency);

  // with no three-body term product states cannot beat the bound
  config.fixed_gamma3 = 0.0;
  CHECK(monte_carlo_violation(config).violations == 0);

  config.samples = 0;
  CHECK_THROWS_AS(monte_carlo_violation(config), DomainError);
  config.samples = 1;
  config.n_qubits = 2;
  CHECK_THROWS_AS(monte_carlo_violation(config), DomainError);
}

TEST_CASE("wilson interval") {
  const auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo == Approx(0.4038).epsilon(1e-3));
  CHECK(hi == Approx(0.5962).epsilon(1e-3));
  const auto zero = wilson_interval(0, 10);
  CHECK(zero.first == 0.0);
  CHECK(zero.second > 0.0);
  CHECK_THROWS_AS(wilson_interval(1, 0), DomainError);
  CHECK_THROWS_AS(wilson_interval(3, 2), DomainError);
}
