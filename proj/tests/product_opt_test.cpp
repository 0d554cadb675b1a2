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
#include <random>

#include "doctest.h"
#include "kbody/errors.hpp"
#include "kbody/polynomial.hpp"
#include "kbody/product_opt.hpp"
#include "test_support.hpp"

using namespace kbody;
using doctest::Approx;

TEST_CASE("excitation distribution") {
  const auto dist = excitation_distribution({{0.5, 0.25}});
  REQUIRE(dist.size() == 3);
  CHECK(dist[0] == Approx(0.125));
  CHECK(dist[1] == Approx(0.5));
  CHECK(dist[2] == Approx(0.375));
  CHECK_THROWS_AS(excitation_distribution({{0.5, -0.1}}), DomainError);
  CHECK_THROWS_AS(excitation_distribution({{}}), DomainError);
}

TEST_CASE("variance_product matches explicit enumeration") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 2; n <= 10; ++n) {
    for (int k = 1; k <= std::min(n, 5); ++k) {
      const auto spectrum = build_spectrum(HamiltonianSpec::up_to_order(n, k));
      ProductStateParams params;
      params.probs.resize(n);
      for (double& p : params.probs) p = u(rng);
      CHECK(std::abs(variance_product(spectrum, params) -
                     testing::enumerate_variance(spectrum.omegas, params.probs)) < 1e-10);
    }
  }
  const auto spectrum = build_spectrum(HamiltonianSpec::pure_order(3, 1));
  CHECK_THROWS_AS(variance_product(spectrum, ProductStateParams::uniform(4, 0.5)), DimensionError);
}

TEST_CASE("gradient and Hessian match finite differences") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int n = 2; n <= 7; ++n) {
    const auto spectrum = build_spectrum(HamiltonianSpec::up_to_order(n, std::min(n, 3)));
    ProductStateParams params;
    params.probs.resize(n);
    for (double& p : params.probs) p = u(rng);
    const auto g = stationarity_residuals(spectrum, params);
    const auto h = variance_hessian(spectrum, params);
    const double step = 1e-5;
    for (int i = 0; i < n; ++i) {
      auto up = params, down = params;
      up.probs[i] += step;
      down.probs[i] -= step;
      const double fd = (variance_product(spectrum, up) - variance_product(spectrum, down)) / (2 * step);
      CHECK(std::abs(fd - g[i]) <= 1e-6 * std::max(1.0, std::abs(g[i])));
      const auto gu = stationarity_residuals(spectrum, up);
      const auto gd = stationarity_residuals(spectrum, down);
      for (int j = 0; j < n; ++j) {
        const double fdh = (gu[j] - gd[j]) / (2 * step);
        CHECK(std::abs(fdh - h[i * n + j]) <= 1e-5 * std::max(1.0, std::abs(h[i * n + j])));
      }
    }
  }
}

TEST_CASE("k=2 closed form") {
  CHECK(p_max_k2(4) == Approx(0.5 + 1.0 / std::sqrt(10.0)).epsilon(1e-15));
  CHECK(f_max_k2(4) == Approx(4.8).epsilon(1e-15));
  CHECK(f_max_k2(3) == Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(p_max_k2(2), DomainError);

  for (int n = 3; n <= 13; ++n) {
    const auto poly = symmetric_k2_variance_polynomial(n);
    const auto spectrum = build_spectrum(HamiltonianSpec::pure_order(n, 2));
    for (double p : {0.1, 0.37, 0.5, 0.81}) {
      const double direct = variance_product(spectrum, ProductStateParams::uniform(n, p));
      CHECK(evaluate_polynomial(poly, p) == Approx(direct).epsilon(1e-12));
    }
    const auto closed = optimize_k2_closed_form(n);
    CHECK(closed.method == OptimumMethod::ClosedForm);
    CHECK(closed.best_qfi == Approx(f_max_k2(n)).epsilon(1e-12));
    CHECK(std::abs(closed.best_params.probs[0] - p_max_k2(n)) < 1e-12);
  }
}

TEST_CASE("symmetric optimizer") {
  const auto k1 = optimize_symmetric(build_spectrum(HamiltonianSpec::pure_order(5, 1)));
  CHECK(k1.best_qfi == Approx(5.0).epsilon(1e-12));
  CHECK(k1.best_params.probs[0] == Approx(0.5).epsilon(1e-9));

  const auto k3 = optimize_symmetric(build_spectrum(HamiltonianSpec::pure_order(3, 3)));
  CHECK(k3.best_qfi == Approx(9.0).epsilon(1e-12));

  for (int n = 3; n <= 13; ++n) {
    const auto r = optimize_symmetric(build_spectrum(HamiltonianSpec::pure_order(n, 2)));
    CHECK(std::abs(r.best_qfi - f_max_k2(n)) < 1e-7);
    CHECK(std::abs(r.best_params.probs[0] - p_max_k2(n)) < 1e-9);
    CHECK(r.stationarity_residual < 1e-8);
  }
}

TEST_CASE("full optimizer agrees with the symmetric optimum for k=2") {
  for (int n = 3; n <= 6; ++n) {
    const auto spectrum = build_spectrum(HamiltonianSpec::pure_order(n, 2));
    const auto full = optimize_full(spectrum, 20, 1);
    CHECK(full.method == OptimumMethod::MultiStartGradient);
    CHECK(full.best_qfi == Approx(f_max_k2(n)).epsilon(1e-9));
    CHECK(full.stationarity_residual < 1e-8);
  }
}

TEST_CASE("full optimizer is deterministic and seed-insensitive at the optimum") {
  const auto spectrum = build_spectrum(HamiltonianSpec::up_to_order(5, 3));
  const auto a = optimize_full(spectrum, 16, 7);
  const auto b = optimize_full(spectrum, 16, 7);
  CHECK(a.best_qfi == b.best_qfi);
  CHECK(a.best_params.probs == b.best_params.probs);
  const auto c = optimize_full(spectrum, 16, 8);
  CHECK(c.best_qfi == Approx(a.best_qfi).epsilon(1e-10));
}

TEST_CASE("full optimizer beats a random search") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto spectrum = build_spectrum(HamiltonianSpec::up_to_order(4, 4));
  const double best = optimize_full(spectrum, 10, 0).best_qfi;
  for (int trial = 0; trial < 2000; ++trial) {
    ProductStateParams params;
    params.probs.resize(4);
    for (double& p : params.probs) p = u(rng);
    CHECK(4.0 * variance_product(spectrum, params) <= best + 1e-12);
  }
}

TEST_CASE("full optimizer guards") {
  CHECK_THROWS_AS(optimize_full(build_spectrum(HamiltonianSpec::pure_order(14, 2))), ResourceError);
  CHECK_THROWS_AS(optimize_full(build_spectrum(HamiltonianSpec::pure_order(4, 2)), -1), DomainError);
}

TEST_CASE("solve_stationarity polishes a nearby start") {
  const auto spectrum = build_spectrum(HamiltonianSpec::pure_order(6, 2));
  const auto r = solve_stationarity(spectrum, ProductStateParams::uniform(6, p_max_k2(6) + 1e-3));
  CHECK(r.method == OptimumMethod::StationaritySolve);
  CHECK(r.best_qfi == Approx(f_max_k2(6)).epsilon(1e-12));
  CHECK(r.stationarity_residual < 1e-10);
}

TEST_CASE("two-body-plus-one-body bound") {
  const double expected[] = {2.6767, 3.6114, 4.5662, 5.5334, 6.5084, 7.4889, 8.4731, 9.4602};
  for (int n = 3; n <= 10; ++n) {
    CHECK(std::abs(bound_b12(n) - expected[n - 3]) < 5e-5);
    // the bound is the symmetric optimum of the equal-weight k<=2 Hamiltonian
    const auto spectrum = build_spectrum(HamiltonianSpec::from_string_weights(n, {{1, 1.0}, {2, 1.0}}));
    CHECK(optimize_symmetric(spectrum).best_qfi == Approx(bound_b12(n)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(bound_b12(2), DomainError);
}
