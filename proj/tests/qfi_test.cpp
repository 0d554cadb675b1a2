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
#include "kbody/qfi.hpp"
#include "test_support.hpp"

using namespace kbody;
using doctest::Approx;

TEST_CASE("product state amplitudes") {
  const std::vector<double> probs{0.25, 1.0};
  const std::vector<double> phases{0.5, 0.0};
  const auto psi = PureState::product(probs, phases);
  REQUIRE(psi.dim() == 4);
  CHECK(psi.n_qubits() == 2);
  const auto a = psi.amplitudes();
  CHECK(std::abs(a[0] - Complex(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(a[1]) < 1e-15);
  CHECK(std::abs(a[2] - std::polar(std::sqrt(0.75), 0.5)) < 1e-15);
  CHECK(std::abs(a[3]) < 1e-15);
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(PureState::from_amplitudes({1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(PureState::from_amplitudes({1.0, 0.0, 0.0}), DimensionError);
  const std::vector<double> bad{1.2};
  CHECK_THROWS_AS(PureState::product(bad), DomainError);
  const std::vector<double> probs{0.5, 0.5};
  const std::vector<double> phases{0.0};
  CHECK_THROWS_AS(PureState::product(probs, phases), DimensionError);
}

TEST_CASE("variance of the GHZ state under a k=N Hamiltonian") {
  const auto spec = HamiltonianSpec::pure_order(3, 3);
  const auto h = build_dense(spec);
  const double r = 1.0 / std::sqrt(2.0);
  const auto ghz = PureState::from_amplitudes({r, 0, 0, 0, 0, 0, 0, r});
  // components sit at opposite ends of the spectrum
  CHECK(variance(ghz, h) == Approx(2.25).epsilon(1e-14));
  const std::vector<double> half(3, 0.5);
  CHECK(qfi_pure(PureState::product(half), build_spectrum(spec)).value == Approx(9.0).epsilon(1e-12));
}

TEST_CASE("dense and spectrum variances agree on product states") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 2; n <= 6; ++n) {
    const auto spec = HamiltonianSpec::up_to_order(n, std::min(n, 4));
    const auto dense = build_dense(spec);
    const auto spectrum = build_spectrum(spec);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> probs(n), phases(n);
      for (int q = 0; q < n; ++q) probs[q] = u(rng), phases[q] = 6.0 * u(rng);
      const auto psi = PureState::product(probs, phases);
      CHECK(std::abs(variance(psi, dense) - variance(psi, spectrum)) < 1e-12);
      CHECK(std::abs(variance(psi, spectrum) - testing::enumerate_variance(spectrum.omegas, probs)) < 1e-12);
    }
  }
}

TEST_CASE("pure, mixed and two-copy estimators agree on pure states") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 5; ++n) {
    auto spec = HamiltonianSpec::up_to_order(n, 2);
    spec.axis = {0.48, 0.6, 0.64};
    const auto h = build_dense(spec);
    for (int trial = 0; trial < 3; ++trial) {
      const auto psi = PureState::from_amplitudes(testing::random_state(h.dim(), rng));
      const auto rho = DensityMatrix::from_pure(psi);
      const double var = variance(psi, h);
      const auto pure = qfi_pure(psi, h);
      CHECK(pure.method == QfiMethod::PureVariance);
      CHECK(pure.value == Approx(4.0 * var).epsilon(1e-12));
      const auto mixed = qfi_mixed(rho, h);
      CHECK(mixed.method == QfiMethod::MixedEigen);
      CHECK(std::abs(mixed.value - pure.value) < 1e-9);
      CHECK(std::abs(two_copy_variance(rho, h) - var) < 1e-12);
    }
  }
}

TEST_CASE("mixed QFI of mixtures") {
  const auto h = build_dense(HamiltonianSpec::pure_order(2, 1));
  CHECK(qfi_mixed(DensityMatrix::maximally_mixed(4), h).value == Approx(0.0).epsilon(1e-14));

  // Commuting mixture of eigenstates carries no phase information.
  const auto zero = PureState::from_amplitudes({1, 0, 0, 0});
  const auto one = PureState::from_amplitudes({0, 0, 0, 1});
  const std::vector<double> w{0.3, 0.7};
  const std::vector<PureState> states{zero, one};
  CHECK(qfi_mixed(DensityMatrix::mixture(w, states), h).value == Approx(0.0).epsilon(1e-12));

  // |++> mixed with white noise
  const double q = 0.6;
  const std::vector<double> half{0.5, 0.5};
  const auto plus = PureState::product(half);
  const auto pure_qfi = qfi_pure(plus, h).value;
  ComplexMatrix m(4);
  const auto rp = DensityMatrix::from_pure(plus).matrix();
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = q * rp(r, c) + (r == c ? (1 - q) / 4 : 0.0);
  const auto mixed = qfi_mixed(DensityMatrix::from_matrix(m), h).value;
  // depolarized pure state: F = q^2 / (q + 2(1-q)/d) * F_pure
  CHECK(mixed == Approx(q * q / (q + 2 * (1 - q) / 4) * pure_qfi).epsilon(1e-10));
  CHECK(mixed < pure_qfi);
  CHECK(mixed > 0.0);
  // convexity: F(q rho + (1-q) 1/d) <= q F(rho)
  CHECK(mixed <= q * pure_qfi + 1e-12);
}

TEST_CASE("density matrix validation") {
  ComplexMatrix m(2);
  m(0, 0) = 0.5;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(m), DomainError);
  m(0, 0) = 1.5, m(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(m), DomainError);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix(3)), DimensionError);
  const std::vector<double> w{0.5, 0.6};
  const std::vector<PureState> states{PureState::from_amplitudes({1, 0}), PureState::from_amplitudes({0, 1})};
  CHECK_THROWS_AS(DensityMatrix::mixture(w, states), DomainError);
}

TEST_CASE("dimension mismatch") {
  const auto h = build_dense(HamiltonianSpec::pure_order(3, 1));
  CHECK_THROWS_AS(variance(PureState::from_amplitudes({1, 0}), h), DimensionError);
}
