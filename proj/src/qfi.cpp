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

#include "kbody/qfi.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "kbody/errors.hpp"

namespace kbody {
namespace {

constexpr double kClamp = 1e-12;

double clamp_variance(double v) { return (v < 0.0 && v >= -kClamp) ? 0.0 : v; }

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

void check_dims(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionError("state and operator dimensions differ");
}

}  // namespace

PureState PureState::from_amplitudes(std::vector<Complex> amplitudes) {
  if (!is_power_of_two(amplitudes.size())) {
    throw DimensionError("state length must be a power of two");
  }
  double norm = 0.0;
  for (const auto& z : amplitudes) norm += std::norm(z);
  if (!(std::abs(norm - 1.0) <= 1e-12)) throw DomainError("state is not normalized");
  return PureState(std::move(amplitudes));
}

PureState PureState::product(std::span<const double> probs, std::span<const double> phases) {
  if (probs.empty()) throw DomainError("product state needs at least one qubit");
  if (!phases.empty() && phases.size() != probs.size()) {
    throw DimensionError("phase count differs from qubit count");
  }
  std::vector<Complex> amps{1.0};
  for (std::size_t q = 0; q < probs.size(); ++q) {
    const double p = probs[q];
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("local probability outside [0, 1]");
    const Complex zero = std::sqrt(p);
    const Complex one = std::polar(std::sqrt(1.0 - p), phases.empty() ? 0.0 : phases[q]);
    // qubit q becomes the new least significant bit
    std::vector<Complex> next(amps.size() * 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * zero;
      next[2 * i + 1] = amps[i] * one;
    }
    amps = std::move(next);
  }
  return PureState(std::move(amps));
}

int PureState::n_qubits() const { return std::countr_zero(amplitudes_.size()); }

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  if (!is_power_of_two(m.dim())) throw DimensionError("density matrix dimension must be 2^N");
  if (std::abs(m.trace() - 1.0) > 1e-12) throw DomainError("density matrix trace differs from 1");
  if (m.hermiticity_defect() >= 1e-12) throw DomainError("density matrix is not Hermitian");
  const auto eig = eigendecompose_hermitian(m);
  if (eig.eigenvalues.front() < -1e-10) throw DomainError("density matrix is not positive semidefinite");
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const auto amps = psi.amplitudes();
  ComplexMatrix m(amps.size());
  for (std::size_t r = 0; r < amps.size(); ++r)
    for (std::size_t c = 0; c < amps.size(); ++c) m(r, c) = amps[r] * std::conj(amps[c]);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  if (!is_power_of_two(dim)) throw DimensionError("density matrix dimension must be 2^N");
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / static_cast<double>(dim);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::mixture(std::span<const double> weights,
                                     std::span<const PureState> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw DimensionError("mixture needs one weight per state");
  }
  const std::size_t dim = states.front().dim();
  ComplexMatrix m(dim);
  double total = 0.0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (weights[s] < 0.0) throw DomainError("mixture weights must be nonnegative");
    check_dims(states[s].dim(), dim);
    total += weights[s];
    const auto amps = states[s].amplitudes();
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) m(r, c) += weights[s] * amps[r] * std::conj(amps[c]);
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to one");
  return DensityMatrix(std::move(m));
}

double variance(const PureState& psi, const DenseOperator& a) {
  check_dims(psi.dim(), a.dim());
  const auto amps = psi.amplitudes();
  if (a.is_diagonal) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const double w = std::norm(amps[i]);
      const double d = a.matrix(i, i).real();
      m1 += w * d;
      m2 += w * d * d;
    }
    return clamp_variance(m2 - m1 * m1);
  }
  const auto a_psi = a.matrix.apply(amps);
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    m1 += (std::conj(amps[i]) * a_psi[i]).real();
    m2 += std::norm(a_psi[i]);  // <psi|A^2|psi> = ||A psi||^2 for Hermitian A
  }
  return clamp_variance(m2 - m1 * m1);
}

double variance(const PureState& psi, const ExcitationSpectrum& spectrum) {
  check_dims(psi.dim(), std::size_t{1} << spectrum.n_qubits);
  const auto amps = psi.amplitudes();
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double w = std::norm(amps[i]);
    const double omega = spectrum.omegas[std::popcount(i)];
    m1 += w * omega;
    m2 += w * omega * omega;
  }
  return clamp_variance(m2 - m1 * m1);
}

QfiValue qfi_pure(const PureState& psi, const DenseOperator& a) {
  return {4.0 * variance(psi, a), QfiMethod::PureVariance};
}

QfiValue qfi_pure(const PureState& psi, const ExcitationSpectrum& spectrum) {
  return {4.0 * variance(psi, spectrum), QfiMethod::PureVariance};
}

QfiValue qfi_mixed(const DensityMatrix& rho, const DenseOperator& a) {
  check_dims(rho.dim(), a.dim());
  const auto eig = eigendecompose_hermitian(rho.matrix());
  if (eig.eigenvalues.front() < -1e-10) throw DomainError("density matrix is not positive semidefinite");

  // A in the eigenbasis of rho.
  const ComplexMatrix& v = eig.eigenvectors;
  const ComplexMatrix rotated = v.adjoint() * (a.matrix * v);

  const std::size_t dim = rho.dim();
  double sum = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t l = 0; l < dim; ++l) {
      const double lk = std::max(eig.eigenvalues[k], 0.0);
      const double ll = std::max(eig.eigenvalues[l], 0.0);
      const double denom = lk + ll;
      if (denom <= 1e-12) continue;
      const double diff = lk - ll;
      sum += diff * diff / denom * std::norm(rotated(k, l));
    }
  }
  return {2.0 * sum, QfiMethod::MixedEigen};
}

double two_copy_variance(const DensityMatrix& rho, const DenseOperator& a) {
  check_dims(rho.dim(), a.dim());
  const std::size_t dim = rho.dim();
  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix& h = a.matrix;
  // Tr[rho A] and Tr[rho A^2] = sum_{ij} (rho A)_{ij} A_{ji}
  const ComplexMatrix rho_a = r * h;
  double first = 0.0, second = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    first += rho_a(i, i).real();
    for (std::size_t j = 0; j < dim; ++j) second += (rho_a(i, j) * h(j, i)).real();
  }
  return clamp_variance(second - first * first);
}

}  // namespace kbody
