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

#include <span>
#include <vector>

#include "kbody/oracle.hpp"
#include "kbody/spectrum.hpp"

namespace kbody {

class PureState {
 public:
  /// Throws DomainError unless sum |psi_i|^2 = 1 within 1e-12 and the size is 2^N.
  static PureState from_amplitudes(std::vector<Complex> amplitudes);
  /// (x)_i (sqrt(p_i)|0> + e^{i phi_i} sqrt(1-p_i)|1>); phases default to zero.
  static PureState product(std::span<const double> probs, std::span<const double> phases = {});

  std::size_t dim() const { return amplitudes_.size(); }
  int n_qubits() const;
  std::span<const Complex> amplitudes() const { return amplitudes_; }

 private:
  explicit PureState(std::vector<Complex> a) : amplitudes_(std::move(a)) {}
  std::vector<Complex> amplitudes_;
};

class DensityMatrix {
 public:
  /// Checks unit trace, Hermiticity (1e-12) and smallest eigenvalue >= -1e-10.
  static DensityMatrix from_matrix(ComplexMatrix m);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);
  /// sum_i w_i |psi_i><psi_i| with nonnegative weights summing to one.
  static DensityMatrix mixture(std::span<const double> weights, std::span<const PureState> states);

  std::size_t dim() const { return matrix_.dim(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

enum class QfiMethod { PureVariance, MixedEigen, TwoCopy };

struct QfiValue {
  double value = 0.0;
  QfiMethod method = QfiMethod::PureVariance;
};

/// <A^2> - <A>^2, with tiny negative rounding clamped to zero.
double variance(const PureState& psi, const DenseOperator& a);
/// The state is read in the excitation (computational) basis: amplitude index
/// with popcount e sits in sector e.
double variance(const PureState& psi, const ExcitationSpectrum& spectrum);

QfiValue qfi_pure(const PureState& psi, const DenseOperator& a);
QfiValue qfi_pure(const PureState& psi, const ExcitationSpectrum& spectrum);

/// F = 2 sum_{k,l} (l_k - l_l)^2 / (l_k + l_l) |<k|A|l>|^2 over pairs with l_k + l_l > 1e-12.
QfiValue qfi_mixed(const DensityMatrix& rho, const DenseOperator& a);

/// Tr[(1 (x) A^2 - A (x) A)(rho (x) rho)] = Tr[rho A^2] - Tr[rho A]^2, never forming rho (x) rho.
double two_copy_variance(const DensityMatrix& rho, const DenseOperator& a);

}  // namespace kbody
