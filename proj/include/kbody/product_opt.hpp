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
#include <cstdint>
#include <span>
#include <vector>

#include "kbody/spectrum.hpp"

namespace kbody {

/// Pure product state (x)_i (sqrt(p_i)|0> + sqrt(1-p_i)|1>), one |0>-probability per qubit.
struct ProductStateParams {
  std::vector<double> probs;

  void validate() const;
  static ProductStateParams uniform(int n_qubits, double p);
};

enum class OptimumMethod { SymmetricScan, MultiStartGradient, ClosedForm, StationaritySolve };

struct OptimumReport {
  ProductStateParams best_params;
  double best_qfi = 0.0;
  OptimumMethod method = OptimumMethod::SymmetricScan;
  /// Infinity norm of the projected gradient at best_params.
  double stationarity_residual = 0.0;
};

/// P(e) for e = 0..N: coefficients of prod_i [p_i + (1 - p_i) x], O(N^2).
std::vector<double> excitation_distribution(const ProductStateParams& params);

/// sum_e P(e) Omega_e^2 - (sum_e P(e) Omega_e)^2.
double variance_product(const ExcitationSpectrum& spectrum, const ProductStateParams& params);

/// d variance / d p_i for every qubit.
std::vector<double> stationarity_residuals(const ExcitationSpectrum& spectrum,
                                           const ProductStateParams& params);

/// Symmetric matrix of second derivatives d^2 variance / d p_i d p_j, row-major N x N.
std::vector<double> variance_hessian(const ExcitationSpectrum& spectrum,
                                     const ProductStateParams& params);

/// Best QFI over p_i = p: 10^4-point scan plus Newton polish. Mirror-image
/// ties resolve to the larger p.
OptimumReport optimize_symmetric(const ExcitationSpectrum& spectrum);

inline constexpr int kMaxFullOptimizationQubits = 13;
inline constexpr int kDefaultStarts = 100;

/// Multi-start projected gradient ascent on [0,1]^N. Starts: the symmetric
/// optimum, its 2N single-coordinate perturbations and n_starts uniform points
/// drawn from seed. Ties resolve to the lexicographically smallest probs.
/// Throws ResourceError above 13 qubits.
OptimumReport optimize_full(const ExcitationSpectrum& spectrum, int n_starts = kDefaultStarts,
                            std::uint64_t seed = 0);

/// Newton iteration on the stationarity system from start, with coordinates on
/// the box boundary held fixed when the gradient pushes outward.
OptimumReport solve_stationarity(const ExcitationSpectrum& spectrum,
                                 const ProductStateParams& start);

/// Optimal symmetric |0>-probability for the pure two-body Hamiltonian.
double p_max_k2(int n);
/// Largest product-state QFI for the pure two-body Hamiltonian, 2N(N-1)/(2N-3).
double f_max_k2(int n);
/// Symmetric-ansatz variance of the pure two-body Hamiltonian as a quartic in p,
/// coefficients ascending.
std::array<double, 5> symmetric_k2_variance_polynomial(int n);
/// Maximizes the k=2 symmetric quartic via its cubic derivative; method ClosedForm.
OptimumReport optimize_k2_closed_form(int n);

/// Largest product-state QFI for a normalized Hamiltonian with one- and
/// two-body terms; exceeding it certifies at least three-body couplings.
double bound_b12(int n);
/// The quartic in p maximized by bound_b12, coefficients ascending.
std::array<double, 5> b12_polynomial(int n);

}  // namespace kbody
