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
#include <map>
#include <vector>

namespace kbody {

enum class Normalization {
  None,
  /// Rescale the total so that max_e |Omega_e| = N/2.
  OperatorNormHalfN,
};

/// Symmetric k-body Ising-like Hamiltonian on N qubits along the local axis n.
///
/// Order k' contributes gamma_k' * N / (2 C(N,k')) * sum_{|S|=k'} prod_{i in S} (n.sigma)_i,
/// so a single order on its own already has operator norm N/2. With
/// OperatorNormHalfN the weighted total is rescaled to norm N/2 as a whole.
struct HamiltonianSpec {
  int n_qubits = 0;
  std::map<int, double> couplings;
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  Normalization normalization = Normalization::OperatorNormHalfN;

  /// Throws DomainError (or DegenerateSpecError for all-zero couplings).
  void validate() const;

  /// H_{k=m}: only order m.
  static HamiltonianSpec pure_order(int n_qubits, int order);
  /// H_{k<=m}: orders 1..m with unit weight.
  static HamiltonianSpec up_to_order(int n_qubits, int max_order);
  /// Build from weights on the bare Pauli-string sums, i.e.
  /// H = sum_k' w_k' * sum_{|S|=k'} prod_{i in S} (n.sigma)_i, then normalized.
  static HamiltonianSpec from_string_weights(int n_qubits, const std::map<int, double>& weights,
                                             std::array<double, 3> axis = {0.0, 0.0, 1.0});
};

inline constexpr int kMaxSpectrumQubits = 16;

struct ExcitationSpectrum {
  int n_qubits = 0;
  /// Omega_e for e = 0..N local |1> factors.
  std::vector<double> omegas;
  std::vector<std::uint64_t> degeneracies;
  double norm_constant = 1.0;

  /// Omega_e repeated C(N,e) times, sorted ascending.
  std::vector<double> expanded_sorted() const;
};

/// Size of the excitation sector e, C(n, e). Throws DomainError unless 0 <= e <= n.
std::uint64_t degeneracy(int n, int e);

/// omega_e^{N,k'}: eigenvalue on the sector with e excitations of the order-k' term.
double omega_term(int n, int k_prime, int e);

ExcitationSpectrum build_spectrum(const HamiltonianSpec& spec);

}  // namespace kbody
