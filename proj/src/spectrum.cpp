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

#include "kbody/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kbody/errors.hpp"

namespace kbody {
namespace {

using Int128 = __int128;

// Exact binomial; zero for out-of-range arguments.
Int128 binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

void check_qubits(int n) {
  if (n < 1 || n > kMaxSpectrumQubits) {
    throw DomainError("qubit count " + std::to_string(n) + " outside [1, " +
                      std::to_string(kMaxSpectrumQubits) + "]");
  }
}

}  // namespace

std::uint64_t degeneracy(int n, int e) {
  check_qubits(n);
  if (e < 0 || e > n) throw DomainError("excitation count outside [0, n]");
  return static_cast<std::uint64_t>(binomial(n, e));
}

double omega_term(int n, int k_prime, int e) {
  check_qubits(n);
  if (k_prime < 1 || k_prime > n) throw DomainError("interaction order outside [1, n]");
  if (e < 0 || e > n) throw DomainError("excitation count outside [0, n]");

  // Krawtchouk sum sum_j (-1)^j C(e,j) C(n-e,k'-j), exact.
  Int128 signed_count = 0;
  for (int j = 0; j <= std::min(e, k_prime); ++j) {
    const Int128 term = binomial(e, j) * binomial(n - e, k_prime - j);
    signed_count += (j % 2 == 0) ? term : -term;
  }
  const Int128 numerator = signed_count * n;
  const Int128 denominator = binomial(n, k_prime) * 2;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

void HamiltonianSpec::validate() const {
  if (n_qubits < 2 || n_qubits > kMaxSpectrumQubits) {
    throw DomainError("n_qubits must lie in [2, " + std::to_string(kMaxSpectrumQubits) + "], got " +
                      std::to_string(n_qubits));
  }
  const double axis_norm = std::hypot(axis[0], axis[1], axis[2]);
  if (!(std::abs(axis_norm - 1.0) <= 1e-12)) throw DomainError("axis must be a unit vector");
  bool any_nonzero = false;
  for (const auto& [order, weight] : couplings) {
    if (order < 1 || order > n_qubits) {
      throw DomainError("coupling order " + std::to_string(order) + " outside [1, n_qubits]");
    }
    if (!std::isfinite(weight)) throw DomainError("coupling weight must be finite");
    any_nonzero = any_nonzero || weight != 0.0;
  }
  if (!any_nonzero) throw DegenerateSpecError("all couplings are zero");
}

HamiltonianSpec HamiltonianSpec::pure_order(int n_qubits, int order) {
  HamiltonianSpec spec;
  spec.n_qubits = n_qubits;
  spec.couplings[order] = 1.0;
  return spec;
}

HamiltonianSpec HamiltonianSpec::up_to_order(int n_qubits, int max_order) {
  HamiltonianSpec spec;
  spec.n_qubits = n_qubits;
  for (int k = 1; k <= max_order; ++k) spec.couplings[k] = 1.0;
  return spec;
}

HamiltonianSpec HamiltonianSpec::from_string_weights(int n_qubits,
                                                     const std::map<int, double>& weights,
                                                     std::array<double, 3> axis) {
  HamiltonianSpec spec;
  spec.n_qubits = n_qubits;
  spec.axis = axis;
  for (const auto& [order, weight] : weights) {
    if (order < 1 || order > n_qubits) {
      throw DomainError("string order " + std::to_string(order) + " outside [1, n_qubits]");
    }
    // omega^{N,k'} = N / (2 C(N,k')) * (bare string sum)
    spec.couplings[order] =
        weight * 2.0 * static_cast<double>(binomial(n_qubits, order)) / n_qubits;
  }
  return spec;
}

std::vector<double> ExcitationSpectrum::expanded_sorted() const {
  std::vector<double> values;
  for (std::size_t e = 0; e < omegas.size(); ++e) {
    values.insert(values.end(), degeneracies[e], omegas[e]);
  }
  std::sort(values.begin(), values.end());
  return values;
}

ExcitationSpectrum build_spectrum(const HamiltonianSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;

  ExcitationSpectrum out;
  out.n_qubits = n;
  out.omegas.assign(n + 1, 0.0);
  out.degeneracies.resize(n + 1);
  for (int e = 0; e <= n; ++e) {
    out.degeneracies[e] = degeneracy(n, e);
    for (const auto& [order, weight] : spec.couplings) {
      if (weight != 0.0) out.omegas[e] += weight * omega_term(n, order, e);
    }
  }

  if (spec.normalization == Normalization::OperatorNormHalfN) {
    double max_abs = 0.0;
    for (double w : out.omegas) max_abs = std::max(max_abs, std::abs(w));
    if (max_abs == 0.0) throw DegenerateSpecError("spectrum vanishes identically");
    out.norm_constant = 0.5 * n / max_abs;
    for (double& w : out.omegas) w *= out.norm_constant;
  }
  return out;
}

}  // namespace kbody
