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

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kbody/product_opt.hpp"
#include "kbody/qfi.hpp"
#include "kbody/spectrum.hpp"

namespace kbody {

enum class Verdict { AtLeastThreeLocal, Inconclusive };

struct WitnessReport {
  int n_qubits = 0;
  double bound = 0.0;
  double observed_qfi = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

/// AtLeastThreeLocal iff observed_qfi > bound_b12(n), strictly.
WitnessReport detect(double observed_qfi, int n);

/// Complete-graph Ising model with a tuned x field plus a three-body admixture:
///   H ~ sum_{i<j} X_i X_j + sum_i X_i + gamma3 sum_{i<j<k} X_i X_j X_k,
/// normalized as a whole to operator norm N/2.
HamiltonianSpec ising_with_field(int n, double gamma3);

struct GammaScanRow {
  double gamma3 = 0.0;
  double max_product_qfi = 0.0;
  double bound = 0.0;
  bool violated = false;
};

struct ScanOptions {
  int starts = kDefaultStarts;
  std::uint64_t seed = 0;
};

/// Maximal product-state QFI of ising_with_field(n, gamma3) along an ascending
/// grid. `violated` allows 1e-9 relative slack, since at gamma3 = 0 both sides
/// are computed values of the same maximum.
std::vector<GammaScanRow> gamma_scan(int n, std::span<const double> gamma3_grid,
                                     const ScanOptions& options = {});

struct MonteCarloConfig {
  int n_qubits = 3;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// Test hook: use this gamma3 for every sample instead of drawing it.
  std::optional<double> fixed_gamma3;
};

struct MonteCarloReport {
  int n_qubits = 0;
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  double frequency = 0.0;
  std::pair<double, double> wilson_interval_95{0.0, 0.0};
  std::uint64_t seed = 0;
};

struct MonteCarloSample {
  double gamma3 = 0.0;
  std::vector<double> probs;   // |0>-probabilities
  std::vector<double> phases;  // relative phase of |1>
  double qfi = 0.0;
  bool violated = false;
};

/// QFI of a pure state for the x-axis operator ising_with_field(n, gamma3).
double ising_qfi(int n, double gamma3, const PureState& psi);

/// Sample `index` of the experiment; depends only on (seed, index).
MonteCarloSample draw_sample(const MonteCarloConfig& config, std::uint64_t index);

/// Fraction of random (gamma3, Haar product state) draws whose QFI strictly
/// exceeds bound_b12(n).
MonteCarloReport monte_carlo_violation(const MonteCarloConfig& config);

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z = 1.959963984540054);

}  // namespace kbody
