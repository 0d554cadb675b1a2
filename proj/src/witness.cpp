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

#include "kbody/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kbody/errors.hpp"
#include "kbody/oracle.hpp"
#include "kbody/parallel.hpp"

namespace kbody {

WitnessReport detect(double observed_qfi, int n) {
  if (n < 3) throw DomainError("detect requires n >= 3");
  if (!(observed_qfi >= 0.0)) throw DomainError("observed QFI must be nonnegative");
  WitnessReport report;
  report.n_qubits = n;
  report.bound = bound_b12(n);
  report.observed_qfi = observed_qfi;
  report.verdict = observed_qfi > report.bound ? Verdict::AtLeastThreeLocal : Verdict::Inconclusive;
  return report;
}

HamiltonianSpec ising_with_field(int n, double gamma3) {
  if (n < 3) throw DomainError("ising_with_field requires n >= 3");
  if (!(gamma3 >= 0.0) || !std::isfinite(gamma3)) throw DomainError("gamma3 must be finite and >= 0");
  auto spec = HamiltonianSpec::from_string_weights(n, {{1, 1.0}, {2, 1.0}, {3, gamma3}},
                                                   {1.0, 0.0, 0.0});
  spec.normalization = Normalization::OperatorNormHalfN;
  return spec;
}

std::vector<GammaScanRow> gamma_scan(int n, std::span<const double> gamma3_grid,
                                     const ScanOptions& options) {
  if (gamma3_grid.empty()) throw DomainError("gamma3 grid is empty");
  if (!std::is_sorted(gamma3_grid.begin(), gamma3_grid.end())) {
    throw DomainError("gamma3 grid must be ascending");
  }
  const double bound = bound_b12(n);
  std::vector<GammaScanRow> rows;
  rows.reserve(gamma3_grid.size());
  for (double gamma3 : gamma3_grid) {
    // The local rotation maps product states to product states, so the
    // optimum can be taken in the diagonal basis.
    const auto spectrum = build_spectrum(ising_with_field(n, gamma3));
    const auto optimum = optimize_full(spectrum, options.starts, options.seed);
    GammaScanRow row;
    row.gamma3 = gamma3;
    row.max_product_qfi = optimum.best_qfi;
    row.bound = bound;
    row.violated = optimum.best_qfi > bound + 1e-9 * std::max(1.0, bound);
    rows.push_back(row);
  }
  return rows;
}

double ising_qfi(int n, double gamma3, const PureState& psi) {
  return qfi_pure(psi, build_dense(ising_with_field(n, gamma3))).value;
}

MonteCarloSample draw_sample(const MonteCarloConfig& config, std::uint64_t index) {
  const int n = config.n_qubits;
  StreamRng rng(config.seed, index);
  MonteCarloSample sample;
  const double drawn = rng.uniform();
  sample.gamma3 = config.fixed_gamma3.value_or(drawn);
  sample.probs.resize(n);
  sample.phases.resize(n);
  // Single-qubit Haar: |<0|psi>|^2 is uniform on [0,1], the phase uniform on [0, 2pi).
  for (int q = 0; q < n; ++q) {
    sample.probs[q] = rng.uniform();
    sample.phases[q] = 2.0 * std::numbers::pi * rng.uniform();
  }
  const auto psi = PureState::product(sample.probs, sample.phases);
  sample.qfi = ising_qfi(n, sample.gamma3, psi);
  sample.violated = sample.qfi > bound_b12(n);
  return sample;
}

MonteCarloReport monte_carlo_violation(const MonteCarloConfig& config) {
  if (config.samples < 1) throw DomainError("samples must be >= 1");
  if (config.n_qubits < 3 || config.n_qubits > kMaxDenseQubits) {
    throw DomainError("monte carlo needs 3 <= n <= " + std::to_string(kMaxDenseQubits));
  }
  if (config.fixed_gamma3 && !(*config.fixed_gamma3 >= 0.0)) {
    throw DomainError("gamma3 must be >= 0");
  }

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (config.samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> counts(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(config.samples, begin + kChunk);
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) hits += draw_sample(config, i).violated ? 1 : 0;
    counts[c] = hits;
  });

  MonteCarloReport report;
  report.n_qubits = config.n_qubits;
  report.samples = config.samples;
  report.seed = config.seed;
  for (auto h : counts) report.violations += h;
  report.frequency = static_cast<double>(report.violations) / static_cast<double>(report.samples);
  report.wilson_interval_95 = wilson_interval(report.violations, report.samples);
  return report;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw DomainError("wilson interval needs at least one trial");
  if (successes > trials) throw DomainError("more successes than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, std::min(p, center - half)), std::min(1.0, std::max(p, center + half))};
}

}  // namespace kbody
