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

#include "kbody/product_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kbody/errors.hpp"
#include "kbody/parallel.hpp"
#include "kbody/polynomial.hpp"

namespace kbody {
namespace {

// Coefficients of prod_{i not in skip} [p_i + (1 - p_i) x].
std::vector<double> distribution_excluding(std::span<const double> probs, std::size_t skip_a,
                                           std::size_t skip_b) {
  std::vector<double> dist{1.0};
  dist.reserve(probs.size() + 1);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (i == skip_a || i == skip_b) continue;
    const double p = probs[i];
    dist.push_back(0.0);
    for (std::size_t e = dist.size() - 1; e > 0; --e) dist[e] = dist[e] * p + dist[e - 1] * (1.0 - p);
    dist[0] *= p;
  }
  return dist;
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Moments {
  double mean = 0.0;
  double second = 0.0;
};

Moments moments(const ExcitationSpectrum& s, std::span<const double> dist) {
  Moments m;
  for (std::size_t e = 0; e < dist.size(); ++e) {
    m.mean += dist[e] * s.omegas[e];
    m.second += dist[e] * s.omegas[e] * s.omegas[e];
  }
  return m;
}

double raw_variance(const ExcitationSpectrum& s, std::span<const double> probs) {
  const auto m = moments(s, distribution_excluding(probs, kNone, kNone));
  return std::max(0.0, m.second - m.mean * m.mean);
}

// d/dp_i of (sum_e P(e) f_e) for f = Omega and Omega^2.
Moments first_derivative(const ExcitationSpectrum& s, std::span<const double> probs, std::size_t i) {
  const auto q = distribution_excluding(probs, i, kNone);
  Moments d;
  for (std::size_t e = 0; e < s.omegas.size(); ++e) {
    const double here = e < q.size() ? q[e] : 0.0;
    const double below = e > 0 ? q[e - 1] : 0.0;
    const double dp = here - below;
    d.mean += dp * s.omegas[e];
    d.second += dp * s.omegas[e] * s.omegas[e];
  }
  return d;
}

std::vector<double> raw_gradient(const ExcitationSpectrum& s, std::span<const double> probs) {
  const double mean = moments(s, distribution_excluding(probs, kNone, kNone)).mean;
  std::vector<double> g(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const auto d = first_derivative(s, probs, i);
    g[i] = d.second - 2.0 * mean * d.mean;
  }
  return g;
}

std::vector<double> raw_hessian(const ExcitationSpectrum& s, std::span<const double> probs) {
  const std::size_t n = probs.size();
  const double mean = moments(s, distribution_excluding(probs, kNone, kNone)).mean;
  std::vector<double> dmean(n);
  for (std::size_t i = 0; i < n; ++i) dmean[i] = first_derivative(s, probs, i).mean;

  std::vector<double> h(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    h[i * n + i] = -2.0 * dmean[i] * dmean[i];  // P is multilinear, so d^2 P / d p_i^2 = 0
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto r = distribution_excluding(probs, i, j);
      double d2_mean = 0.0, d2_second = 0.0;
      for (std::size_t e = 0; e < s.omegas.size(); ++e) {
        auto at = [&](std::size_t k) { return k < r.size() ? r[k] : 0.0; };
        const double d2p = at(e) - 2.0 * (e >= 1 ? at(e - 1) : 0.0) + (e >= 2 ? at(e - 2) : 0.0);
        d2_mean += d2p * s.omegas[e];
        d2_second += d2p * s.omegas[e] * s.omegas[e];
      }
      const double v = d2_second - 2.0 * dmean[i] * dmean[j] - 2.0 * mean * d2_mean;
      h[i * n + j] = h[j * n + i] = v;
    }
  }
  return h;
}

double projected_residual(std::span<const double> x, std::span<const double> g) {
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r = std::max(r, std::abs(std::clamp(x[i] + g[i], 0.0, 1.0) - x[i]));
  }
  return r;
}

void check_lengths(const ExcitationSpectrum& s, const ProductStateParams& params) {
  if (params.probs.size() != static_cast<std::size_t>(s.n_qubits)) {
    throw DimensionError("parameter count " + std::to_string(params.probs.size()) +
                         " differs from spectrum qubit count " + std::to_string(s.n_qubits));
  }
  params.validate();
}

bool ties(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// Symmetric ansatz p_i = p: value, first and second derivative of the variance in p.
struct SymmetricEval {
  double value, d1, d2;
};

SymmetricEval symmetric_eval(const ExcitationSpectrum& s, double p) {
  const int n = s.n_qubits;
  const double q = 1.0 - p;
  auto power = [](double base, int exp) { return exp < 0 ? 0.0 : std::pow(base, exp); };
  double m1 = 0, m2 = 0, d1m1 = 0, d1m2 = 0, d2m1 = 0, d2m2 = 0;
  for (int e = 0; e <= n; ++e) {
    const double c = static_cast<double>(s.degeneracies[e]);
    const int a = n - e;  // power of p
    const int b = e;      // power of q
    const double P = c * power(p, a) * power(q, b);
    const double dP = c * (a * power(p, a - 1) * power(q, b) - b * power(p, a) * power(q, b - 1));
    const double d2P = c * (a * (a - 1) * power(p, a - 2) * power(q, b) -
                            2.0 * a * b * power(p, a - 1) * power(q, b - 1) +
                            b * (b - 1) * power(p, a) * power(q, b - 2));
    const double w = s.omegas[e];
    m1 += P * w;
    m2 += P * w * w;
    d1m1 += dP * w;
    d1m2 += dP * w * w;
    d2m1 += d2P * w;
    d2m2 += d2P * w * w;
  }
  return {m2 - m1 * m1, d1m2 - 2.0 * m1 * d1m1, d2m2 - 2.0 * d1m1 * d1m1 - 2.0 * m1 * d2m1};
}

// Safeguarded Newton on the derivative inside [lo, hi], where it changes sign.
double polish_symmetric(const ExcitationSpectrum& s, double x, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const auto ev = symmetric_eval(s, x);
    if (ev.d1 == 0.0) break;
    if (ev.d1 > 0.0) lo = x; else hi = x;
    double next = (ev.d2 < 0.0) ? x - ev.d1 / ev.d2 : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x || hi - lo <= 4 * std::numeric_limits<double>::epsilon()) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

struct Candidate {
  std::vector<double> probs;
  double value = -1.0;
};

Candidate ascend(const ExcitationSpectrum& s, std::vector<double> x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kTolerance = 1e-10;
  const std::size_t n = x.size();

  double f = raw_variance(s, x);
  auto g = raw_gradient(s, x);
  double step = 1.0;
  std::vector<double> y(n);
  for (int it = 0; it < kMaxIterations; ++it) {
    if (projected_residual(x, g) < kTolerance) break;

    double fy = 0.0;
    bool accepted = false;
    while (step > 1e-20) {
      double ascent = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::clamp(x[i] + step * g[i], 0.0, 1.0);
        ascent += g[i] * (y[i] - x[i]);
      }
      fy = raw_variance(s, y);
      if (fy >= f + 1e-4 * ascent) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    auto gy = raw_gradient(s, y);
    // Barzilai-Borwein step for the next iteration (ascent: curvature s.y < 0).
    double ss = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double si = y[i] - x[i];
      ss += si * si;
      sy += si * (gy[i] - g[i]);
    }
    step = (sy < 0.0) ? std::clamp(ss / -sy, 1e-10, 1e6) : std::min(step * 4.0, 1e6);
    x.swap(y);
    g = std::move(gy);
    f = fy;
  }
  return {std::move(x), f};
}

// Gaussian elimination with partial pivoting; false when singular.
bool solve_linear(std::vector<double> a, std::vector<double>& b) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    if (std::abs(a[pivot * n + col]) <= 1e-13 * scale) return false;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r * n + col] / a[col * n + col];
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r * n + c] * b[c];
    b[r] = acc / a[r * n + r];
  }
  return true;
}

}  // namespace

void ProductStateParams::validate() const {
  if (probs.empty()) throw DomainError("product state needs at least one qubit");
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("local probability outside [0, 1]");
  }
}

ProductStateParams ProductStateParams::uniform(int n_qubits, double p) {
  return {std::vector<double>(static_cast<std::size_t>(n_qubits), p)};
}

std::vector<double> excitation_distribution(const ProductStateParams& params) {
  params.validate();
  return distribution_excluding(params.probs, kNone, kNone);
}

double variance_product(const ExcitationSpectrum& spectrum, const ProductStateParams& params) {
  check_lengths(spectrum, params);
  return raw_variance(spectrum, params.probs);
}

std::vector<double> stationarity_residuals(const ExcitationSpectrum& spectrum,
                                           const ProductStateParams& params) {
  check_lengths(spectrum, params);
  return raw_gradient(spectrum, params.probs);
}

std::vector<double> variance_hessian(const ExcitationSpectrum& spectrum,
                                     const ProductStateParams& params) {
  check_lengths(spectrum, params);
  return raw_hessian(spectrum, params.probs);
}

OptimumReport optimize_symmetric(const ExcitationSpectrum& spectrum) {
  constexpr int kGrid = 10000;
  std::vector<double> values(kGrid);
  double best_value = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    values[i] = symmetric_eval(spectrum, static_cast<double>(i) / (kGrid - 1)).value;
    best_value = std::max(best_value, values[i]);
  }

  double best_p = 0.5;
  double polished_best = -1.0;
  const double threshold = best_value - 1e-6 * std::max(1.0, best_value);
  for (int i = 1; i + 1 < kGrid; ++i) {
    if (values[i] < threshold || values[i] < values[i - 1] || values[i] < values[i + 1]) continue;
    const double lo = static_cast<double>(i - 1) / (kGrid - 1);
    const double hi = static_cast<double>(i + 1) / (kGrid - 1);
    const double p = polish_symmetric(spectrum, static_cast<double>(i) / (kGrid - 1), lo, hi);
    const double v = symmetric_eval(spectrum, p).value;
    // mirror-image ties resolve toward the larger p
    if (v > polished_best && !ties(v, polished_best)) {
      polished_best = v;
      best_p = p;
    } else if (ties(v, polished_best) && p > best_p) {
      best_p = p;
      polished_best = std::max(v, polished_best);
    }
  }

  OptimumReport report;
  report.method = OptimumMethod::SymmetricScan;
  report.best_params = ProductStateParams::uniform(spectrum.n_qubits, best_p);
  report.best_qfi = 4.0 * raw_variance(spectrum, report.best_params.probs);
  report.stationarity_residual =
      projected_residual(report.best_params.probs, raw_gradient(spectrum, report.best_params.probs));
  return report;
}

OptimumReport solve_stationarity(const ExcitationSpectrum& spectrum,
                                 const ProductStateParams& start) {
  check_lengths(spectrum, start);
  const std::size_t n = start.probs.size();
  std::vector<double> x = start.probs;
  double f = raw_variance(spectrum, x);

  for (int it = 0; it < 50; ++it) {
    const auto g = raw_gradient(spectrum, x);
    if (projected_residual(x, g) <= 1e-15 * std::max(1.0, f)) break;

    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i) {
      const bool pinned_low = x[i] <= 0.0 && g[i] <= 0.0;
      const bool pinned_high = x[i] >= 1.0 && g[i] >= 0.0;
      if (!pinned_low && !pinned_high) free.push_back(i);
    }
    if (free.empty()) break;

    const auto h = raw_hessian(spectrum, x);
    const std::size_t m = free.size();
    std::vector<double> hf(m * m), rhs(m);
    for (std::size_t a = 0; a < m; ++a) {
      rhs[a] = -g[free[a]];
      for (std::size_t b = 0; b < m; ++b) hf[a * m + b] = h[free[a] * n + free[b]];
    }
    if (!solve_linear(std::move(hf), rhs)) break;

    std::vector<double> y = x;
    for (std::size_t a = 0; a < m; ++a) y[free[a]] = std::clamp(x[free[a]] + rhs[a], 0.0, 1.0);
    const double fy = raw_variance(spectrum, y);
    if (fy < f - 1e-13 * std::max(1.0, f)) break;
    const bool moved = y != x;
    x = std::move(y);
    f = std::max(f, fy);
    if (!moved) break;
  }

  OptimumReport report;
  report.method = OptimumMethod::StationaritySolve;
  report.best_params.probs = x;
  report.best_qfi = 4.0 * raw_variance(spectrum, x);
  report.stationarity_residual = projected_residual(x, raw_gradient(spectrum, x));
  return report;
}

OptimumReport optimize_full(const ExcitationSpectrum& spectrum, int n_starts, std::uint64_t seed) {
  const int n = spectrum.n_qubits;
  if (n > kMaxFullOptimizationQubits) {
    throw ResourceError("full optimization is limited to " +
                      std::to_string(kMaxFullOptimizationQubits) + " qubits");
  }
  if (n_starts < 0) throw DomainError("n_starts must be nonnegative");

  const OptimumReport symmetric = optimize_symmetric(spectrum);
  std::vector<std::vector<double>> starts;
  starts.push_back(symmetric.best_params.probs);
  for (int i = 0; i < n; ++i) {
    for (double delta : {-0.25, 0.25}) {
      auto x = symmetric.best_params.probs;
      x[i] = std::clamp(x[i] + delta, 0.0, 1.0);
      starts.push_back(std::move(x));
    }
  }
  for (int s = 0; s < n_starts; ++s) {
    StreamRng rng(seed, static_cast<std::uint64_t>(s));
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform();
    starts.push_back(std::move(x));
  }

  std::vector<Candidate> results(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    results[i] = ascend(spectrum, starts[i]);
    const auto polished = solve_stationarity(spectrum, ProductStateParams{results[i].probs});
    const double v = polished.best_qfi / 4.0;
    if (v >= results[i].value - 1e-12 * std::max(1.0, results[i].value)) {
      results[i] = {polished.best_params.probs, v};
    }
  });

  // Deterministic reduction: max value, then the most uniform point, then
  // lexicographically largest probs (same side as the symmetric tie-break).
  auto spread = [](const std::vector<double>& x) {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return *hi - *lo;
  };
  const Candidate* best = &results.front();
  for (const auto& c : results) {
    if (c.value > best->value && !ties(c.value, best->value)) {
      best = &c;
    } else if (ties(c.value, best->value)) {
      const double sc = spread(c.probs), sb = spread(best->probs);
      if (sc < sb - 1e-9 || (std::abs(sc - sb) <= 1e-9 && c.probs > best->probs)) best = &c;
    }
  }

  OptimumReport report;
  report.method = OptimumMethod::MultiStartGradient;
  report.best_params.probs = best->probs;
  report.best_qfi = 4.0 * raw_variance(spectrum, best->probs);
  report.stationarity_residual = projected_residual(best->probs, raw_gradient(spectrum, best->probs));
  return report;
}

double p_max_k2(int n) {
  if (n < 3) throw DomainError("p_max_k2 requires n >= 3");
  const double N = n;
  return (2.0 * N - 3.0 + std::sqrt(2.0 * N * N - 7.0 * N + 6.0)) / (4.0 * N - 6.0);
}

double f_max_k2(int n) {
  if (n < 3) throw DomainError("f_max_k2 requires n >= 3");
  const double N = n;
  return 2.0 * N * (N - 1.0) / (2.0 * (N - 2.0) + 1.0);
}

std::array<double, 5> symmetric_k2_variance_polynomial(int n) {
  if (n < 3) throw DomainError("the k=2 symmetric quartic requires n >= 3");
  const double N = n;
  const double f = 4.0 / (N - 1.0);
  return {0.0, f * N * (N - 1.0), -f * N * (5.0 * N - 7.0), f * 4.0 * N * (2.0 * N - 3.0),
          -f * 2.0 * N * (2.0 * N - 3.0)};
}

OptimumReport optimize_k2_closed_form(int n) {
  const auto poly = symmetric_k2_variance_polynomial(n);
  const auto best = maximize_quartic(poly, 0.0, 1.0);
  OptimumReport report;
  report.method = OptimumMethod::ClosedForm;
  report.best_params = ProductStateParams::uniform(n, best.argmax);
  report.best_qfi = 4.0 * best.value;
  const std::array<double, 4> derivative{poly[1], 2 * poly[2], 3 * poly[3], 4 * poly[4]};
  report.stationarity_residual = std::abs(evaluate_polynomial(derivative, best.argmax));
  return report;
}

std::array<double, 5> b12_polynomial(int n) {
  if (n < 3) throw DomainError("bound_b12 requires n >= 3");
  const double N = n;
  const double k = -16.0 * N / ((N + 1.0) * (N + 1.0));
  const double a = 2.0 * (N - 1.0) * (2.0 * N - 3.0);
  const double b = -2.0 * (N - 1.0) * (2.0 * N - 5.0);
  const double c = (N - 2.0) * (N - 2.0);
  // k (p^2 - p)(a p^2 + b p + c)
  return {0.0, -k * c, k * (c - b), k * (b - a), k * a};
}

double bound_b12(int n) {
  const auto poly = b12_polynomial(n);
  const auto best = maximize_quartic(poly, 0.0, 1.0);
  if (best.argmax > 0.0 && best.argmax < 1.0) return best.value;

  // No interior stationary point was recovered; scan instead.
  double value = 0.0;
  for (int i = 0; i <= 100000; ++i) value = std::max(value, evaluate_polynomial(poly, i * 1e-5));
  return value;
}

}  // namespace kbody
