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

#include "kbody/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "kbody/errors.hpp"

namespace kbody {
namespace {

// std::complex multiplication carries inf/nan recovery that dominates the Jacobi inner loops.
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw DimensionError("matrix product dimension mismatch");
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    auto out_row = out.row(r);
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex a = (*this)(r, k);
      if (a == Complex{}) continue;
      const auto rhs_row = rhs.row(k);
      for (std::size_t c = 0; c < dim_; ++c) out_row[c] += cmul(a, rhs_row[c]);
    }
  }
  return out;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != dim_) throw DimensionError("matrix-vector dimension mismatch");
  std::vector<Complex> out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex acc{};
    const auto rr = row(r);
    for (std::size_t c = 0; c < dim_; ++c) acc += cmul(rr[c], v[c]);
    out[r] = acc;
  }
  return out;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
  double m = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

DenseOperator DenseOperator::from_matrix(ComplexMatrix m) {
  if (!is_power_of_two(m.dim())) throw DimensionError("operator dimension must be a power of two");
  if (m.hermiticity_defect() >= 1e-12 * std::max(1.0, m.max_abs())) {
    throw DomainError("operator is not Hermitian");
  }
  bool diagonal = true;
  for (std::size_t r = 0; r < m.dim() && diagonal; ++r)
    for (std::size_t c = 0; c < m.dim(); ++c)
      if (r != c && m(r, c) != Complex{}) {
        diagonal = false;
        break;
      }
  return DenseOperator{std::move(m), diagonal};
}

std::array<Complex, 4> axis_rotation(const std::array<double, 3>& axis) {
  const double theta = std::acos(std::clamp(axis[2], -1.0, 1.0));
  const double phi = std::atan2(axis[1], axis[0]);
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const Complex e = std::polar(1.0, phi);
  return {Complex{c}, -std::conj(e) * s, e * s, Complex{c}};
}

DenseOperator build_dense(const HamiltonianSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;
  if (n > kMaxDenseQubits) {
    throw ResourceError("dense operators are limited to " + std::to_string(kMaxDenseQubits) +
                        " qubits, got " + std::to_string(n));
  }
  const std::size_t dim = std::size_t{1} << n;

  // For every support S of size k' the string prod_{i in S} sigma_z acts on |idx> as
  // (-1)^{popcount(idx & S)}; tally those signs per order in exact integers.
  std::vector<double> diag(dim, 0.0);
  std::vector<std::int64_t> tally(dim);
  for (const auto& [order, weight] : spec.couplings) {
    if (weight == 0.0) continue;
    std::fill(tally.begin(), tally.end(), 0);
    for (std::size_t support = 0; support < dim; ++support) {
      if (std::popcount(support) != order) continue;
      for (std::size_t idx = 0; idx < dim; ++idx) {
        tally[idx] += (std::popcount(idx & support) & 1) ? -1 : 1;
      }
    }
    const double supports = static_cast<double>(degeneracy(n, order));
    const double prefactor = weight * n / (2.0 * supports);
    for (std::size_t idx = 0; idx < dim; ++idx) diag[idx] += prefactor * tally[idx];
  }

  if (spec.normalization == Normalization::OperatorNormHalfN) {
    double max_abs = 0.0;
    for (double d : diag) max_abs = std::max(max_abs, std::abs(d));
    if (max_abs == 0.0) throw DegenerateSpecError("operator vanishes identically");
    const double scale = 0.5 * n / max_abs;
    for (double& d : diag) d *= scale;
  }

  const auto& axis = spec.axis;
  if (axis[0] == 0.0 && axis[1] == 0.0 && axis[2] > 0.0) {
    return DenseOperator{ComplexMatrix::diagonal(diag), true};
  }

  // A = U^{(x)N} D U^{(x)N dagger}, one qubit at a time on rows then columns.
  const auto u = axis_rotation(axis);
  ComplexMatrix a = ComplexMatrix::diagonal(diag);
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    for (std::size_t r0 = 0; r0 < dim; ++r0) {
      if (r0 & bit) continue;
      const std::size_t r1 = r0 | bit;
      auto row0 = a.row(r0);
      auto row1 = a.row(r1);
      for (std::size_t c = 0; c < dim; ++c) {
        const Complex x = row0[c];
        const Complex y = row1[c];
        row0[c] = cmul(u[0], x) + cmul(u[1], y);
        row1[c] = cmul(u[2], x) + cmul(u[3], y);
      }
    }
    const Complex u00 = std::conj(u[0]), u01 = std::conj(u[1]);
    const Complex u10 = std::conj(u[2]), u11 = std::conj(u[3]);
    for (std::size_t r = 0; r < dim; ++r) {
      auto row = a.row(r);
      for (std::size_t c0 = 0; c0 < dim; ++c0) {
        if (c0 & bit) continue;
        const std::size_t c1 = c0 | bit;
        const Complex x = row[c0];
        const Complex y = row[c1];
        row[c0] = cmul(u00, x) + cmul(u01, y);
        row[c1] = cmul(u10, x) + cmul(u11, y);
      }
    }
  }
  for (std::size_t r = 0; r < dim; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < dim; ++c) {
      const Complex avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  return DenseOperator{std::move(a), false};
}

EigenDecomposition eigendecompose_hermitian(const DenseOperator& a) {
  return eigendecompose_hermitian(a.matrix);
}

EigenDecomposition eigendecompose_hermitian(const ComplexMatrix& input) {
  const std::size_t dim = input.dim();
  if (dim == 0) throw DimensionError("empty matrix");
  if (dim > kMaxEigenDim) throw ResourceError("matrix too large for the Jacobi eigensolver");
  if (input.hermiticity_defect() >= 1e-12 * std::max(1.0, input.max_abs())) {
    throw DomainError("eigendecompose_hermitian: matrix is not Hermitian");
  }

  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(dim);
  const double norm = a.frobenius_norm();
  const double tol = 1e-14 * norm;

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = r + 1; c < dim; ++c) s += std::norm(a(r, c));
    return std::sqrt(2.0 * s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (;; ++sweep) {
    if (off_diagonal() <= tol) break;
    if (sweep == kMaxSweeps) {
      throw NumericError("Jacobi eigensolver did not converge in " + std::to_string(kMaxSweeps) +
                         " sweeps");
    }
    for (std::size_t p = 0; p + 1 < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const Complex g = a(p, q);
        const double mag = std::abs(g);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a(p, q) = a(q, p) = Complex{};
          continue;
        }
        const Complex phase = g / mag;
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex s_phase = s * phase;             // W(p,q)
        const Complex s_conj = s * std::conj(phase);   // -W(q,p)

        // A <- A W
        for (std::size_t r = 0; r < dim; ++r) {
          const Complex x = a(r, p);
          const Complex y = a(r, q);
          a(r, p) = c * x - cmul(s_conj, y);
          a(r, q) = cmul(s_phase, x) + c * y;
        }
        // A <- W^dagger A
        auto row_p = a.row(p);
        auto row_q = a.row(q);
        for (std::size_t col = 0; col < dim; ++col) {
          const Complex x = row_p[col];
          const Complex y = row_q[col];
          row_p[col] = c * x - cmul(s_phase, y);
          row_q[col] = cmul(s_conj, x) + c * y;
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = a(q, p) = Complex{};
        // V <- V W
        for (std::size_t r = 0; r < dim; ++r) {
          const Complex x = v(r, p);
          const Complex y = v(r, q);
          v(r, p) = c * x - cmul(s_conj, y);
          v(r, q) = cmul(s_phase, x) + c * y;
        }
      }
    }
  }

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.eigenvalues.resize(dim);
  out.eigenvectors = ComplexMatrix(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < dim; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

namespace {

inline double conj_of(double x) { return x; }
inline Complex conj_of(Complex x) { return std::conj(x); }
inline double mul(double a, double b) { return a * b; }
inline Complex mul(Complex a, Complex b) { return cmul(a, b); }

// Householder reduction of a Hermitian matrix stored row-major; only the lower
// triangle is read or written. On return d holds the diagonal and e[i] = |a(i+1, i)|.
template <typename T>
void tridiagonalize(std::vector<T>& a, int n, std::vector<double>& d, std::vector<double>& e) {
  auto at = [&](int r, int c) -> T& { return a[static_cast<std::size_t>(r) * n + c]; };
  std::vector<T> v(n), p(n);
  for (int k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (int r = k + 1; r < n; ++r) xnorm += std::norm(at(r, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const T x0 = at(k + 1, k);
    const T phase = std::abs(x0) == 0.0 ? T(1.0) : x0 / std::abs(x0);
    const T alpha = -phase * xnorm;

    double vnorm = 0.0;
    for (int r = k + 1; r < n; ++r) {
      v[r] = at(r, k) - (r == k + 1 ? alpha : T{});
      vnorm += std::norm(v[r]);
    }
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (int r = k + 1; r < n; ++r) v[r] /= vnorm;

    // p = A v from the lower triangle
    std::fill(p.begin() + k + 1, p.end(), T{});
    for (int r = k + 1; r < n; ++r) {
      const T* row = &at(r, 0);
      T acc{};
      const T vr = v[r];
      for (int c = k + 1; c < r; ++c) {
        acc += mul(row[c], v[c]);
        p[c] += mul(conj_of(row[c]), vr);
      }
      p[r] += acc + mul(row[r], vr);
    }
    T kappa{};
    for (int r = k + 1; r < n; ++r) kappa += mul(conj_of(v[r]), p[r]);
    // w = p - (v^dagger p) v, then A <- A - 2 (v w^dagger + w v^dagger)
    for (int r = k + 1; r < n; ++r) p[r] -= std::real(kappa) * v[r];
    for (int r = k + 1; r < n; ++r) {
      T* row = &at(r, 0);
      const T vr = 2.0 * v[r];
      const T wr = 2.0 * p[r];
      for (int c = k + 1; c <= r; ++c) row[c] -= mul(vr, conj_of(p[c])) + mul(wr, conj_of(v[c]));
    }
    at(k + 1, k) = alpha;
  }
  for (int i = 0; i < n; ++i) d[i] = std::real(at(i, i));
  for (int i = 0; i + 1 < n; ++i) e[i] = std::abs(at(i + 1, i));
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& input) {
  const std::size_t dim = input.dim();
  if (dim == 0) throw DimensionError("empty matrix");
  if (dim > kMaxEigenDim) throw ResourceError("matrix too large for the eigensolver");
  if (input.hermiticity_defect() >= 1e-12 * std::max(1.0, input.max_abs())) {
    throw DomainError("hermitian_eigenvalues: matrix is not Hermitian");
  }
  const int n = static_cast<int>(dim);

  std::vector<double> d(dim), e(dim, 0.0);
  bool real = true;
  for (std::size_t r = 0; r < dim && real; ++r)
    for (std::size_t c = 0; c <= r; ++c)
      if (input(r, c).imag() != 0.0) {
        real = false;
        break;
      }
  if (real) {
    std::vector<double> a(dim * dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c <= r; ++c) a[r * dim + c] = input(r, c).real();
    tridiagonalize(a, n, d, e);
  } else {
    std::vector<Complex> a(dim * dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c <= r; ++c) a[r * dim + c] = input(r, c);
    tridiagonalize(a, n, d, e);
  }

  // A diagonal phase similarity has made the subdiagonal real and nonnegative.
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[i]) + std::abs(e[i]));
  const double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= eps * scale) break;
      }
      if (m == l) break;
      if (++iter > 60) throw NumericError("tridiagonal QL iteration did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, shift = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= shift;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - shift;
        r = (d[i] - g) * s + 2.0 * c * b;
        shift = s * r;
        d[i + 1] = g + shift;
        g = c * r - b;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= shift;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace kbody
