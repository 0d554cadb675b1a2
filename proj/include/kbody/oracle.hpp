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
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "kbody/spectrum.hpp"

namespace kbody {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<Complex> row(std::size_t r) { return {data_.data() + r * dim_, dim_}; }
  std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * dim_, dim_}; }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  std::vector<Complex> apply(std::span<const Complex> v) const;

  double max_abs() const;
  double frobenius_norm() const;
  /// max |A - A^dagger| entrywise.
  double hermiticity_defect() const;
  Complex trace() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Hermitian operator on 2^N amplitudes. Basis index bit (N-1-q) is qubit q,
/// so qubit 0 is the most significant bit and |0> precedes |1>.
struct DenseOperator {
  ComplexMatrix matrix;
  bool is_diagonal = false;

  std::size_t dim() const { return matrix.dim(); }

  /// Validates Hermiticity (1e-12) and power-of-two dimension.
  static DenseOperator from_matrix(ComplexMatrix m);
};

inline constexpr int kMaxDenseQubits = 12;
inline constexpr std::size_t kMaxEigenDim = 4096;

/// Materializes the family Hamiltonian as a 2^N matrix by brute force over all
/// Pauli-string supports. Throws ResourceError for N > 12.
DenseOperator build_dense(const HamiltonianSpec& spec);

/// Single-qubit unitary U with U sigma_z U^dagger = n.sigma.
std::array<Complex, 4> axis_rotation(const std::array<double, 3>& axis);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column i belongs to eigenvalues[i]
  int sweeps = 0;
};

/// Cyclic complex Jacobi. Stops once the off-diagonal Frobenius mass falls
/// below 1e-14 ||A||_F; at most 100 sweeps.
EigenDecomposition eigendecompose_hermitian(const ComplexMatrix& a);
EigenDecomposition eigendecompose_hermitian(const DenseOperator& a);

/// Eigenvalues only (ascending): Householder tridiagonalization, then implicit QL.
/// O(dim^3) with contiguous access; preferred over Jacobi for large operators.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

}  // namespace kbody
