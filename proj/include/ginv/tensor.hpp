// Copyright 2026 The ginv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra for operators on n qubits and k copies.
//
// Qubit 0 is the most significant bit of a basis index, so kron(a, b) places
// `a` on the leading qubits. Every matrix is row-major.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ginv {

using cplx = std::complex<double>;

/// Hermiticity, trace and PSD tolerance used throughout the library.
inline constexpr double kHermitianTol = 1e-10;
/// Unitarity tolerance for realized and sampled unitaries.
inline constexpr double kUnitaryTol = 1e-9;

/// Upper bound on a single dense allocation. Defaults to 2 GiB.
std::size_t memory_cap_bytes();
void set_memory_cap_bytes(std::size_t bytes);

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix. Throws CapacityError above the memory cap.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const cplx> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  cplx* data() { return entries_.data(); }
  const cplx* data() const { return entries_.data(); }
  std::span<const cplx> entries() const { return entries_; }
  std::span<cplx> entries() { return entries_; }
  const cplx* row(std::size_t r) const { return entries_.data() + r * cols_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

double frobenius_norm(const ComplexMatrix& a);
/// Frobenius norm of a - b.
double distance(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_imag(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol);
bool is_unitary(const ComplexMatrix& a, double tol = kUnitaryTol);
/// Tr[a b] without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t k);

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<cplx> amplitudes);

  static StateVector basis(std::size_t dim, std::size_t index);
  /// Normalizes `amplitudes`; throws DomainError on a zero vector.
  static StateVector normalized(std::vector<cplx> amplitudes);

  std::size_t dim() const { return amps_.size(); }
  std::size_t qubits() const;
  double norm() const;

  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const cplx> amplitudes() const { return amps_; }
  const cplx* data() const { return amps_.data(); }

  ComplexMatrix projector() const;

 private:
  std::vector<cplx> amps_;
};

StateVector kron(const StateVector& a, const StateVector& b);
StateVector tensor_power(const StateVector& psi, std::size_t k);
/// <a|b>
cplx inner(const StateVector& a, const StateVector& b);
/// u |psi>, without renormalization.
StateVector apply(const ComplexMatrix& u, const StateVector& psi);
/// Applies a 2x2 gate to one qubit of an n-qubit state.
StateVector apply_local(const ComplexMatrix& gate, std::size_t qubit, const StateVector& psi);
/// <psi| obs |psi>, real part.
double expectation(const StateVector& psi, const ComplexMatrix& obs);

class DensityMatrix {
 public:
  DensityMatrix() = default;
  /// Checks squareness, power-of-two dimension, Hermiticity and unit trace.
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t qubits);

  std::size_t qubits() const { return qubits_; }
  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  double purity() const;

  /// Full invariant check including the eigenvalue floor; throws DomainError.
  void validate() const;

 private:
  ComplexMatrix m_;
  std::size_t qubits_ = 0;
};

/// rho^{(x)k}. Throws CapacityError if the result would exceed the memory cap.
DensityMatrix tensor_power(const DensityMatrix& rho, std::size_t k);

/// Reduced state on `keep` (any order, treated as a set). An empty set yields
/// the 1x1 matrix [Tr rho].
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Eigenvalues ascending; eigenvectors are the columns of `vectors`.
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;
};
EigenDecomposition eigh(const ComplexMatrix& h);

/// exp(-i t h) from the eigendecomposition of h.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

/// Tr[rho obs], real part.
double expectation(const DensityMatrix& rho, const ComplexMatrix& obs);

std::size_t log2_exact(std::size_t dim);

}  // namespace ginv
