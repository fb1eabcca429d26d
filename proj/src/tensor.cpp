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

#include "ginv/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "eigen_bridge.hpp"
#include "ginv/error.hpp"
#include "ginv/kernels.hpp"

namespace ginv {
namespace {

std::atomic<std::size_t> g_memory_cap{std::size_t{2} << 30};

void check_allocation(std::size_t rows, std::size_t cols) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  if (cols != 0 && rows > kMax / cols) throw CapacityError("matrix dimension overflow");
  const std::size_t count = rows * cols;
  if (count > kMax / sizeof(cplx) || count * sizeof(cplx) > memory_cap_bytes()) {
    throw CapacityError("allocation of " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " complex matrix exceeds the memory cap");
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
  }
}

}  // namespace

std::size_t memory_cap_bytes() { return g_memory_cap.load(std::memory_order_relaxed); }
void set_memory_cap_bytes(std::size_t bytes) {
  g_memory_cap.store(bytes, std::memory_order_relaxed);
}

std::size_t log2_exact(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_allocation(rows, cols);
  entries_.assign(rows * cols, cplx{});
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw DimensionError("entry count does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix out(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto& v : out.entries_) v = std::conj(v);
  return out;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  cplx t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "matrix addition");
  kernels::active_kernels().axpy(1.0, o.data(), data(), size());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "matrix subtraction");
  kernels::active_kernels().axpy(-1.0, o.data(), data(), size());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& v : entries_) v *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: inner dimensions " + std::to_string(a.cols()) +
                         " and " + std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix c(a.rows(), b.cols());
  kernels::active_kernels().gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

// ---------------------------------------------------------------------------
// Free matrix functions

double frobenius_norm(const ComplexMatrix& a) {
  return std::sqrt(kernels::active_kernels().dotc(a.data(), a.data(), a.size()).real());
}

double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(s);
}

double max_abs_imag(const ComplexMatrix& a) {
  double m = 0.0;
  for (const auto& v : a.entries()) m = std::max(m, std::abs(v.imag()));
  return m;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) return false;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = r; c < a.cols(); ++c) {
      if (std::abs(a(r, c) - std::conj(a(c, r))) > tol) return false;
    }
  }
  return true;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) return false;
  return distance(a * a.adjoint(), ComplexMatrix::identity(a.rows())) < tol;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_product: incompatible shapes");
  }
  const ComplexMatrix bt = b.transpose();
  return kernels::active_kernels().dotu(a.data(), bt.data(), a.size());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  const auto& k = kernels::active_kernels();
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx s = a(ar, ac);
      if (s == cplx{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        cplx* dst = out.data() + (ar * b.rows() + br) * out.cols() + ac * b.cols();
        k.axpy(s, b.row(br), dst, b.cols());
      }
    }
  }
  return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t k) {
  if (k == 0) throw DomainError("kron_power requires k >= 1");
  ComplexMatrix out = a;
  for (std::size_t i = 1; i < k; ++i) out = kron(out, a);
  return out;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw DimensionError("state vector must have positive dimension");
  if (std::abs(norm() - 1.0) > 1e-12) {
    throw DomainError("state vector norm deviates from 1 by " +
                      std::to_string(std::abs(norm() - 1.0)));
  }
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DomainError("basis index out of range");
  std::vector<cplx> v(dim);
  v[index] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::normalized(std::vector<cplx> amplitudes) {
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  if (!(n2 > 0.0)) throw DomainError("cannot normalize a zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes) a *= inv;
  return StateVector(std::move(amplitudes));
}

std::size_t StateVector::qubits() const { return log2_exact(dim()); }

double StateVector::norm() const {
  return std::sqrt(kernels::active_kernels().dotc(amps_.data(), amps_.data(), amps_.size()).real());
}

ComplexMatrix StateVector::projector() const {
  ComplexMatrix out(dim(), dim());
  for (std::size_t r = 0; r < dim(); ++r) {
    for (std::size_t c = 0; c < dim(); ++c) out(r, c) = amps_[r] * std::conj(amps_[c]);
  }
  return out;
}

StateVector kron(const StateVector& a, const StateVector& b) {
  std::vector<cplx> v(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) v[i * b.dim() + j] = a[i] * b[j];
  }
  return StateVector::normalized(std::move(v));
}

StateVector tensor_power(const StateVector& psi, std::size_t k) {
  if (k == 0) throw DomainError("tensor_power requires k >= 1");
  StateVector out = psi;
  for (std::size_t i = 1; i < k; ++i) out = kron(out, psi);
  return out;
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("inner product: dimension mismatch");
  return kernels::active_kernels().dotc(a.data(), b.data(), a.dim());
}

namespace {
std::vector<cplx> matvec(const ComplexMatrix& u, std::span<const cplx> psi) {
  if (u.cols() != psi.size()) throw DimensionError("matrix-vector product: dimension mismatch");
  const auto& k = kernels::active_kernels();
  std::vector<cplx> out(u.rows());
  for (std::size_t r = 0; r < u.rows(); ++r) out[r] = k.dotu(u.row(r), psi.data(), psi.size());
  return out;
}
}  // namespace

StateVector apply(const ComplexMatrix& u, const StateVector& psi) {
  return StateVector::normalized(matvec(u, psi.amplitudes()));
}

StateVector apply_local(const ComplexMatrix& gate, std::size_t qubit, const StateVector& psi) {
  if (gate.rows() != 2 || gate.cols() != 2) throw DimensionError("apply_local expects a 2x2 gate");
  const std::size_t n = psi.qubits();
  if (qubit >= n) throw DomainError("apply_local: qubit index out of range");
  const std::size_t stride = std::size_t{1} << (n - 1 - qubit);
  std::vector<cplx> out(psi.amplitudes().begin(), psi.amplitudes().end());
  for (std::size_t base = 0; base < out.size(); ++base) {
    if (base & stride) continue;
    const cplx a0 = psi[base];
    const cplx a1 = psi[base | stride];
    out[base] = gate(0, 0) * a0 + gate(0, 1) * a1;
    out[base | stride] = gate(1, 0) * a0 + gate(1, 1) * a1;
  }
  return StateVector::normalized(std::move(out));
}

double expectation(const StateVector& psi, const ComplexMatrix& obs) {
  if (!obs.is_square() || obs.rows() != psi.dim()) {
    throw DimensionError("expectation: observable dimension " + std::to_string(obs.rows()) +
                         " does not match state dimension " + std::to_string(psi.dim()));
  }
  const std::vector<cplx> o_psi = matvec(obs, psi.amplitudes());
  return kernels::active_kernels().dotc(psi.data(), o_psi.data(), psi.dim()).real();
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw DimensionError("density matrix must be square");
  qubits_ = log2_exact(m_.rows());
  if (!is_hermitian(m_)) throw DomainError("density matrix is not Hermitian");
  if (std::abs(m_.trace() - 1.0) > kHermitianTol) {
    throw DomainError("density matrix trace deviates from 1");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t qubits) {
  const std::size_t d = std::size_t{1} << qubits;
  return DensityMatrix(ComplexMatrix::identity(d) * cplx(1.0 / static_cast<double>(d)));
}

double DensityMatrix::purity() const { return trace_product(m_, m_).real(); }

void DensityMatrix::validate() const {
  if (!is_hermitian(m_)) throw DomainError("density matrix is not Hermitian");
  if (std::abs(m_.trace() - 1.0) > kHermitianTol) throw DomainError("trace deviates from 1");
  const auto eig = eigh(m_);
  if (eig.values.front() < -kHermitianTol) {
    throw DomainError("density matrix has eigenvalue " + std::to_string(eig.values.front()));
  }
}

DensityMatrix tensor_power(const DensityMatrix& rho, std::size_t k) {
  if (k == 0) throw DomainError("tensor_power requires k >= 1");
  // Check the final size before building intermediates.
  std::size_t dim = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (dim > std::numeric_limits<std::size_t>::max() / rho.dim()) {
      throw CapacityError("tensor power dimension overflow");
    }
    dim *= rho.dim();
  }
  check_allocation(dim, dim);
  return DensityMatrix(kron_power(rho.matrix(), k));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const std::size_t m = rho.qubits();
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw DomainError("partial_trace: duplicate qubit index");
  }
  for (std::size_t q : kept) {
    if (q >= m) {
      throw DomainError("partial_trace: qubit index " + std::to_string(q) + " out of range for " +
                        std::to_string(m) + " qubits");
    }
  }
  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < m; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }

  // Scatter tables: a local index over a qubit subset -> its bits in the full index.
  auto scatter = [m](const std::vector<std::size_t>& qubits) {
    const std::size_t count = std::size_t{1} << qubits.size();
    std::vector<std::size_t> table(count);
    for (std::size_t local = 0; local < count; ++local) {
      std::size_t full = 0;
      for (std::size_t i = 0; i < qubits.size(); ++i) {
        const std::size_t bit = (local >> (qubits.size() - 1 - i)) & 1U;
        full |= bit << (m - 1 - qubits[i]);
      }
      table[local] = full;
    }
    return table;
  };
  const auto keep_idx = scatter(kept);
  const auto trace_idx = scatter(traced);

  const std::size_t out_dim = keep_idx.size();
  ComplexMatrix out(out_dim, out_dim);
  const ComplexMatrix& src = rho.matrix();
  for (std::size_t a = 0; a < out_dim; ++a) {
    for (std::size_t b = 0; b < out_dim; ++b) {
      cplx s{};
      for (std::size_t t : trace_idx) s += src(keep_idx[a] | t, keep_idx[b] | t);
      out(a, b) = s;
    }
  }
  return DensityMatrix(std::move(out));
}

EigenDecomposition eigh(const ComplexMatrix& h) {
  if (!h.is_square()) throw DimensionError("eigh requires a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen(h));
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  EigenDecomposition out;
  out.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + solver.eigenvalues().size());
  out.vectors = detail::from_eigen(solver.eigenvectors());
  return out;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  if (!is_hermitian(h)) throw DomainError("expm_hermitian: input is not Hermitian");
  const auto eig = eigh(h);
  const std::size_t d = h.rows();
  // V diag(e^{-i t lambda}) V^dagger
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t c = 0; c < d; ++c) {
    const cplx phase = std::exp(cplx(0.0, -t * eig.values[c]));
    for (std::size_t r = 0; r < d; ++r) scaled(r, c) *= phase;
  }
  return scaled * eig.vectors.adjoint();
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& obs) {
  if (!obs.is_square() || obs.rows() != rho.dim()) {
    throw DimensionError("expectation: observable dimension " + std::to_string(obs.rows()) +
                         " does not match state dimension " + std::to_string(rho.dim()));
  }
  return trace_product(rho.matrix(), obs).real();
}

}  // namespace ginv
