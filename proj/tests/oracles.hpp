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

// Brute-force reference computations used only by tests. Nothing here calls
// the library's kernels.
#ifndef GINV_TESTS_ORACLES_HPP
#define GINV_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "ginv/tensor.hpp"

namespace ginv::oracle {

using Dense = std::vector<std::vector<cplx>>;

inline Dense dense(const ComplexMatrix& m) {
  Dense out(m.rows(), std::vector<cplx>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

inline ComplexMatrix matrix(const Dense& d) {
  ComplexMatrix out(d.size(), d.empty() ? 0 : d[0].size());
  for (std::size_t r = 0; r < d.size(); ++r)
    for (std::size_t c = 0; c < d[r].size(); ++c) out(r, c) = d[r][c];
  return out;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx acc = 0.0;
      for (std::size_t l = 0; l < a.cols(); ++l) acc += a(i, l) * b(l, j);
      out(i, j) = acc;
    }
  return out;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline cplx trace(const ComplexMatrix& a) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

/// Partial trace by explicit enumeration of all bit strings. Qubit 0 is the MSB.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t n, const std::vector<std::size_t>& keep) {
  const std::size_t dk = std::size_t{1} << keep.size();
  ComplexMatrix out(dk, dk);
  auto bit = [&](std::size_t x, std::size_t q) { return (x >> (n - 1 - q)) & 1U; };
  auto is_kept = [&](std::size_t q) {
    for (std::size_t k : keep)
      if (k == q) return true;
    return false;
  };
  auto reduced = [&](std::size_t x) {
    std::size_t r = 0;
    for (std::size_t k : keep) r = (r << 1) | bit(x, k);
    return r;
  };
  const std::size_t d = std::size_t{1} << n;
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      bool traced_equal = true;
      for (std::size_t q = 0; q < n && traced_equal; ++q)
        if (!is_kept(q) && bit(x, q) != bit(y, q)) traced_equal = false;
      if (traced_equal) out(reduced(x), reduced(y)) += rho(x, y);
    }
  return out;
}

inline double purity(const ComplexMatrix& rho) { return trace(matmul(rho, rho)).real(); }

inline ComplexMatrix projector(const std::vector<cplx>& v) {
  ComplexMatrix out(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = v[i] * std::conj(v[j]);
  return out;
}

/// Reduced purity Tr[rho_alpha^2] of a pure state; the empty subset gives 1.
inline double subset_purity(const std::vector<cplx>& psi, std::size_t n, const std::vector<std::size_t>& subset) {
  if (subset.empty()) return 1.0;
  return purity(partial_trace(projector(psi), n, subset));
}

inline std::vector<std::size_t> subset_from_mask(std::size_t mask, std::size_t n) {
  std::vector<std::size_t> s;
  for (std::size_t q = 0; q < n; ++q)
    if (mask & (std::size_t{1} << q)) s.push_back(q);
  return s;
}

inline double concentratable(const std::vector<cplx>& psi, std::size_t n, const std::vector<std::size_t>& q_set) {
  double sum = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << q_set.size()); ++mask) {
    std::vector<std::size_t> alpha;
    for (std::size_t i = 0; i < q_set.size(); ++i)
      if (mask & (std::size_t{1} << i)) alpha.push_back(q_set[i]);
    sum += subset_purity(psi, n, alpha);
  }
  return 1.0 - sum / static_cast<double>(std::size_t{1} << q_set.size());
}

inline double ntangle(const std::vector<cplx>& psi, std::size_t n) {
  double sum = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    const auto alpha = subset_from_mask(mask, n);
    sum += (alpha.size() % 2 ? -1.0 : 1.0) * subset_purity(psi, n, alpha);
  }
  return 1.0 - sum / static_cast<double>(std::size_t{1} << n);
}

inline double meyer_wallach(const std::vector<cplx>& psi, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += 1.0 - subset_purity(psi, n, {j});
  return 2.0 * s / static_cast<double>(n);
}

/// <Phi+|psi (x) psi> for the unit-norm Bell state: sum_j psi_j^2 / sqrt(d).
inline cplx bell_overlap(const std::vector<cplx>& psi) {
  cplx s = 0.0;
  for (cplx a : psi) s += a * a;
  return s / std::sqrt(static_cast<double>(psi.size()));
}

/// exp(-i t (a X + b Y + c Z)) for real unit (a, b, c) in closed form.
inline ComplexMatrix pauli_exponential(double t, double a, double b, double c) {
  const cplx i(0.0, 1.0);
  const double co = std::cos(t);
  const double si = std::sin(t);
  return ComplexMatrix{{co - i * si * c, -i * si * cplx(a, -b)}, {-i * si * cplx(a, b), co + i * si * c}};
}

inline ComplexMatrix random_matrix(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(d, rng);
  ComplexMatrix h(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

/// Random full-rank density matrix A A^dag / Tr.
inline ComplexMatrix random_density(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(d, rng);
  ComplexMatrix r = matmul(a, dagger(a));
  const cplx t = trace(r);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) r(i, j) /= t;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) r(j, i) = std::conj(r(i, j));
  for (std::size_t i = 0; i < d; ++i) r(i, i) = r(i, i).real();
  return r;
}

inline std::vector<cplx> random_vector(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(d);
  double nrm = 0.0;
  for (auto& a : v) {
    a = cplx(g(rng), g(rng));
    nrm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(nrm);
  return v;
}

inline double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace ginv::oracle

#endif  // GINV_TESTS_ORACLES_HPP
