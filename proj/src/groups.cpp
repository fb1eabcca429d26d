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

#include "ginv/groups.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eigen_bridge.hpp"
#include "ginv/error.hpp"

namespace ginv {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over base + golden-ratio stride
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix haar_unitary(std::size_t d, Stream& stream) {
  if (d == 0) throw DomainError("haar_unitary requires d >= 1");
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
      const double re = gauss(stream);
      const double im = gauss(stream);
      g(r, c) = cplx(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(g.rows(), g.cols());
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    const cplx diag = r(c, c);
    const double mag = std::abs(diag);
    q.col(c) *= mag > 0.0 ? diag / mag : cplx(1.0);
  }
  return detail::from_eigen(q);
}

ComplexMatrix haar_orthogonal(std::size_t d, Stream& stream) {
  if (d == 0) throw DomainError("haar_orthogonal requires d >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = gauss(stream);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(g.rows(), g.cols());
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    if (r(c, c) < 0.0) q.col(c) *= -1.0;
  }
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      out(i, j) = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

StateVector haar_state(std::size_t d, Stream& stream) {
  if (d == 0) throw DomainError("haar_state requires d >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> v(d);
  for (auto& a : v) {
    const double re = gauss(stream);
    const double im = gauss(stream);
    a = cplx(re, im);
  }
  return StateVector::normalized(std::move(v));
}

// ---------------------------------------------------------------------------
// Permutations

bool is_permutation(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw DomainError("compose: size mismatch");
  Permutation out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

Permutation inverse(const Permutation& perm) {
  Permutation out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = i;
  return out;
}

std::size_t permute_index(std::size_t index, std::span<const std::size_t> perm,
                          std::size_t bits_per_subsystem) {
  const std::size_t m = perm.size();
  const std::size_t mask = (std::size_t{1} << bits_per_subsystem) - 1;
  std::size_t out = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t digit = (index >> (bits_per_subsystem * (m - 1 - i))) & mask;
    out |= digit << (bits_per_subsystem * (m - 1 - perm[i]));
  }
  return out;
}

PermutationOp permutation_operator(const Permutation& perm, PermutationTarget target,
                                   std::size_t qubits_per_copy) {
  if (perm.empty() || !is_permutation(perm)) throw DomainError("invalid permutation");
  const std::size_t bits = target == PermutationTarget::Copies ? qubits_per_copy : 1;
  if (bits == 0) throw DomainError("permutation_operator: copies need at least one qubit");
  const std::size_t total_bits = bits * perm.size();
  if (total_bits >= 8 * sizeof(std::size_t)) throw CapacityError("permutation operator too large");
  const std::size_t dim = std::size_t{1} << total_bits;
  PermutationOp op{perm, target, std::size_t{1} << bits, ComplexMatrix(dim, dim)};
  for (std::size_t x = 0; x < dim; ++x) op.matrix(permute_index(x, perm, bits), x) = 1.0;
  return op;
}

StateVector bell_state(std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  std::vector<cplx> v(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) v[j * d + j] = amp;
  return StateVector::normalized(std::move(v));
}

std::array<ComplexMatrix, 3> brauer_basis_k2(std::size_t n) {
  if (n == 0) throw DomainError("brauer_basis_k2 requires n >= 1");
  const std::size_t d = std::size_t{1} << n;
  return {ComplexMatrix::identity(d * d),
          permutation_operator({1, 0}, PermutationTarget::Copies, n).matrix,
          bell_state(n).projector()};
}

// ---------------------------------------------------------------------------
// GroupSampler

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Unitary: return "unitary";
    case GroupKind::Orthogonal: return "orthogonal";
    case GroupKind::LocalUnitary: return "local_unitary";
    case GroupKind::Symmetric: return "symmetric";
  }
  return "?";
}

GroupSampler::GroupSampler(GroupKind kind, std::size_t parameter, std::uint64_t seed)
    : kind_(kind), parameter_(parameter), seed_(seed), stream_(seed) {
  if (parameter == 0) throw DomainError("group degree must be positive");
}

GroupSampler GroupSampler::unitary(std::size_t d, std::uint64_t seed) {
  return GroupSampler(GroupKind::Unitary, d, seed);
}
GroupSampler GroupSampler::orthogonal(std::size_t d, std::uint64_t seed) {
  return GroupSampler(GroupKind::Orthogonal, d, seed);
}
GroupSampler GroupSampler::local_unitary(std::size_t n, std::uint64_t seed) {
  return GroupSampler(GroupKind::LocalUnitary, n, seed);
}
GroupSampler GroupSampler::symmetric(std::size_t n, std::uint64_t seed) {
  return GroupSampler(GroupKind::Symmetric, n, seed);
}
GroupSampler GroupSampler::permutations(std::size_t n, std::vector<Permutation> elements,
                                        std::uint64_t seed) {
  if (elements.empty()) throw DomainError("permutation subset must be nonempty");
  for (const auto& p : elements) {
    if (p.size() != n || !is_permutation(p)) throw DomainError("invalid permutation in subset");
  }
  GroupSampler s(GroupKind::Symmetric, n, seed);
  s.subset_ = std::move(elements);
  return s;
}

std::size_t GroupSampler::degree() const {
  switch (kind_) {
    case GroupKind::Unitary:
    case GroupKind::Orthogonal: return parameter_;
    case GroupKind::LocalUnitary:
    case GroupKind::Symmetric: return std::size_t{1} << parameter_;
  }
  return 0;
}

ComplexMatrix GroupSampler::next() {
  switch (kind_) {
    case GroupKind::Unitary: return haar_unitary(parameter_, stream_);
    case GroupKind::Orthogonal: return haar_orthogonal(parameter_, stream_);
    case GroupKind::LocalUnitary: {
      ComplexMatrix v = haar_unitary(2, stream_);
      for (std::size_t j = 1; j < parameter_; ++j) v = kron(v, haar_unitary(2, stream_));
      return v;
    }
    case GroupKind::Symmetric: {
      if (!subset_.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, subset_.size() - 1);
        return permutation_operator(subset_[pick(stream_)], PermutationTarget::Qubits).matrix;
      }
      Permutation p(parameter_);
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
      for (std::size_t i = p.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(p[i - 1], p[pick(stream_)]);
      }
      return permutation_operator(p, PermutationTarget::Qubits).matrix;
    }
  }
  throw DomainError("unknown group kind");
}

GroupSampler GroupSampler::fork(std::uint64_t index) const {
  GroupSampler s(kind_, parameter_, derive_seed(seed_, index));
  s.subset_ = subset_;
  return s;
}

std::vector<ComplexMatrix> GroupSampler::exact_generators() const {
  std::vector<ComplexMatrix> out;
  if (kind_ != GroupKind::Symmetric) return out;
  if (!subset_.empty()) {
    for (const auto& p : subset_) {
      out.push_back(permutation_operator(p, PermutationTarget::Qubits).matrix);
    }
    return out;
  }
  for (std::size_t i = 0; i + 1 < parameter_; ++i) {
    Permutation p(parameter_);
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = j;
    std::swap(p[i], p[i + 1]);
    out.push_back(permutation_operator(p, PermutationTarget::Qubits).matrix);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checks

CheckReport check_equivariance(const ComplexMatrix& u, GroupSampler& sampler, std::size_t k,
                               std::size_t trials, double tol) {
  if (k == 0) throw DomainError("check_equivariance requires k >= 1");
  std::size_t expected = 1;
  for (std::size_t i = 0; i < k; ++i) expected *= sampler.degree();
  if (!u.is_square() || u.rows() != expected) {
    throw DimensionError("check_equivariance: operator dimension " + std::to_string(u.rows()) +
                         " does not match sampler degree^k = " + std::to_string(expected));
  }
  CheckReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const ComplexMatrix v = kron_power(sampler.next(), k);
    report.max_deviation = std::max(report.max_deviation, frobenius_norm(commutator(u, v)));
  }
  report.pass = report.max_deviation < tol;
  return report;
}

CommutantResult commutant_dimension(std::span<const ComplexMatrix> generators, std::size_t k) {
  if (generators.empty()) throw DomainError("commutant_dimension: no group elements");
  if (k == 0) throw DomainError("commutant_dimension requires k >= 1");
  const std::size_t d = generators.front().rows();
  std::size_t big_d = 1;
  for (std::size_t i = 0; i < k; ++i) {
    big_d *= d;
    if (big_d > kMaxCommutantDegree) {
      throw CapacityError("commutant_dimension: d^k exceeds " +
                        std::to_string(kMaxCommutantDegree) + "; linear system too large");
    }
  }
  const auto unknowns = static_cast<Eigen::Index>(big_d * big_d);
  const auto bd = static_cast<Eigen::Index>(big_d);

  // Row-compressed stack of all constraints: only R of the running QR is kept,
  // which has the same singular values as the full stack.
  Eigen::MatrixXcd stacked(0, unknowns);
  for (const auto& g : generators) {
    if (!g.is_square() || g.rows() != d) {
      throw DimensionError("commutant_dimension: generators have mixed dimensions");
    }
    const Eigen::MatrixXcd a = detail::to_eigen(kron_power(g, k));
    // Row-major vec: vec(AW) = (A (x) I) w and vec(WA) = (I (x) A^T) w.
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(unknowns, unknowns);
    for (Eigen::Index i = 0; i < bd; ++i) {
      for (Eigen::Index j = 0; j < bd; ++j) {
        const Eigen::Index row = i * bd + j;
        for (Eigen::Index l = 0; l < bd; ++l) {
          c(row, l * bd + j) += a(i, l);
          c(row, i * bd + l) -= a(l, j);
        }
      }
    }
    Eigen::MatrixXcd joined(stacked.rows() + c.rows(), unknowns);
    joined << stacked, c;
    if (joined.rows() > unknowns) {
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(joined);
      stacked = qr.matrixQR().topRows(unknowns).triangularView<Eigen::Upper>();
    } else {
      stacked = std::move(joined);
    }
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(stacked);
  const Eigen::VectorXd sv = svd.singularValues();
  CommutantResult result;
  result.constraint_elements = generators.size();
  result.singular_values.assign(sv.data(), sv.data() + sv.size());
  // Pad with exact zeros when fewer rows than unknowns were stacked.
  result.singular_values.resize(static_cast<std::size_t>(unknowns), 0.0);
  const double sigma_max = result.singular_values.front();
  const double cutoff = 1e-8 * sigma_max;
  std::size_t rank = 0;
  while (rank < result.singular_values.size() && result.singular_values[rank] > cutoff) ++rank;
  result.dimension = static_cast<std::size_t>(unknowns) - rank;
  const double inf = std::numeric_limits<double>::infinity();
  if (rank == 0 || rank == result.singular_values.size()) {
    result.gap_ratio = inf;
  } else {
    const double below = result.singular_values[rank];
    result.gap_ratio = below > 0.0 ? result.singular_values[rank - 1] / below : inf;
  }
  result.ambiguous = rank > 0 && result.singular_values[rank - 1] < 10.0 * cutoff;
  return result;
}

CommutantResult commutant_dimension(GroupSampler& sampler, std::size_t k, std::size_t samples) {
  std::vector<ComplexMatrix> elements = sampler.exact_generators();
  if (sampler.kind() == GroupKind::Symmetric) {
    if (elements.empty()) {
      // S_1: only the identity.
      elements.push_back(ComplexMatrix::identity(sampler.degree()));
    }
  } else {
    if (samples == 0) throw DomainError("commutant_dimension: need at least one sample");
    for (std::size_t i = 0; i < samples; ++i) elements.push_back(sampler.next());
  }
  return commutant_dimension(elements, k);
}

}  // namespace ginv
