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

// Symmetry groups: seeded samplers, subsystem permutation operators, the k=2
// Brauer basis, and numerical commutant / equivariance checks.

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ginv/tensor.hpp"

namespace ginv {

using Stream = std::mt19937_64;

/// Mixes a base seed with an index; used for per-worker and per-chunk streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Haar-random element of U(d): QR of a complex Ginibre matrix with the phases
/// of diag(R) divided out.
ComplexMatrix haar_unitary(std::size_t d, Stream& stream);

/// Haar-random element of O(d), returned with zero imaginary parts.
ComplexMatrix haar_orthogonal(std::size_t d, Stream& stream);

/// Uniformly distributed pure state in C^d.
StateVector haar_state(std::size_t d, Stream& stream);

using Permutation = std::vector<std::size_t>;

bool is_permutation(std::span<const std::size_t> perm);
Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation inverse(const Permutation& perm);

enum class PermutationTarget { Copies, Qubits };

struct PermutationOp {
  Permutation permutation;
  PermutationTarget target;
  std::size_t local_dim = 2;
  ComplexMatrix matrix;
};

/// Operator moving subsystem i to position perm[i]:
/// P (psi_0 (x) ... (x) psi_{m-1}) = psi_{perm^-1(0)} (x) ... (x) psi_{perm^-1(m-1)}.
/// For Copies the subsystems are copies of `qubits_per_copy` qubits; for Qubits
/// they are single qubits and `qubits_per_copy` is ignored.
PermutationOp permutation_operator(const Permutation& perm, PermutationTarget target,
                                   std::size_t qubits_per_copy = 1);

/// Basis index image of `index` under a subsystem permutation (local dimension 2^bits).
std::size_t permute_index(std::size_t index, std::span<const std::size_t> perm,
                          std::size_t bits_per_subsystem);

/// Unit-norm |Phi+> = d^{-1/2} sum_j |j>|j> on 2n qubits.
StateVector bell_state(std::size_t n);

/// {I (x) I, SWAP, |Phi+><Phi+|} on two copies of n qubits.
std::array<ComplexMatrix, 3> brauer_basis_k2(std::size_t n);

enum class GroupKind { Unitary, Orthogonal, LocalUnitary, Symmetric };

const char* to_string(GroupKind kind);

/// Seeded source of group elements in their defining representation.
///
/// Unitary(d) and Orthogonal(d) act on C^d, LocalUnitary(n) and Symmetric(n)
/// on n qubits. A Symmetric sampler may be restricted to an explicit list of
/// permutations (e.g. the automorphisms of a graph).
class GroupSampler {
 public:
  static GroupSampler unitary(std::size_t d, std::uint64_t seed);
  static GroupSampler orthogonal(std::size_t d, std::uint64_t seed);
  static GroupSampler local_unitary(std::size_t n, std::uint64_t seed);
  static GroupSampler symmetric(std::size_t n, std::uint64_t seed);
  static GroupSampler permutations(std::size_t n, std::vector<Permutation> elements,
                                   std::uint64_t seed);

  GroupKind kind() const { return kind_; }
  /// d for Unitary/Orthogonal, n for LocalUnitary/Symmetric.
  std::size_t parameter() const { return parameter_; }
  /// Dimension of the matrices returned by next().
  std::size_t degree() const;
  std::uint64_t seed() const { return seed_; }
  bool restricted() const { return !subset_.empty(); }

  ComplexMatrix next();

  /// Same kind with seed derive_seed(seed, index).
  GroupSampler fork(std::uint64_t index) const;

  /// Exact generators where the group is finite: adjacent transpositions, or
  /// the restricted element list. Empty for the Lie groups.
  std::vector<ComplexMatrix> exact_generators() const;

 private:
  GroupSampler(GroupKind kind, std::size_t parameter, std::uint64_t seed);

  GroupKind kind_;
  std::size_t parameter_;
  std::uint64_t seed_;
  std::vector<Permutation> subset_;
  Stream stream_;
};

struct CheckReport {
  double max_deviation = 0.0;
  bool pass = false;
  std::size_t trials = 0;
};

/// max over trials of ||[u, V^{(x)k}]||_F.
CheckReport check_equivariance(const ComplexMatrix& u, GroupSampler& sampler, std::size_t k,
                               std::size_t trials, double tol);

struct CommutantResult {
  std::size_t dimension = 0;
  /// Smallest retained singular value over the largest discarded one (inf when
  /// either side is empty).
  double gap_ratio = 0.0;
  /// True when the smallest retained singular value is within 10x of the cutoff.
  bool ambiguous = false;
  std::vector<double> singular_values;
  std::size_t constraint_elements = 0;
};

/// Maximum d^k accepted by the commutant solver.
inline constexpr std::size_t kMaxCommutantDegree = 64;

/// Dimension of {W : [W, V^{(x)k}] = 0} over `generators` (each of dimension d).
/// Rank is decided with cutoff 1e-8 * sigma_max.
CommutantResult commutant_dimension(std::span<const ComplexMatrix> generators, std::size_t k);

/// Uses exact generators for finite groups, otherwise `samples` sampled elements.
CommutantResult commutant_dimension(GroupSampler& sampler, std::size_t k,
                                    std::size_t samples = 20);

}  // namespace ginv
