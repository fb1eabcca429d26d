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

// Measurement operators whose expectation values are invariant under the
// symmetry groups, reference states, and reduced-purity evaluators of the
// entanglement quantities those operators measure.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ginv/tensor.hpp"

namespace ginv {

/// A Hermitian operator on `copies` copies of `qubits_per_copy` qubits.
struct Observable {
  ComplexMatrix matrix;
  std::size_t copies = 1;
  std::size_t qubits_per_copy = 1;
  std::string tag;
  /// Set when matrix == |v><v| for a known unit vector v.
  std::optional<StateVector> rank_one;

  std::size_t dim() const { return matrix.rows(); }
};

/// Validates Hermiticity and dimension (2^n)^k.
Observable make_observable(ComplexMatrix matrix, std::size_t copies, std::size_t qubits_per_copy,
                           std::string tag);

Observable swap_operator(std::size_t n);
/// Swaps qubit j of the first copy with qubit j of the second.
Observable swap_j(std::size_t j, std::size_t n);
/// |Phi+><Phi+| with unit-norm Phi+.
Observable bell_projector(std::size_t n);
/// 2 (I - SWAP_j): expectation 2 (1 - Tr[rho_j^2]).
Observable impurity_observable(std::size_t j, std::size_t n);
/// (2/n) sum_j (I - SWAP_j).
Observable meyer_wallach_observable(std::size_t n);
/// I - 2^{-|Q|} prod_{j in Q} (I + SWAP_j).
Observable concentratable_observable(std::span<const std::size_t> q_set, std::size_t n);
/// I - 2^{-n} prod_j (I - SWAP_j).
Observable ntangle_observable(std::size_t n);

struct PauliObservable {
  Observable observable;
  /// True iff the matrix is purely imaginary (odd number of Y factors).
  bool purely_imaginary = false;
};

/// Tensor product of Pauli factors, e.g. "YZX"; the first letter acts on qubit 0.
PauliObservable pauli_string(std::string_view spec);

/// Hermitian and anti-Hermitian parts of `a`: ((a + a^dag)/2, i(a - a^dag)/2).
std::pair<Observable, Observable> hermitize(const ComplexMatrix& a, std::size_t copies = 1);

/// Rebuilds a named observable: swap, bell, swap_j:J, impurity:J,
/// meyer_wallach, concentratable:A,B,..., ntangle, pauli:STRING.
Observable observable_from_tag(std::string_view tag, std::size_t n);

// Reference states --------------------------------------------------------

StateVector zero_state(std::size_t n);
StateVector plus_state(std::size_t n);
StateVector ghz_state(std::size_t n);
StateVector w_state(std::size_t n);
StateVector product_state(std::span<const StateVector> factors);

// Reduced-purity evaluators ------------------------------------------------

/// Tr[rho_alpha^2]; the empty subset gives 1 for a normalized global state.
double reduced_purity(const DensityMatrix& rho, std::span<const std::size_t> subset);
double impurity_from_purities(const DensityMatrix& rho, std::size_t j);
double meyer_wallach_from_purities(const DensityMatrix& rho);
/// 1 - 2^{-|Q|} sum_{alpha subset Q} Tr[rho_alpha^2]
double concentratable_from_purities(const DensityMatrix& rho, std::span<const std::size_t> q_set);
/// 1 - 2^{-n} sum_{alpha subset S} (-1)^{|alpha|} Tr[rho_alpha^2]
double ntangle_from_purities(const DensityMatrix& rho);

}  // namespace ginv
