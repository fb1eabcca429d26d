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

// Labeled dataset generators. Every generator is deterministic in its seed and
// returns a label-balanced dataset in seed-shuffled order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ginv/graph.hpp"
#include "ginv/observables.hpp"
#include "ginv/tensor.hpp"
#include "json.hpp"

namespace ginv {

struct LabeledState {
  DensityMatrix state;
  int label = 0;
  /// Present when the state is pure; evaluators use it to avoid dense products.
  std::optional<StateVector> pure;
  nlohmann::json provenance;
};

struct LabeledUnitary {
  ComplexMatrix unitary;
  int label = 0;
};

struct StateDataset {
  std::string generator;
  nlohmann::json params;
  std::uint64_t seed = 0;
  std::vector<LabeledState> items;
};

struct UnitaryDataset {
  std::string generator;
  nlohmann::json params;
  std::uint64_t seed = 0;
  std::vector<LabeledUnitary> items;
};

/// Weight p of rho = p |psi><psi| + (1 - p) I/d with Tr[rho^2] = b.
double depolarizing_weight_for_purity(double b, std::size_t d);

/// Label 1: Haar-random pure states. Label 0: depolarized Haar states of
/// purity exactly b. Requires 1/d <= b < 1.
StateDataset purity_dataset(std::size_t n, std::size_t count, double b, std::uint64_t seed);

/// Label 1: O|0...0> for Haar O in O(d) (real amplitudes). Label 0: U|0...0>
/// for Haar U in U(d).
StateDataset time_reversal_state_dataset(std::size_t n, std::size_t count, std::uint64_t seed);

/// Label 1: Haar orthogonal matrices. Label 0: Haar unitaries.
UnitaryDataset time_reversal_dynamics_dataset(std::size_t n, std::size_t count,
                                              std::uint64_t seed);

enum class EntanglementMeasure { MeyerWallach, Concentratable, Impurity };

const char* to_string(EntanglementMeasure m);
EntanglementMeasure parse_entanglement_measure(const std::string& name);
/// Concentratable uses Q = all qubits; Impurity uses qubit 0.
Observable measure_observable(EntanglementMeasure m, std::size_t n);

/// Label 0: random product states (measure 0). Label 1: cos(a)|0..0> + sin(a) GHZ,
/// a bisected so the measure equals b, then scrambled by random local unitaries.
StateDataset entanglement_dataset(std::size_t n, std::size_t count, double b,
                                  EntanglementMeasure measure, std::uint64_t seed);

/// sum_{(j,j') in E} Z_j Z_j' + sum_j X_j.
Observable graph_hamiltonian(const Graph& g);

/// e^{-i t H(g)} |+>^n.
StateVector graph_state(const Graph& g, double t);

/// Label y: e^{-i t H(pi(g_y))}|+>^n for a uniformly random relabeling pi.
/// Rejects isomorphic reference graphs.
StateDataset graph_dataset(const Graph& g0, const Graph& g1, std::size_t count, double t,
                           std::uint64_t seed);

/// True when some qubit permutation maps the state of g0 onto that of g1
/// (fidelity within 1e-6), i.e. the two encoded orbits coincide.
bool graph_orbits_coincide(const Graph& g0, const Graph& g1, double t);

// Serialization: {generator, params, seed, items: [{label, state: {dim, re, im}}]}.
nlohmann::json to_json(const StateDataset& ds);
nlohmann::json to_json(const UnitaryDataset& ds);
StateDataset state_dataset_from_json(const nlohmann::json& j);
UnitaryDataset unitary_dataset_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace ginv
