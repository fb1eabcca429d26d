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

#ifndef GINV_MODELS_HPP
#define GINV_MODELS_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ginv/graph.hpp"
#include "ginv/groups.hpp"
#include "ginv/observables.hpp"
#include "ginv/tensor.hpp"
#include "json.hpp"

namespace ginv {

/// H1: Tr[U rho^{(x)k} U^dag O].
/// H2: Tr[U (W(x)W)|psi_in><psi_in|(W(x)W)^dag U^dag O], input is the unitary W.
/// H3: Tr[U (|0><0| (x) rho (x) rho) U^dag (A (x) I (x) I)].
enum class HypothesisClass { H1, H2, H3 };

const char* to_string(HypothesisClass c);
HypothesisClass parse_hypothesis_class(const std::string& name);

enum class GateKind { RX, RY, RZ, H, CNOT, CZ };

/// Rotation gates consume the next parameter slot in sequence order.
/// `target` is unused for single-qubit gates; for CNOT, `qubit` is the control.
struct Gate {
  GateKind kind = GateKind::H;
  std::size_t qubit = 0;
  std::size_t target = 0;
};

bool is_parametric(GateKind kind);
const char* to_string(GateKind kind);
GateKind parse_gate_kind(const std::string& name);

enum class AnsatzKind { Identity, FixedUnitary, Layered, QGCNN };

const char* to_string(AnsatzKind kind);

/// A unitary family U(theta) on `qubits` qubits.
///
/// QGCNN parameters are laid out as [W_1..W_Q, B_1..B_Q, eta_11..eta_PQ]
/// (eta row-major in the layer index p), and
///   U = prod_p prod_q exp(-i eta_pq H_q),  H_q = W_q sum_E Z_j Z_k + B_q sum_v X_v,
/// with the (p=1, q=1) factor applied first.
struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::Identity;
  std::size_t qubits = 0;
  ComplexMatrix fixed;
  std::vector<Gate> gates;
  Graph graph;
  std::size_t layers = 0;
  std::size_t generators = 0;
  std::vector<double> params;

  static AnsatzSpec identity(std::size_t qubits);
  static AnsatzSpec fixed_unitary(ComplexMatrix u);
  static AnsatzSpec layered(std::size_t qubits, std::vector<Gate> gates, std::vector<double> params);
  static AnsatzSpec qgcnn(Graph graph, std::size_t layers, std::size_t generators,
                          std::vector<double> params);

  std::size_t parameter_count() const;
};

/// Throws DomainError when theta.size() != parameter_count().
ComplexMatrix realize(const AnsatzSpec& ansatz, std::span<const double> theta);
ComplexMatrix realize(const AnsatzSpec& ansatz);

/// Brick of RY on every qubit followed by a CNOT ladder, repeated `depth` times.
AnsatzSpec hardware_efficient_ansatz(std::size_t qubits, std::size_t depth,
                                     std::vector<double> params);

struct ModelSpec {
  HypothesisClass cls = HypothesisClass::H1;
  /// Input copies (H1); fixed to 2 for H2 and H3.
  std::size_t k = 1;
  /// Qubits per input copy (H1, H3) or qubits acted on by W (H2).
  std::size_t n = 1;
  AnsatzSpec ansatz;
  Observable observable;
  std::optional<StateVector> psi_in;

  /// Qubits of the register that U and O act on: nk, 2n or 2n+1.
  std::size_t register_qubits() const;
  /// Throws DimensionError/DomainError on any inconsistency.
  void validate() const;
};

ModelSpec h1_model(std::size_t n, std::size_t k, Observable observable,
                   std::optional<AnsatzSpec> ansatz = std::nullopt);
ModelSpec h2_model(std::size_t n, StateVector psi_in, Observable observable,
                   std::optional<AnsatzSpec> ansatz = std::nullopt);
/// Defaults to the swap-test unitary and A = Z.
ModelSpec h3_model(std::size_t n, std::optional<ComplexMatrix> a = std::nullopt,
                   std::optional<AnsatzSpec> ansatz = std::nullopt);

/// (H on ancilla) . (controlled-SWAP of the two n-qubit registers) . (H on ancilla).
ComplexMatrix swap_test_unitary(std::size_t n);

/// A (x) I on 2n+1 qubits. A must be a Hermitian 2x2 with A|0> = |0>.
Observable ancilla_observable(const ComplexMatrix& a, std::size_t n);

struct ShotEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t shots = 0;
};

/// A validated model with its unitary and conjugated observable cached.
/// Copies share the cache; evaluation is const and thread-safe.
class PreparedModel {
 public:
  explicit PreparedModel(ModelSpec spec);

  const ModelSpec& spec() const { return *spec_; }
  const ComplexMatrix& unitary() const;
  /// U^dag O U on the model register.
  const Observable& conjugated() const;

  double evaluate(const DensityMatrix& rho) const;
  double evaluate(const StateVector& psi) const;
  /// H2 input.
  double evaluate(const ComplexMatrix& w) const;

  ShotEstimate estimate(const DensityMatrix& rho, std::size_t shots, Stream& stream) const;
  ShotEstimate estimate(const StateVector& psi, std::size_t shots, Stream& stream) const;
  ShotEstimate estimate(const ComplexMatrix& w, std::size_t shots, Stream& stream) const;

  /// Register state fed to U: rho^{(x)k}, |0><0| (x) rho (x) rho, or (W(x)W)|psi_in>.
  DensityMatrix register_state(const DensityMatrix& rho) const;
  StateVector register_state(const StateVector& psi) const;
  StateVector register_state(const ComplexMatrix& w) const;

 private:
  struct Cache;
  std::shared_ptr<const ModelSpec> spec_;
  std::shared_ptr<Cache> cache_;
};

double evaluate(const ModelSpec& model, const DensityMatrix& rho);
double evaluate(const ModelSpec& model, const StateVector& psi);
double evaluate(const ModelSpec& model, const ComplexMatrix& w);

Observable conjugated_observable(const ModelSpec& model);

/// Samples eigenvalues of the conjugated observable with Born probabilities.
ShotEstimate estimate_with_shots(const ModelSpec& model, const DensityMatrix& rho,
                                 std::size_t shots, Stream& stream);
ShotEstimate estimate_with_shots(const ModelSpec& model, const StateVector& psi,
                                 std::size_t shots, Stream& stream);
ShotEstimate estimate_with_shots(const ModelSpec& model, const ComplexMatrix& w,
                                 std::size_t shots, Stream& stream);

nlohmann::json to_json(const AnsatzSpec& ansatz);
AnsatzSpec ansatz_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ModelSpec& model);
ModelSpec model_from_json(const nlohmann::json& j);

}  // namespace ginv

#endif  // GINV_MODELS_HPP
