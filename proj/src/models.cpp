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

#include "ginv/models.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "ginv/datasets.hpp"
#include "ginv/error.hpp"

namespace ginv {
namespace {

constexpr double kEigenvalueMergeTol = 1e-9;

ComplexMatrix pauli_z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix{{s, s}, {s, -s}};
}

ComplexMatrix rotation(GateKind kind, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const cplx i(0.0, 1.0);
  switch (kind) {
    case GateKind::RX: return ComplexMatrix{{c, -i * s}, {-i * s, c}};
    case GateKind::RY: return ComplexMatrix{{c, -s}, {s, c}};
    case GateKind::RZ: return ComplexMatrix{{std::exp(-i * (theta / 2.0)), 0.0},
                                            {0.0, std::exp(i * (theta / 2.0))}};
    default: break;
  }
  throw DomainError("not a rotation gate");
}

ComplexMatrix embed(const ComplexMatrix& gate, std::size_t qubit, std::size_t n) {
  return kron(kron(ComplexMatrix::identity(std::size_t{1} << qubit), gate),
              ComplexMatrix::identity(std::size_t{1} << (n - qubit - 1)));
}

// Basis-permuting two-qubit gates. Qubit 0 is the most significant bit.
ComplexMatrix two_qubit_gate(GateKind kind, std::size_t a, std::size_t b, std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  const std::size_t ma = std::size_t{1} << (n - 1 - a);
  const std::size_t mb = std::size_t{1} << (n - 1 - b);
  ComplexMatrix g(d, d);
  for (std::size_t x = 0; x < d; ++x) {
    const bool ca = (x & ma) != 0;
    const bool cb = (x & mb) != 0;
    if (kind == GateKind::CNOT) {
      g(ca ? x ^ mb : x, x) = 1.0;
    } else {
      g(x, x) = ca && cb ? -1.0 : 1.0;
    }
  }
  return g;
}

// Sum over edges of Z_j Z_k (diagonal) and sum over vertices of X_v.
ComplexMatrix zz_sum(const Graph& g) {
  const std::size_t n = g.nodes();
  const std::size_t d = std::size_t{1} << n;
  ComplexMatrix h(d, d);
  for (std::size_t x = 0; x < d; ++x) {
    double v = 0.0;
    for (const auto& [a, b] : g.edges()) {
      v += ((x >> (n - 1 - a)) & 1U) == ((x >> (n - 1 - b)) & 1U) ? 1.0 : -1.0;
    }
    h(x, x) = v;
  }
  return h;
}

ComplexMatrix x_sum(std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  ComplexMatrix h(d, d);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t q = 0; q < n; ++q) h(x ^ (std::size_t{1} << q), x) = 1.0;
  }
  return h;
}

std::size_t qubits_of(std::size_t dim) { return log2_exact(dim); }

std::vector<cplx> amplitudes(const StateVector& s) {
  return std::vector<cplx>(s.data(), s.data() + s.dim());
}

ShotEstimate finish_estimate(const std::vector<double>& values, const std::vector<std::size_t>& counts,
                             std::size_t shots) {
  double mean = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) mean += values[i] * static_cast<double>(counts[i]);
  mean /= static_cast<double>(shots);
  double ss = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    ss += static_cast<double>(counts[i]) * (values[i] - mean) * (values[i] - mean);
  }
  const double var = shots > 1 ? ss / static_cast<double>(shots - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(shots)), shots};
}

ShotEstimate bernoulli_estimate(double p, std::size_t shots, Stream& stream) {
  p = std::clamp(p, 0.0, 1.0);
  std::binomial_distribution<std::size_t> draw(shots, p);
  const std::size_t ones = draw(stream);
  return finish_estimate({0.0, 1.0}, {shots - ones, ones}, shots);
}

}  // namespace

// ---------------------------------------------------------------------------

const char* to_string(HypothesisClass c) {
  switch (c) {
    case HypothesisClass::H1: return "H1";
    case HypothesisClass::H2: return "H2";
    case HypothesisClass::H3: return "H3";
  }
  return "?";
}

HypothesisClass parse_hypothesis_class(const std::string& name) {
  if (name == "H1") return HypothesisClass::H1;
  if (name == "H2") return HypothesisClass::H2;
  if (name == "H3") return HypothesisClass::H3;
  throw DomainError("unknown hypothesis class '" + name + "'");
}

bool is_parametric(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

GateKind parse_gate_kind(const std::string& name) {
  for (GateKind k : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::H, GateKind::CNOT,
                     GateKind::CZ}) {
    if (name == to_string(k)) return k;
  }
  throw DomainError("unknown gate '" + name + "'");
}

const char* to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::Identity: return "identity";
    case AnsatzKind::FixedUnitary: return "fixed";
    case AnsatzKind::Layered: return "layered";
    case AnsatzKind::QGCNN: return "qgcnn";
  }
  return "?";
}

AnsatzSpec AnsatzSpec::identity(std::size_t qubits) {
  AnsatzSpec a;
  a.kind = AnsatzKind::Identity;
  a.qubits = qubits;
  return a;
}

AnsatzSpec AnsatzSpec::fixed_unitary(ComplexMatrix u) {
  if (u.rows() != u.cols()) throw DimensionError("fixed ansatz matrix must be square");
  if (!is_unitary(u)) throw DomainError("fixed ansatz matrix is not unitary");
  AnsatzSpec a;
  a.kind = AnsatzKind::FixedUnitary;
  a.qubits = qubits_of(u.rows());
  a.fixed = std::move(u);
  return a;
}

AnsatzSpec AnsatzSpec::layered(std::size_t qubits, std::vector<Gate> gates,
                               std::vector<double> params) {
  for (const Gate& g : gates) {
    const bool two = g.kind == GateKind::CNOT || g.kind == GateKind::CZ;
    if (g.qubit >= qubits || (two && (g.target >= qubits || g.target == g.qubit))) {
      throw DomainError(std::string("gate ") + to_string(g.kind) + " addresses an invalid qubit");
    }
  }
  AnsatzSpec a;
  a.kind = AnsatzKind::Layered;
  a.qubits = qubits;
  a.gates = std::move(gates);
  a.params = std::move(params);
  if (a.params.empty()) a.params.assign(a.parameter_count(), 0.0);
  return a;
}

AnsatzSpec AnsatzSpec::qgcnn(Graph graph, std::size_t layers, std::size_t generators,
                             std::vector<double> params) {
  if (graph.nodes() == 0) throw DomainError("QGCNN graph has no nodes");
  AnsatzSpec a;
  a.kind = AnsatzKind::QGCNN;
  a.qubits = graph.nodes();
  a.graph = std::move(graph);
  a.layers = layers;
  a.generators = generators;
  a.params = std::move(params);
  if (a.params.empty()) a.params.assign(a.parameter_count(), 0.0);
  return a;
}

std::size_t AnsatzSpec::parameter_count() const {
  switch (kind) {
    case AnsatzKind::Identity:
    case AnsatzKind::FixedUnitary:
      return 0;
    case AnsatzKind::Layered:
      return static_cast<std::size_t>(
          std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return is_parametric(g.kind); }));
    case AnsatzKind::QGCNN:
      return 2 * generators + layers * generators;
  }
  return 0;
}

ComplexMatrix realize(const AnsatzSpec& ansatz, std::span<const double> theta) {
  if (theta.size() != ansatz.parameter_count()) {
    throw DomainError("ansatz expects " + std::to_string(ansatz.parameter_count()) +
                      " parameters, got " + std::to_string(theta.size()));
  }
  const std::size_t n = ansatz.qubits;
  const std::size_t d = std::size_t{1} << n;
  switch (ansatz.kind) {
    case AnsatzKind::Identity:
      return ComplexMatrix::identity(d);
    case AnsatzKind::FixedUnitary:
      return ansatz.fixed;
    case AnsatzKind::Layered: {
      ComplexMatrix u = ComplexMatrix::identity(d);
      std::size_t slot = 0;
      for (const Gate& g : ansatz.gates) {
        ComplexMatrix full;
        if (is_parametric(g.kind)) {
          full = embed(rotation(g.kind, theta[slot++]), g.qubit, n);
        } else if (g.kind == GateKind::H) {
          full = embed(hadamard(), g.qubit, n);
        } else {
          full = two_qubit_gate(g.kind, g.qubit, g.target, n);
        }
        u = full * u;
      }
      return u;
    }
    case AnsatzKind::QGCNN: {
      const std::size_t q_count = ansatz.generators;
      const ComplexMatrix zz = zz_sum(ansatz.graph);
      const ComplexMatrix xs = x_sum(n);
      ComplexMatrix u = ComplexMatrix::identity(d);
      for (std::size_t p = 0; p < ansatz.layers; ++p) {
        for (std::size_t q = 0; q < q_count; ++q) {
          const double eta = theta[2 * q_count + p * q_count + q];
          if (eta == 0.0) continue;
          const ComplexMatrix h = zz * cplx(theta[q]) + xs * cplx(theta[q_count + q]);
          u = expm_hermitian(h, eta) * u;
        }
      }
      return u;
    }
  }
  throw DomainError("unknown ansatz kind");
}

ComplexMatrix realize(const AnsatzSpec& ansatz) { return realize(ansatz, ansatz.params); }

AnsatzSpec hardware_efficient_ansatz(std::size_t qubits, std::size_t depth,
                                     std::vector<double> params) {
  std::vector<Gate> gates;
  for (std::size_t layer = 0; layer < depth; ++layer) {
    for (std::size_t q = 0; q < qubits; ++q) gates.push_back({GateKind::RY, q, 0});
    for (std::size_t q = 0; q < qubits; ++q) gates.push_back({GateKind::RZ, q, 0});
    for (std::size_t q = 0; q + 1 < qubits; ++q) gates.push_back({GateKind::CNOT, q, q + 1});
  }
  return AnsatzSpec::layered(qubits, std::move(gates), std::move(params));
}

// ---------------------------------------------------------------------------

std::size_t ModelSpec::register_qubits() const {
  switch (cls) {
    case HypothesisClass::H1: return n * k;
    case HypothesisClass::H2: return 2 * n;
    case HypothesisClass::H3: return 2 * n + 1;
  }
  return 0;
}

void ModelSpec::validate() const {
  if (n == 0) throw DomainError("model needs n >= 1");
  if (k == 0) throw DomainError("model needs k >= 1");
  if (cls != HypothesisClass::H1 && k != 2) {
    throw DomainError(std::string(to_string(cls)) + " models use exactly k = 2 copies");
  }
  const std::size_t q = register_qubits();
  if (q > 12) throw CapacityError("model register exceeds 12 qubits");
  const std::size_t dim = std::size_t{1} << q;
  if (observable.dim() != dim) {
    throw DimensionError("observable dimension " + std::to_string(observable.dim()) +
                         " does not match register dimension " + std::to_string(dim));
  }
  if (!is_hermitian(observable.matrix)) throw DomainError("observable is not Hermitian");
  if (ansatz.qubits != q) {
    throw DimensionError("ansatz acts on " + std::to_string(ansatz.qubits) + " qubits, register has " +
                         std::to_string(q));
  }
  if (ansatz.params.size() != ansatz.parameter_count()) {
    throw DomainError("ansatz parameter vector has the wrong length");
  }
  if (cls == HypothesisClass::H2) {
    if (!psi_in) throw DomainError("H2 model requires psi_in");
    if (psi_in->dim() != dim) throw DimensionError("psi_in must live on 2n qubits");
  } else if (psi_in) {
    throw DomainError("psi_in is only meaningful for H2 models");
  }
  if (cls == HypothesisClass::H3) {
    // O must be A (x) I: every off-ancilla block proportional to the identity.
    const std::size_t half = dim / 2;
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        const bool same_rest = (r % half) == (c % half);
        const cplx expected = same_rest ? observable.matrix(r / half * half, c / half * half) : 0.0;
        if (std::abs(observable.matrix(r, c) - expected) > kHermitianTol) {
          throw DomainError("H3 observable must act only on the ancilla qubit");
        }
      }
    }
  }
}

ModelSpec h1_model(std::size_t n, std::size_t k, Observable observable,
                   std::optional<AnsatzSpec> ansatz) {
  ModelSpec m;
  m.cls = HypothesisClass::H1;
  m.n = n;
  m.k = k;
  m.observable = std::move(observable);
  m.ansatz = ansatz ? std::move(*ansatz) : AnsatzSpec::identity(n * k);
  m.validate();
  return m;
}

ModelSpec h2_model(std::size_t n, StateVector psi_in, Observable observable,
                   std::optional<AnsatzSpec> ansatz) {
  ModelSpec m;
  m.cls = HypothesisClass::H2;
  m.n = n;
  m.k = 2;
  m.observable = std::move(observable);
  m.psi_in = std::move(psi_in);
  m.ansatz = ansatz ? std::move(*ansatz) : AnsatzSpec::identity(2 * n);
  m.validate();
  return m;
}

ModelSpec h3_model(std::size_t n, std::optional<ComplexMatrix> a, std::optional<AnsatzSpec> ansatz) {
  ModelSpec m;
  m.cls = HypothesisClass::H3;
  m.n = n;
  m.k = 2;
  m.observable = ancilla_observable(a ? *a : pauli_z(), n);
  m.ansatz = ansatz ? std::move(*ansatz) : AnsatzSpec::fixed_unitary(swap_test_unitary(n));
  m.validate();
  return m;
}

ComplexMatrix swap_test_unitary(std::size_t n) {
  if (n == 0) throw DomainError("swap test needs n >= 1");
  const std::size_t half = std::size_t{1} << (2 * n);
  const ComplexMatrix h = kron(hadamard(), ComplexMatrix::identity(half));
  const ComplexMatrix swap = swap_operator(n).matrix;
  ComplexMatrix cswap(2 * half, 2 * half);
  for (std::size_t i = 0; i < half; ++i) cswap(i, i) = 1.0;
  for (std::size_t r = 0; r < half; ++r) {
    for (std::size_t c = 0; c < half; ++c) cswap(half + r, half + c) = swap(r, c);
  }
  return h * cswap * h;
}

Observable ancilla_observable(const ComplexMatrix& a, std::size_t n) {
  if (a.rows() != 2 || a.cols() != 2) throw DimensionError("ancilla observable must be 2x2");
  if (!is_hermitian(a)) throw DomainError("ancilla observable is not Hermitian");
  if (std::abs(a(1, 0)) > kHermitianTol || std::abs(a(0, 0) - cplx(1.0)) > kHermitianTol) {
    throw DomainError("ancilla observable must satisfy A|0> = |0>");
  }
  const std::size_t q = 2 * n + 1;
  return make_observable(kron(a, ComplexMatrix::identity(std::size_t{1} << (2 * n))), 1, q,
                         "ancilla");
}

// ---------------------------------------------------------------------------

struct PreparedModel::Cache {
  ComplexMatrix u;
  Observable conjugated;
  std::once_flag eig_once;
  EigenDecomposition eig;
};

PreparedModel::PreparedModel(ModelSpec spec) {
  spec.validate();
  spec_ = std::make_shared<const ModelSpec>(std::move(spec));
  auto cache = std::make_shared<Cache>();
  const ModelSpec& m = *spec_;
  cache->u = realize(m.ansatz);
  const ComplexMatrix& u = cache->u;
  ComplexMatrix conj = u.adjoint() * m.observable.matrix * u;
  // Restore exact Hermiticity lost to rounding.
  conj = (conj + conj.adjoint()) * cplx(0.5);
  cache->conjugated.matrix = std::move(conj);
  cache->conjugated.copies = m.observable.copies;
  cache->conjugated.qubits_per_copy = m.observable.qubits_per_copy;
  cache->conjugated.tag = m.ansatz.kind == AnsatzKind::Identity ? m.observable.tag
                                                                : "conjugated:" + m.observable.tag;
  if (m.observable.rank_one) {
    cache->conjugated.rank_one = apply(u.adjoint(), *m.observable.rank_one);
  }
  cache_ = std::move(cache);
}

const ComplexMatrix& PreparedModel::unitary() const { return cache_->u; }
const Observable& PreparedModel::conjugated() const { return cache_->conjugated; }

DensityMatrix PreparedModel::register_state(const DensityMatrix& rho) const {
  const ModelSpec& m = spec();
  if (m.cls == HypothesisClass::H2) throw DomainError("H2 models take a unitary input, not a state");
  if (rho.dim() != (std::size_t{1} << m.n)) {
    throw DimensionError("input state has dimension " + std::to_string(rho.dim()) + ", model expects " +
                         std::to_string(std::size_t{1} << m.n));
  }
  if (m.cls == HypothesisClass::H1) return tensor_power(rho, m.k);
  const DensityMatrix anc = DensityMatrix::from_pure(zero_state(1));
  return DensityMatrix(kron(anc.matrix(), tensor_power(rho, 2).matrix()));
}

StateVector PreparedModel::register_state(const StateVector& psi) const {
  const ModelSpec& m = spec();
  if (m.cls == HypothesisClass::H2) throw DomainError("H2 models take a unitary input, not a state");
  if (psi.dim() != (std::size_t{1} << m.n)) {
    throw DimensionError("input state has dimension " + std::to_string(psi.dim()) + ", model expects " +
                         std::to_string(std::size_t{1} << m.n));
  }
  if (m.cls == HypothesisClass::H1) return tensor_power(psi, m.k);
  return kron(zero_state(1), tensor_power(psi, 2));
}

StateVector PreparedModel::register_state(const ComplexMatrix& w) const {
  const ModelSpec& m = spec();
  if (m.cls != HypothesisClass::H2) throw DomainError("only H2 models take a unitary input");
  const std::size_t d = std::size_t{1} << m.n;
  if (w.rows() != d || w.cols() != d) {
    throw DimensionError("input unitary must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  // (W (x) W) vec(M) = vec(W M W^T) for the row-major reshape M of psi_in.
  const ComplexMatrix mat(d, d, amplitudes(*m.psi_in));
  const ComplexMatrix out = w * mat * w.transpose();
  return StateVector::normalized(std::vector<cplx>(out.data(), out.data() + out.size()));
}

double PreparedModel::evaluate(const DensityMatrix& rho) const {
  return expectation(register_state(rho), conjugated().matrix);
}

double PreparedModel::evaluate(const StateVector& psi) const {
  return expectation(register_state(psi), conjugated().matrix);
}

double PreparedModel::evaluate(const ComplexMatrix& w) const {
  return expectation(register_state(w), conjugated().matrix);
}

namespace {

// Probabilities of each eigenvalue group under the register state.
template <typename Prob>
ShotEstimate sample_spectrum(const EigenDecomposition& eig, std::size_t shots, Stream& stream,
                             Prob prob) {
  std::vector<double> values;
  std::vector<double> weights;
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    const double p = std::max(0.0, prob(i));
    if (!values.empty() && std::abs(eig.values[i] - values.back()) < kEigenvalueMergeTol) {
      weights.back() += p;
    } else {
      values.push_back(eig.values[i]);
      weights.push_back(p);
    }
  }
  std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
  std::vector<std::size_t> counts(values.size(), 0);
  for (std::size_t s = 0; s < shots; ++s) ++counts[draw(stream)];
  return finish_estimate(values, counts, shots);
}

void check_shots(std::size_t shots) {
  if (shots == 0) throw DomainError("shots must be >= 1");
}

}  // namespace

ShotEstimate PreparedModel::estimate(const DensityMatrix& rho, std::size_t shots, Stream& stream) const {
  check_shots(shots);
  const DensityMatrix sigma = register_state(rho);
  const Observable& o = conjugated();
  if (o.rank_one) {
    return bernoulli_estimate(expectation(sigma, o.rank_one->projector()), shots, stream);
  }
  std::call_once(cache_->eig_once, [&] { cache_->eig = eigh(o.matrix); });
  const EigenDecomposition& eig = cache_->eig;
  const ComplexMatrix rotated = eig.vectors.adjoint() * sigma.matrix() * eig.vectors;
  return sample_spectrum(eig, shots, stream, [&](std::size_t i) { return rotated(i, i).real(); });
}

namespace {

ShotEstimate estimate_pure(const Observable& o, std::once_flag& once, EigenDecomposition& eig,
                           const StateVector& phi, std::size_t shots, Stream& stream) {
  if (o.rank_one) return bernoulli_estimate(std::norm(inner(*o.rank_one, phi)), shots, stream);
  std::call_once(once, [&] { eig = eigh(o.matrix); });
  const ComplexMatrix vdag = eig.vectors.adjoint();
  std::vector<double> probs(phi.dim());
  for (std::size_t i = 0; i < phi.dim(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < phi.dim(); ++j) acc += vdag(i, j) * phi[j];
    probs[i] = std::norm(acc);
  }
  return sample_spectrum(eig, shots, stream, [&](std::size_t i) { return probs[i]; });
}

}  // namespace

ShotEstimate PreparedModel::estimate(const StateVector& psi, std::size_t shots, Stream& stream) const {
  check_shots(shots);
  return estimate_pure(conjugated(), cache_->eig_once, cache_->eig, register_state(psi), shots, stream);
}

ShotEstimate PreparedModel::estimate(const ComplexMatrix& w, std::size_t shots, Stream& stream) const {
  check_shots(shots);
  return estimate_pure(conjugated(), cache_->eig_once, cache_->eig, register_state(w), shots, stream);
}

double evaluate(const ModelSpec& model, const DensityMatrix& rho) {
  return PreparedModel(model).evaluate(rho);
}
double evaluate(const ModelSpec& model, const StateVector& psi) {
  return PreparedModel(model).evaluate(psi);
}
double evaluate(const ModelSpec& model, const ComplexMatrix& w) {
  return PreparedModel(model).evaluate(w);
}

Observable conjugated_observable(const ModelSpec& model) { return PreparedModel(model).conjugated(); }

ShotEstimate estimate_with_shots(const ModelSpec& model, const DensityMatrix& rho, std::size_t shots,
                                 Stream& stream) {
  return PreparedModel(model).estimate(rho, shots, stream);
}
ShotEstimate estimate_with_shots(const ModelSpec& model, const StateVector& psi, std::size_t shots,
                                 Stream& stream) {
  return PreparedModel(model).estimate(psi, shots, stream);
}
ShotEstimate estimate_with_shots(const ModelSpec& model, const ComplexMatrix& w, std::size_t shots,
                                 Stream& stream) {
  return PreparedModel(model).estimate(w, shots, stream);
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const AnsatzSpec& a) {
  nlohmann::json j{{"kind", to_string(a.kind)}, {"qubits", a.qubits}, {"params", a.params}};
  switch (a.kind) {
    case AnsatzKind::Identity: break;
    case AnsatzKind::FixedUnitary: j["matrix"] = matrix_to_json(a.fixed); break;
    case AnsatzKind::Layered: {
      nlohmann::json gates = nlohmann::json::array();
      for (const Gate& g : a.gates) {
        nlohmann::json gj{{"gate", to_string(g.kind)}, {"qubit", g.qubit}};
        if (g.kind == GateKind::CNOT || g.kind == GateKind::CZ) gj["target"] = g.target;
        gates.push_back(gj);
      }
      j["gates"] = gates;
      break;
    }
    case AnsatzKind::QGCNN:
      j["graph"] = graph_to_json(a.graph);
      j["layers"] = a.layers;
      j["generators"] = a.generators;
      break;
  }
  return j;
}

AnsatzSpec ansatz_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const auto params = j.value("params", std::vector<double>{});
  if (kind == "identity") return AnsatzSpec::identity(j.at("qubits").get<std::size_t>());
  if (kind == "fixed") return AnsatzSpec::fixed_unitary(matrix_from_json(j.at("matrix")));
  if (kind == "layered") {
    std::vector<Gate> gates;
    for (const auto& gj : j.at("gates")) {
      gates.push_back({parse_gate_kind(gj.at("gate").get<std::string>()),
                       gj.at("qubit").get<std::size_t>(), gj.value("target", std::size_t{0})});
    }
    return AnsatzSpec::layered(j.at("qubits").get<std::size_t>(), std::move(gates), params);
  }
  if (kind == "qgcnn") {
    return AnsatzSpec::qgcnn(graph_from_json(j.at("graph")), j.at("layers").get<std::size_t>(),
                             j.at("generators").get<std::size_t>(), params);
  }
  throw DomainError("unknown ansatz kind '" + kind + "'");
}

nlohmann::json to_json(const ModelSpec& m) {
  nlohmann::json obs{{"tag", m.observable.tag}};
  bool by_tag = false;
  try {
    by_tag = !m.observable.tag.empty() &&
             distance(observable_from_tag(m.observable.tag, m.n).matrix, m.observable.matrix) < 1e-12;
  } catch (const Error&) {
    by_tag = false;
  }
  if (!by_tag) {
    obs["matrix"] = matrix_to_json(m.observable.matrix);
    obs["copies"] = m.observable.copies;
    obs["qubits_per_copy"] = m.observable.qubits_per_copy;
  }
  nlohmann::json j{{"class", to_string(m.cls)}, {"k", m.k}, {"n", m.n},
                   {"ansatz", to_json(m.ansatz)}, {"observable", obs}};
  if (m.psi_in) {
    const auto amps = amplitudes(*m.psi_in);
    std::vector<double> re(amps.size());
    std::vector<double> im(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
      re[i] = amps[i].real();
      im[i] = amps[i].imag();
    }
    j["psi_in"] = {{"dim", amps.size()}, {"re", re}, {"im", im}};
  }
  return j;
}

ModelSpec model_from_json(const nlohmann::json& j) {
  ModelSpec m;
  m.cls = parse_hypothesis_class(j.at("class").get<std::string>());
  m.k = j.at("k").get<std::size_t>();
  m.n = j.at("n").get<std::size_t>();
  m.ansatz = ansatz_from_json(j.at("ansatz"));
  const auto& oj = j.at("observable");
  if (oj.contains("matrix")) {
    m.observable = make_observable(matrix_from_json(oj.at("matrix")), oj.at("copies").get<std::size_t>(),
                                   oj.at("qubits_per_copy").get<std::size_t>(),
                                   oj.value("tag", std::string{}));
  } else {
    m.observable = observable_from_tag(oj.at("tag").get<std::string>(), m.n);
  }
  if (j.contains("psi_in")) {
    const auto& pj = j.at("psi_in");
    const auto re = pj.at("re").get<std::vector<double>>();
    const auto im = pj.at("im").get<std::vector<double>>();
    if (re.size() != im.size()) throw DimensionError("psi_in re/im length mismatch");
    std::vector<cplx> amps(re.size());
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = cplx(re[i], im[i]);
    m.psi_in = StateVector(std::move(amps));
  }
  m.validate();
  return m;
}

}  // namespace ginv
