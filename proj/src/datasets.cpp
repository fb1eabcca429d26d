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

#include "ginv/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ginv/error.hpp"
#include "ginv/groups.hpp"

namespace ginv {
namespace {

// Balanced labels (0,1,0,1,...) in a seed-determined order.
std::vector<int> shuffled_labels(std::size_t count, Stream& stream) {
  std::vector<int> labels(count);
  for (std::size_t i = 0; i < count; ++i) labels[i] = static_cast<int>(i % 2);
  for (std::size_t i = count; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(labels[i - 1], labels[pick(stream)]);
  }
  return labels;
}

std::size_t checked_dim(std::size_t n) {
  if (n == 0 || n > 12) throw DomainError("qubit count must be in [1, 12]");
  return std::size_t{1} << n;
}

StateVector first_column(const ComplexMatrix& u) {
  std::vector<cplx> v(u.rows());
  for (std::size_t r = 0; r < u.rows(); ++r) v[r] = u(r, 0);
  return StateVector::normalized(std::move(v));
}

LabeledState pure_item(StateVector psi, int label, nlohmann::json provenance = nlohmann::json::object()) {
  DensityMatrix rho = DensityMatrix::from_pure(psi);
  return LabeledState{std::move(rho), label, std::move(psi), std::move(provenance)};
}

Permutation random_permutation(std::size_t n, Stream& stream) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(p[i - 1], p[pick(stream)]);
  }
  return p;
}

StateVector permute_qubits(const StateVector& psi, std::span<const std::size_t> perm) {
  std::vector<cplx> out(psi.dim());
  for (std::size_t x = 0; x < psi.dim(); ++x) out[permute_index(x, perm, 1)] = psi[x];
  return StateVector(std::move(out));
}

}  // namespace

double depolarizing_weight_for_purity(double b, std::size_t d) {
  const double inv_d = 1.0 / static_cast<double>(d);
  // Tr[rho^2] = p^2 (1 - 1/d) + 1/d
  if (!(b >= inv_d) || !(b < 1.0)) {
    throw DomainError("target purity must lie in [1/d, 1); got " + std::to_string(b));
  }
  return std::sqrt((b - inv_d) / (1.0 - inv_d));
}

StateDataset purity_dataset(std::size_t n, std::size_t count, double b, std::uint64_t seed) {
  const std::size_t d = checked_dim(n);
  const double p = depolarizing_weight_for_purity(b, d);
  Stream stream(seed);
  StateDataset ds{"purity", {{"n", n}, {"count", count}, {"b", b}, {"p", p},
                             {"mixed_family", "depolarized_haar"}}, seed, {}};
  const ComplexMatrix mixed = ComplexMatrix::identity(d) * cplx((1.0 - p) / static_cast<double>(d));
  for (int label : shuffled_labels(count, stream)) {
    StateVector psi = haar_state(d, stream);
    if (label == 1) {
      ds.items.push_back(pure_item(std::move(psi), 1));
    } else {
      DensityMatrix rho(psi.projector() * cplx(p) + mixed);
      ds.items.push_back(LabeledState{std::move(rho), 0, std::nullopt, {{"p", p}}});
    }
  }
  return ds;
}

StateDataset time_reversal_state_dataset(std::size_t n, std::size_t count, std::uint64_t seed) {
  const std::size_t d = checked_dim(n);
  Stream stream(seed);
  StateDataset ds{"time_reversal_states", {{"n", n}, {"count", count}, {"fiducial", "zero"}},
                  seed, {}};
  for (int label : shuffled_labels(count, stream)) {
    const ComplexMatrix v = label == 1 ? haar_orthogonal(d, stream) : haar_unitary(d, stream);
    ds.items.push_back(pure_item(first_column(v), label));
  }
  return ds;
}

UnitaryDataset time_reversal_dynamics_dataset(std::size_t n, std::size_t count,
                                              std::uint64_t seed) {
  const std::size_t d = checked_dim(n);
  Stream stream(seed);
  UnitaryDataset ds{"time_reversal_dynamics", {{"n", n}, {"count", count}}, seed, {}};
  for (int label : shuffled_labels(count, stream)) {
    ds.items.push_back(
        LabeledUnitary{label == 1 ? haar_orthogonal(d, stream) : haar_unitary(d, stream), label});
  }
  return ds;
}

const char* to_string(EntanglementMeasure m) {
  switch (m) {
    case EntanglementMeasure::MeyerWallach: return "meyer_wallach";
    case EntanglementMeasure::Concentratable: return "concentratable";
    case EntanglementMeasure::Impurity: return "impurity";
  }
  return "?";
}

EntanglementMeasure parse_entanglement_measure(const std::string& name) {
  if (name == "meyer_wallach") return EntanglementMeasure::MeyerWallach;
  if (name == "concentratable") return EntanglementMeasure::Concentratable;
  if (name == "impurity") return EntanglementMeasure::Impurity;
  throw DomainError("unknown entanglement measure '" + name +
                    "' (expected meyer_wallach, concentratable or impurity)");
}

Observable measure_observable(EntanglementMeasure m, std::size_t n) {
  switch (m) {
    case EntanglementMeasure::MeyerWallach: return meyer_wallach_observable(n);
    case EntanglementMeasure::Concentratable: {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), std::size_t{0});
      return concentratable_observable(all, n);
    }
    case EntanglementMeasure::Impurity: return impurity_observable(0, n);
  }
  throw DomainError("unknown entanglement measure");
}

StateDataset entanglement_dataset(std::size_t n, std::size_t count, double b,
                                  EntanglementMeasure measure, std::uint64_t seed) {
  checked_dim(n);
  if (n < 2) throw DomainError("entanglement dataset needs n >= 2");
  const Observable obs = measure_observable(measure, n);
  const StateVector zero = zero_state(n);
  const StateVector ghz = ghz_state(n);
  auto family = [&](double alpha) {
    std::vector<cplx> v(zero.dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::cos(alpha) * zero[i] + std::sin(alpha) * ghz[i];
    return StateVector::normalized(std::move(v));
  };
  auto value = [&](double alpha) {
    const StateVector psi = family(alpha);
    return expectation(tensor_power(psi, 2), obs.matrix);
  };

  // Bisection on alpha in [0, pi/2]; the bracket must straddle b.
  double lo = 0.0;
  double hi = std::acos(-1.0) / 2.0;
  double f_lo = value(lo) - b;
  const double f_hi = value(hi) - b;
  double alpha;
  if (std::abs(f_hi) <= 1e-12) {
    alpha = hi;
  } else {
    if (f_lo * f_hi > 0.0 || !(b > 0.0)) {
      throw DomainError("entanglement target b = " + std::to_string(b) +
                        " is not attainable for measure " + to_string(measure));
    }
    alpha = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
      alpha = 0.5 * (lo + hi);
      const double f_mid = value(alpha) - b;
      if (std::abs(f_mid) < 1e-9 || hi - lo < 1e-15) break;
      if ((f_mid < 0.0) == (f_lo < 0.0)) {
        lo = alpha;
        f_lo = f_mid;
      } else {
        hi = alpha;
      }
    }
  }
  const StateVector entangled = family(alpha);

  Stream stream(seed);
  StateDataset ds{"entanglement",
                  {{"n", n}, {"count", count}, {"b", b}, {"measure", to_string(measure)},
                   {"alpha", alpha}},
                  seed,
                  {}};
  for (int label : shuffled_labels(count, stream)) {
    if (label == 0) {
      std::vector<StateVector> factors;
      for (std::size_t j = 0; j < n; ++j) factors.push_back(haar_state(2, stream));
      ds.items.push_back(pure_item(product_state(factors), 0));
    } else {
      StateVector psi = entangled;
      for (std::size_t j = 0; j < n; ++j) psi = apply_local(haar_unitary(2, stream), j, psi);
      ds.items.push_back(pure_item(std::move(psi), 1, {{"alpha", alpha}}));
    }
  }
  return ds;
}

Observable graph_hamiltonian(const Graph& g) {
  const std::size_t n = g.nodes();
  const std::size_t d = checked_dim(n);
  ComplexMatrix h(d, d);
  for (std::size_t x = 0; x < d; ++x) {
    auto bit = [&](std::size_t q) { return (x >> (n - 1 - q)) & 1U; };
    double diag = 0.0;
    for (const auto& [a, b] : g.edges()) diag += bit(a) == bit(b) ? 1.0 : -1.0;
    h(x, x) += diag;
    for (std::size_t q = 0; q < n; ++q) h(x ^ (std::size_t{1} << (n - 1 - q)), x) += 1.0;
  }
  return make_observable(std::move(h), 1, n, "graph:" + g.to_string());
}

StateVector graph_state(const Graph& g, double t) {
  return apply(expm_hermitian(graph_hamiltonian(g).matrix, t), plus_state(g.nodes()));
}

StateDataset graph_dataset(const Graph& g0, const Graph& g1, std::size_t count, double t,
                           std::uint64_t seed) {
  if (g0.nodes() != g1.nodes()) throw DomainError("reference graphs differ in node count");
  if (is_isomorphic(g0, g1)) throw DomainError("reference graphs are isomorphic");
  const std::size_t n = g0.nodes();
  Stream stream(seed);
  StateDataset ds{"graph",
                  {{"n", n}, {"count", count}, {"t", t}, {"g0", graph_to_json(g0)},
                   {"g1", graph_to_json(g1)}, {"fiducial", "plus"}},
                  seed,
                  {}};
  for (int label : shuffled_labels(count, stream)) {
    const Permutation pi = random_permutation(n, stream);
    const Graph g = (label == 1 ? g1 : g0).relabeled(pi);
    ds.items.push_back(pure_item(graph_state(g, t), label,
                                 {{"permutation", pi}, {"graph", graph_to_json(g)}}));
  }
  return ds;
}

bool graph_orbits_coincide(const Graph& g0, const Graph& g1, double t) {
  const StateVector s0 = graph_state(g0, t);
  const StateVector s1 = graph_state(g1, t);
  Permutation p(g0.nodes());
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    if (1.0 - std::norm(inner(permute_qubits(s0, p), s1)) < 1e-6) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  std::vector<double> re(m.size());
  std::vector<double> im(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    re[i] = m.data()[i].real();
    im[i] = m.data()[i].imag();
  }
  return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const std::size_t dim = j.at("dim").get<std::size_t>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != dim * dim || im.size() != dim * dim) {
    throw DimensionError("serialized matrix entry count does not match dim");
  }
  std::vector<cplx> entries(dim * dim);
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = cplx(re[i], im[i]);
  return ComplexMatrix(dim, dim, std::move(entries));
}

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  return {{"n", g.nodes()}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
  std::vector<Graph::Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  return Graph(j.at("n").get<std::size_t>(), std::move(edges));
}

nlohmann::json to_json(const StateDataset& ds) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& it : ds.items) {
    items.push_back({{"label", it.label}, {"state", matrix_to_json(it.state.matrix())}});
  }
  return {{"generator", ds.generator}, {"params", ds.params}, {"seed", ds.seed}, {"items", items}};
}

nlohmann::json to_json(const UnitaryDataset& ds) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& it : ds.items) {
    items.push_back({{"label", it.label}, {"unitary", matrix_to_json(it.unitary)}});
  }
  return {{"generator", ds.generator}, {"params", ds.params}, {"seed", ds.seed}, {"items", items}};
}

StateDataset state_dataset_from_json(const nlohmann::json& j) {
  StateDataset ds{j.at("generator").get<std::string>(), j.at("params"),
                  j.at("seed").get<std::uint64_t>(), {}};
  for (const auto& it : j.at("items")) {
    const int label = it.at("label").get<int>();
    if (label != 0 && label != 1) throw DomainError("dataset label must be 0 or 1");
    ds.items.push_back(LabeledState{DensityMatrix(matrix_from_json(it.at("state"))), label,
                                    std::nullopt, nlohmann::json::object()});
  }
  return ds;
}

UnitaryDataset unitary_dataset_from_json(const nlohmann::json& j) {
  UnitaryDataset ds{j.at("generator").get<std::string>(), j.at("params"),
                    j.at("seed").get<std::uint64_t>(), {}};
  for (const auto& it : j.at("items")) {
    const int label = it.at("label").get<int>();
    if (label != 0 && label != 1) throw DomainError("dataset label must be 0 or 1");
    ComplexMatrix u = matrix_from_json(it.at("unitary"));
    if (!is_unitary(u)) throw DomainError("serialized dynamics item is not unitary");
    ds.items.push_back(LabeledUnitary{std::move(u), label});
  }
  return ds;
}

}  // namespace ginv
