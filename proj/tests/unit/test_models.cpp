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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ginv/datasets.hpp"
#include "ginv/error.hpp"
#include "ginv/groups.hpp"
#include "ginv/invariance.hpp"
#include "ginv/models.hpp"
#include "oracles.hpp"

namespace ginv {
namespace {

const ComplexMatrix Z{{1.0, 0.0}, {0.0, -1.0}};

std::vector<double> random_params(std::size_t count, Stream& s) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  std::vector<double> p(count);
  for (auto& x : p) x = u(s);
  return p;
}

TEST(Realize, IdentityAndZeroEta) {
  EXPECT_EQ(distance(realize(AnsatzSpec::identity(2)), ComplexMatrix::identity(4)), 0.0);
  const auto q = AnsatzSpec::qgcnn(Graph::cycle(3), 2, 2, {1.0, 2.0, 3.0, 4.0, 0.0, 0.0, 0.0, 0.0});
  EXPECT_LT(distance(realize(q), ComplexMatrix::identity(8)), 1e-15);
}

TEST(Realize, QgcnnEdgelessIsLocalXRotation) {
  const auto q = AnsatzSpec::qgcnn(Graph::empty(3), 1, 1, {0.0, 1.0, std::numbers::pi / 4});
  const auto single = oracle::pauli_exponential(std::numbers::pi / 4, 1, 0, 0);
  EXPECT_LT(distance(realize(q), oracle::kron(oracle::kron(single, single), single)), 1e-12);
}

TEST(Realize, QgcnnMatchesProductOfExponentials) {
  const Graph g = Graph::path(3);
  const std::vector<double> theta{0.4, -1.1, 0.7, 0.2, 0.3, -0.5, 0.9, 1.3};
  const auto zz = graph_hamiltonian(g).matrix - graph_hamiltonian(Graph::empty(3)).matrix;
  const auto xs = graph_hamiltonian(Graph::empty(3)).matrix;
  ComplexMatrix expected = ComplexMatrix::identity(8);
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t q = 0; q < 2; ++q)
      expected = expm_hermitian(zz * cplx(theta[q]) + xs * cplx(theta[2 + q]), theta[4 + 2 * p + q]) * expected;
  EXPECT_LT(distance(realize(AnsatzSpec::qgcnn(g, 2, 2, {}), theta), expected), 1e-12);
}

TEST(Realize, LayeredGates) {
  const auto a = AnsatzSpec::layered(2, {{GateKind::H, 0, 0}, {GateKind::CNOT, 0, 1}}, {});
  const auto psi = apply(realize(a), zero_state(2));
  const auto bell = bell_state(1);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(psi[i] - bell[i]), 1e-15);
  const auto rx = AnsatzSpec::layered(1, {{GateKind::RX, 0, 0}}, {0.8});
  EXPECT_LT(distance(realize(rx), oracle::pauli_exponential(0.4, 1, 0, 0)), 1e-15);
  const auto cz = realize(AnsatzSpec::layered(2, {{GateKind::CZ, 0, 1}}, {}));
  EXPECT_EQ(cz(3, 3), cplx(-1.0));
}

TEST(Realize, ParameterMismatchThrows) {
  const auto a = hardware_efficient_ansatz(2, 2, {});
  EXPECT_EQ(a.parameter_count(), 8u);
  EXPECT_THROW(realize(a, std::vector<double>(3)), DomainError);
  EXPECT_THROW(AnsatzSpec::layered(2, {{GateKind::CNOT, 0, 0}}, {}), DomainError);
}

TEST(Realize, UnitaryForRandomParameters) {
  Stream s(1);
  const std::vector<AnsatzSpec> kinds{hardware_efficient_ansatz(3, 2, {}), AnsatzSpec::qgcnn(Graph::cycle(3), 2, 2, {}),
                                      AnsatzSpec::fixed_unitary(haar_unitary(8, s))};
  for (const auto& a : kinds)
    for (int t = 0; t < 100; ++t) EXPECT_TRUE(is_unitary(realize(a, random_params(a.parameter_count(), s)), 1e-9));
}

TEST(Realize, QgcnnCommutesWithAutomorphisms) {
  Stream s(2);
  for (const Graph& g : {Graph::cycle(4), Graph::complete(3)}) {
    const auto u = realize(AnsatzSpec::qgcnn(g, 2, 2, {}), random_params(8, s));
    for (const auto& perm : g.automorphisms()) {
      const auto p = permutation_operator(perm, PermutationTarget::Qubits).matrix;
      EXPECT_LT(frobenius_norm(commutator(u, p)), 1e-9);
    }
  }
}

TEST(Evaluate, H1SwapMaximallyMixed) {
  EXPECT_NEAR(evaluate(h1_model(1, 2, swap_operator(1)), DensityMatrix::maximally_mixed(1)), 0.5, 1e-12);
}

TEST(Evaluate, H1SwapIsPurity) {
  std::mt19937_64 rng(3);
  const DensityMatrix rho(oracle::random_density(4, rng));
  EXPECT_NEAR(evaluate(h1_model(2, 2, swap_operator(2)), rho), oracle::purity(rho.matrix()), 1e-10);
}

TEST(Evaluate, H2BellOnOrthogonal) {
  Stream s(4);
  const auto model = h2_model(2, bell_state(2), bell_projector(2));
  for (int t = 0; t < 10; ++t) EXPECT_NEAR(evaluate(model, haar_orthogonal(4, s)), 1.0, 1e-10);
  EXPECT_LT(evaluate(model, haar_unitary(4, s)), 1.0 - 1e-3);
}

TEST(Evaluate, H2MatchesDenseWTensorW) {
  Stream s(5);
  std::mt19937_64 rng(6);
  const StateVector psi(oracle::random_vector(16, rng));
  const auto o = make_observable(oracle::random_hermitian(16, rng), 2, 2, "");
  const auto w = haar_unitary(4, s);
  const auto phi = apply(oracle::kron(w, w), psi);
  EXPECT_NEAR(evaluate(h2_model(2, psi, o), w), expectation(phi, o.matrix), 1e-10);
}

TEST(Evaluate, H3SwapTestIsPurity) {
  std::mt19937_64 rng(7);
  const auto model = h3_model(1);
  EXPECT_NEAR(evaluate(model, StateVector(oracle::random_vector(2, rng))), 1.0, 1e-10);
  const DensityMatrix rho(oracle::random_density(4, rng));
  EXPECT_NEAR(evaluate(h3_model(2), rho), oracle::purity(rho.matrix()), 1e-10);
}

TEST(Evaluate, ClassAndDimensionMismatch) {
  const auto h1 = h1_model(1, 2, swap_operator(1));
  EXPECT_THROW(evaluate(h1, ComplexMatrix::identity(2)), DomainError);
  EXPECT_THROW(evaluate(h1, DensityMatrix::maximally_mixed(2)), DimensionError);
  const auto h2 = h2_model(1, bell_state(1), bell_projector(1));
  EXPECT_THROW(evaluate(h2, DensityMatrix::maximally_mixed(1)), DomainError);
  EXPECT_THROW(h1_model(1, 3, swap_operator(1)), DimensionError);
  EXPECT_THROW(h2_model(1, bell_state(2), bell_projector(1)), DimensionError);
}

TEST(SwapTest, ConjugationIdentity) {
  for (std::size_t n : {1, 2}) {
    const auto u = swap_test_unitary(n);
    const auto zii = kron(Z, ComplexMatrix::identity(std::size_t{1} << (2 * n)));
    const auto expected = oracle::kron(Z, swap_operator(n).matrix);
    EXPECT_LT(distance(u.adjoint() * zii * u, expected), 1e-10) << n;
  }
  EXPECT_LT(distance(conjugated_observable(h3_model(1)).matrix, kron(Z, swap_operator(1).matrix)), 1e-10);
}

TEST(SwapTest, AncillaCondition) {
  EXPECT_NO_THROW(ancilla_observable(Z, 1));
  EXPECT_THROW(ancilla_observable(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}, 1), DomainError);
  EXPECT_THROW(h3_model(1, ComplexMatrix{{-1.0, 0.0}, {0.0, 1.0}}), DomainError);
}

TEST(Conjugated, IdentityAnsatzIsObservable) {
  const auto o = swap_operator(1);
  EXPECT_EQ(distance(conjugated_observable(h1_model(1, 2, o)).matrix, o.matrix), 0.0);
}

TEST(Conjugated, DualPathConsistency) {
  Stream s(8);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 2);
    const auto ansatz = hardware_efficient_ansatz(2 * n, 2, random_params(8 * n, s));
    const auto o = make_observable(oracle::random_hermitian(std::size_t{1} << (2 * n), rng), 2, n, "");
    const auto model = h1_model(n, 2, o, ansatz);
    const DensityMatrix rho(oracle::random_density(std::size_t{1} << n, rng));
    const auto conj = conjugated_observable(model);
    EXPECT_TRUE(is_hermitian(conj.matrix));
    const auto r2 = oracle::kron(rho.matrix(), rho.matrix());
    EXPECT_NEAR(oracle::trace(oracle::matmul(r2, conj.matrix)).real(), evaluate(model, rho), 1e-10);
  }
}

TEST(Shots, DegenerateProjector) {
  Stream s(10);
  const auto model = h2_model(1, bell_state(1), bell_projector(1));
  const auto w = haar_orthogonal(2, s);
  for (std::size_t shots : {1, 7, 100}) {
    const auto e = estimate_with_shots(model, w, shots, s);
    EXPECT_EQ(e.estimate, 1.0);
    EXPECT_EQ(e.standard_error, 0.0);
  }
  EXPECT_THROW(estimate_with_shots(model, w, 0, s), DomainError);
}

TEST(Shots, SwapOnMaximallyMixed) {
  Stream s(11);
  const auto e = estimate_with_shots(h1_model(1, 2, swap_operator(1)), DensityMatrix::maximally_mixed(1), 10000, s);
  EXPECT_LT(std::abs(e.estimate - 0.5), 4.0 * e.standard_error);
}

TEST(Shots, Unbiased) {
  Stream s(12);
  std::mt19937_64 rng(13);
  const auto model = h1_model(2, 2, meyer_wallach_observable(2), hardware_efficient_ansatz(4, 1, random_params(8, s)));
  const StateVector psi(oracle::random_vector(4, rng));
  const PreparedModel prepared(model);
  const double exact = prepared.evaluate(psi);
  const int reps = 100;
  double sum = 0.0, var_sum = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto e = prepared.estimate(psi, 200, s);
    sum += e.estimate;
    var_sum += e.standard_error * e.standard_error;
  }
  EXPECT_LT(std::abs(sum / reps - exact), 4.0 * std::sqrt(var_sum) / reps);
}

TEST(Shots, MixedAndPurePathsAgree) {
  Stream s(14);
  std::mt19937_64 rng(15);
  const PreparedModel prepared(h1_model(1, 2, swap_operator(1)));
  const StateVector psi(oracle::random_vector(2, rng));
  const auto a = prepared.estimate(psi, 20000, s);
  const auto b = prepared.estimate(DensityMatrix::from_pure(psi), 20000, s);
  EXPECT_LT(std::abs(a.estimate - b.estimate), 4.0 * std::hypot(a.standard_error, b.standard_error) + 1e-12);
}

TEST(Shots, VarianceHalvesWhenShotsDouble) {
  Stream s(16);
  const PreparedModel prepared(h1_model(1, 1, make_observable(Z, 1, 1, "Z")));
  const auto psi = plus_state(1);
  auto empirical_var = [&](std::size_t shots) {
    const int reps = 400;
    double sum = 0.0, sq = 0.0;
    for (int r = 0; r < reps; ++r) {
      const double e = prepared.estimate(psi, shots, s).estimate;
      sum += e;
      sq += e * e;
    }
    return (sq - sum * sum / reps) / (reps - 1);
  };
  const double ratio = empirical_var(50) / empirical_var(100);
  // Variance ratio of two sample variances with 399 dof each: sd about 0.2.
  EXPECT_NEAR(ratio, 2.0, 0.6);
}

TEST(Invariance, SwapModelUnderUnitary) {
  std::mt19937_64 rng(17);
  auto sampler = GroupSampler::unitary(2, 18);
  const auto r = check_invariance(h1_model(1, 2, swap_operator(1)), sampler,
                                  DensityMatrix(oracle::random_density(2, rng)), 20, 1e-9);
  EXPECT_TRUE(r.pass) << r.max_deviation;
}

TEST(Invariance, BellModelOrthogonalVsUnitary) {
  std::mt19937_64 rng(19);
  const DensityMatrix rho(oracle::random_density(4, rng));
  const auto model = h1_model(2, 2, bell_projector(2));
  auto orth = GroupSampler::orthogonal(4, 20);
  EXPECT_TRUE(check_invariance(model, orth, rho, 20, 1e-9).pass);
  auto uni = GroupSampler::unitary(4, 21);
  const auto r = check_invariance(model, uni, rho, 50, 1e-9);
  EXPECT_GT(r.max_deviation, 1e-3);
}

TEST(Invariance, H2UnderOrthogonalConjugation) {
  Stream s(22);
  auto orth = GroupSampler::orthogonal(2, 23);
  const auto model = h2_model(1, bell_state(1), bell_projector(1));
  EXPECT_TRUE(check_invariance(model, orth, haar_unitary(2, s), 20, 1e-9).pass);
}

TEST(Invariance, DimensionMismatchThrows) {
  auto sampler = GroupSampler::unitary(4, 24);
  EXPECT_THROW(check_invariance(h1_model(1, 2, swap_operator(1)), sampler, DensityMatrix::maximally_mixed(1), 1, 1e-9),
               DimensionError);
}

TEST(ModelJson, RoundTrip) {
  Stream s(25);
  const std::vector<ModelSpec> models{
      h1_model(2, 2, meyer_wallach_observable(2), hardware_efficient_ansatz(4, 1, random_params(8, s))),
      h2_model(1, bell_state(1), bell_projector(1)), h3_model(1),
      h1_model(3, 1, make_observable(graph_hamiltonian(Graph::cycle(3)).matrix, 1, 3, "custom"),
               AnsatzSpec::qgcnn(Graph::cycle(3), 1, 1, {0.1, 0.2, 0.3}))};
  std::mt19937_64 rng(26);
  for (const auto& m : models) {
    const auto back = model_from_json(nlohmann::json::parse(to_json(m).dump()));
    EXPECT_EQ(back.cls, m.cls);
    EXPECT_LT(distance(PreparedModel(back).conjugated().matrix, PreparedModel(m).conjugated().matrix), 1e-12);
  }
}

}  // namespace
}  // namespace ginv
