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
#include <numeric>

#include "ginv/error.hpp"
#include "ginv/groups.hpp"
#include "ginv/observables.hpp"
#include "oracles.hpp"

namespace ginv {
namespace {

const cplx I(0.0, 1.0);

double value2(const Observable& o, const DensityMatrix& rho) { return expectation(tensor_power(rho, 2), o.matrix); }
double value2(const Observable& o, const StateVector& psi) { return expectation(tensor_power(psi, 2), o.matrix); }

std::vector<cplx> amps(const StateVector& s) { return {s.data(), s.data() + s.dim()}; }

StateVector random_product(std::size_t n, Stream& s) {
  std::vector<StateVector> f;
  for (std::size_t j = 0; j < n; ++j) f.push_back(haar_state(2, s));
  return product_state(f);
}

TEST(Swap, Examples) {
  const auto swap = swap_operator(1);
  EXPECT_NEAR(value2(swap, DensityMatrix::maximally_mixed(1)), 0.5, 1e-12);
  EXPECT_NEAR(value2(swap, plus_state(1)), 1.0, 1e-12);
  const cplx diag[] = {0.75, 0.25};
  EXPECT_NEAR(value2(swap, DensityMatrix(ComplexMatrix::diagonal(diag))), 0.625, 1e-12);
  EXPECT_LT(distance(swap.matrix * swap.matrix, ComplexMatrix::identity(4)), 1e-15);
}

TEST(Swap, EqualsPurityForRandomStates) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1, 2, 3}) {
    const DensityMatrix rho(oracle::random_density(std::size_t{1} << n, rng));
    EXPECT_NEAR(value2(swap_operator(n), rho), oracle::purity(rho.matrix()), 1e-10);
  }
}

TEST(SwapJ, MarginalPurity) {
  Stream s(2);
  EXPECT_NEAR(value2(swap_j(1, 3), random_product(3, s)), 1.0, 1e-12);
  EXPECT_NEAR(value2(swap_j(0, 2), ghz_state(2)), 0.5, 1e-12);
  EXPECT_NEAR(value2(swap_j(2, 3), ghz_state(3)), 0.5, 1e-12);
  std::mt19937_64 rng(3);
  const StateVector psi(oracle::random_vector(8, rng));
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(value2(swap_j(j, 3), psi), oracle::subset_purity(amps(psi), 3, {j}), 1e-10);
  }
  EXPECT_THROW(swap_j(3, 3), DomainError);
}

TEST(BellProjector, Examples) {
  EXPECT_NEAR(value2(bell_projector(1), zero_state(1)), 0.5, 1e-12);
  EXPECT_NEAR(value2(bell_projector(2), plus_state(2)), 0.25, 1e-12);
  const StateVector circ({1.0 / std::sqrt(2.0), I / std::sqrt(2.0)});
  EXPECT_NEAR(value2(bell_projector(1), circ), 0.0, 1e-12);
  EXPECT_TRUE(bell_projector(2).rank_one.has_value());
}

TEST(BellProjector, MatchesAmplitudeSumOracle) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto v = oracle::random_vector(4, rng);
    EXPECT_NEAR(value2(bell_projector(2), StateVector(v)), std::norm(oracle::bell_overlap(v)), 1e-12);
  }
}

TEST(Impurity, Examples) {
  Stream s(5);
  EXPECT_NEAR(value2(impurity_observable(0, 2), random_product(2, s)), 0.0, 1e-12);
  EXPECT_NEAR(value2(impurity_observable(0, 2), ghz_state(2)), 1.0, 1e-12);
  EXPECT_NEAR(value2(impurity_observable(1, 3), ghz_state(3)), 1.0, 1e-12);
}

TEST(MeyerWallach, Examples) {
  Stream s(6);
  EXPECT_NEAR(value2(meyer_wallach_observable(3), random_product(3, s)), 0.0, 1e-12);
  for (std::size_t n : {2, 3, 4}) EXPECT_NEAR(value2(meyer_wallach_observable(n), ghz_state(n)), 1.0, 1e-12) << n;
  EXPECT_NEAR(value2(meyer_wallach_observable(3), w_state(3)), 8.0 / 9.0, 1e-12);
}

TEST(Concentratable, Examples) {
  Stream s(7);
  const std::vector<std::size_t> q01{0, 1}, q012{0, 1, 2}, q1{1};
  EXPECT_NEAR(value2(concentratable_observable(q1, 3), random_product(3, s)), 0.0, 1e-12);
  EXPECT_NEAR(value2(concentratable_observable(q01, 2), bell_state(1)), 0.25, 1e-12);
  EXPECT_NEAR(value2(concentratable_observable(q012, 3), ghz_state(3)), 0.375, 1e-12);
  EXPECT_THROW(concentratable_observable(std::vector<std::size_t>{}, 2), DomainError);
}

TEST(Concentratable, SeparatesProductsFromGhz) {
  Stream s(8);
  for (std::size_t n : {2, 3, 4}) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const auto o = concentratable_observable(all, n);
    EXPECT_NEAR(value2(o, random_product(n, s)), 0.0, 1e-12);
    EXPECT_GT(value2(o, ghz_state(n)), 0.2);
  }
}

TEST(Ntangle, Examples) {
  EXPECT_NEAR(value2(ntangle_observable(2), bell_state(1)), 0.75, 1e-12);
  EXPECT_NEAR(value2(ntangle_observable(2), zero_state(2)), 1.0, 1e-12);
  EXPECT_NEAR(value2(ntangle_observable(1), plus_state(1)), 1.0, 1e-12);
}

TEST(Entanglement, ObservablesMatchPuritySumOracles) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    const auto v = oracle::random_vector(std::size_t{1} << n, rng);
    const StateVector psi(v);
    EXPECT_NEAR(value2(meyer_wallach_observable(n), psi), oracle::meyer_wallach(v, n), 1e-9);
    EXPECT_NEAR(value2(ntangle_observable(n), psi), oracle::ntangle(v, n), 1e-9);
    const std::vector<std::size_t> q{0, n - 1};
    EXPECT_NEAR(value2(concentratable_observable(q, n), psi), oracle::concentratable(v, n, q), 1e-9);
    EXPECT_NEAR(value2(impurity_observable(1, n), psi), 2.0 * (1.0 - oracle::subset_purity(v, n, {1})), 1e-9);
  }
}

TEST(Entanglement, PurityEvaluatorsMatchObservables) {
  std::mt19937_64 rng(10);
  const std::size_t n = 3;
  const auto rho = DensityMatrix::from_pure(StateVector(oracle::random_vector(8, rng)));
  const std::vector<std::size_t> q{0, 2};
  EXPECT_NEAR(meyer_wallach_from_purities(rho), value2(meyer_wallach_observable(n), rho), 1e-10);
  EXPECT_NEAR(ntangle_from_purities(rho), value2(ntangle_observable(n), rho), 1e-10);
  EXPECT_NEAR(concentratable_from_purities(rho, q), value2(concentratable_observable(q, n), rho), 1e-10);
  EXPECT_NEAR(impurity_from_purities(rho, 2), value2(impurity_observable(2, n), rho), 1e-10);
}

TEST(Entanglement, LocalUnitaryInvariance) {
  std::mt19937_64 rng(11);
  const std::size_t n = 3;
  const std::vector<std::size_t> q{0, 1, 2};
  const std::vector<Observable> obs{meyer_wallach_observable(n), ntangle_observable(n),
                                    concentratable_observable(q, n), impurity_observable(1, n), swap_j(0, n)};
  const DensityMatrix rho(oracle::random_density(8, rng));
  auto sampler = GroupSampler::local_unitary(n, 12);
  std::vector<double> base;
  for (const auto& o : obs) base.push_back(value2(o, rho));
  for (int t = 0; t < 100; ++t) {
    const auto v = sampler.next();
    const DensityMatrix moved(v * rho.matrix() * v.adjoint());
    for (std::size_t i = 0; i < obs.size(); ++i) EXPECT_NEAR(value2(obs[i], moved), base[i], 1e-9);
  }
}

TEST(Invariance, SwapSpanUnderUnitary) {
  std::mt19937_64 rng(13);
  Stream s(14);
  const DensityMatrix rho(oracle::random_density(4, rng));
  const ComplexMatrix o = ComplexMatrix::identity(16) * cplx(0.3) + swap_operator(2).matrix * cplx(-1.2);
  const double base = value2(make_observable(o, 2, 2, ""), rho);
  for (int t = 0; t < 100; ++t) {
    const auto v = haar_unitary(4, s);
    EXPECT_NEAR(expectation(tensor_power(DensityMatrix(v * rho.matrix() * v.adjoint()), 2), o), base, 1e-9);
  }
}

TEST(Invariance, BellOrthogonalButNotUnitary) {
  std::mt19937_64 rng(15);
  Stream s(16);
  const DensityMatrix rho(oracle::random_density(2, rng));
  const auto bell = bell_projector(1);
  const double base = value2(bell, rho);
  double max_unitary = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto o = haar_orthogonal(2, s);
    EXPECT_NEAR(value2(bell, DensityMatrix(o * rho.matrix() * o.adjoint())), base, 1e-9);
    const auto u = haar_unitary(2, s);
    max_unitary = std::max(max_unitary, std::abs(value2(bell, DensityMatrix(u * rho.matrix() * u.adjoint())) - base));
  }
  EXPECT_GT(max_unitary, 1e-3);
}

TEST(Pauli, ImaginaryFlag) {
  EXPECT_TRUE(pauli_string("Y").purely_imaginary);
  EXPECT_FALSE(pauli_string("YY").purely_imaginary);
  const auto yzx = pauli_string("YZX");
  EXPECT_TRUE(yzx.purely_imaginary);
  EXPECT_LT(distance(yzx.observable.matrix * yzx.observable.matrix, ComplexMatrix::identity(8)), 1e-15);
  EXPECT_THROW(pauli_string("XQ"), DomainError);
}

TEST(Pauli, FirstLetterActsOnQubitZero) {
  const auto zi = pauli_string("ZI").observable.matrix;
  EXPECT_NEAR(zi(2, 2).real(), -1.0, 1e-15);  // |10>
  EXPECT_NEAR(zi(1, 1).real(), 1.0, 1e-15);   // |01>
}

TEST(Hermitize, Examples) {
  const auto y = pauli_string("Y").observable.matrix;
  const auto [h0, a0] = hermitize(y);
  EXPECT_LT(distance(h0.matrix, y), 1e-15);
  EXPECT_LT(frobenius_norm(a0.matrix), 1e-15);
  const auto [h, a] = hermitize(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
  EXPECT_LT(distance(h.matrix, pauli_string("X").observable.matrix * cplx(0.5)), 1e-15);
  EXPECT_LT(distance(a.matrix, y * cplx(-0.5)), 1e-15);
}

TEST(Hermitize, PreservesCommutant) {
  std::mt19937_64 rng(17);
  Stream s(18);
  const ComplexMatrix a = ComplexMatrix::identity(4) * cplx(0.4, 1.1) + swap_operator(1).matrix * cplx(-0.7, 0.3);
  const auto [h, ah] = hermitize(a, 2);
  EXPECT_TRUE(is_hermitian(h.matrix));
  EXPECT_TRUE(is_hermitian(ah.matrix));
  for (int t = 0; t < 20; ++t) {
    const auto v = haar_unitary(2, s);
    const auto vv = kron(v, v);
    EXPECT_LT(frobenius_norm(commutator(h.matrix, vv)), 1e-9);
    EXPECT_LT(frobenius_norm(commutator(ah.matrix, vv)), 1e-9);
  }
}

TEST(Tags, RoundTrip) {
  for (std::string tag : {"swap", "bell", "meyer_wallach", "ntangle", "swap_j:1", "impurity:0", "concentratable:0,2"}) {
    const auto o = observable_from_tag(tag, 3);
    EXPECT_EQ(o.tag, tag);
    EXPECT_EQ(o.dim(), 64u);
  }
  EXPECT_EQ(observable_from_tag("pauli:XYZ", 3).dim(), 8u);
  EXPECT_THROW(observable_from_tag("nope", 2), DomainError);
}

}  // namespace
}  // namespace ginv
