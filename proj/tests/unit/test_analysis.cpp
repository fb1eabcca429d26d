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
#include <cstdlib>

#include "ginv/analysis.hpp"
#include "ginv/error.hpp"
#include "oracles.hpp"

namespace ginv {
namespace {

double var_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double m = 0.0;
  for (double x : v) m += x;
  m /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : v) {
    m2 += (x - m) * (x - m);
    m4 += std::pow(x - m, 4);
  }
  m2 /= n;
  m4 /= n;
  return std::sqrt((m4 - m2 * m2) / n);
}

Observable odd_y(std::size_t n) { return pauli_string("Y" + std::string(n - 1, 'I')).observable; }

TEST(Formulas, ConventionalMean) {
  EXPECT_NEAR(haar_mean_conventional(pauli_string("Z").observable), 0.0, 1e-15);
  EXPECT_NEAR(haar_mean_conventional(make_observable(ComplexMatrix::identity(4), 1, 2, "I")), 1.0, 1e-15);
}

TEST(Formulas, TimeReversalVariance) {
  EXPECT_NEAR(haar_var_time_reversal(odd_y(1), DensityMatrix::from_pure(zero_state(1))), 1.0 / 3.0, 1e-15);
  for (std::size_t n : {2, 3}) {
    const double d = std::pow(2.0, n);
    EXPECT_NEAR(haar_var_time_reversal(pauli_string("Y" + std::string(n - 1, 'Z')).observable,
                                       DensityMatrix::from_pure(zero_state(n))),
                1.0 / (d + 1.0), 1e-14);
  }
  EXPECT_THROW(haar_var_time_reversal(pauli_string("I").observable, DensityMatrix::maximally_mixed(1)), DomainError);
}

TEST(Formulas, GeneralVarianceReducesToTraceless) {
  std::mt19937_64 rng(1);
  const DensityMatrix rho(oracle::random_density(4, rng));
  const auto o = pauli_string("YX").observable;
  EXPECT_NEAR(haar_var_conventional(o, rho), haar_var_time_reversal(o, rho), 1e-14);
  EXPECT_NEAR(haar_var_conventional(make_observable(ComplexMatrix::identity(4), 1, 2, ""), rho), 0.0, 1e-14);
}

TEST(Formulas, EnhancedBell) {
  EXPECT_NEAR(haar_mean_enhanced_bell(2), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(haar_mean_enhanced_bell(4), 0.1, 1e-15);
  const double expected[] = {1.0 / 45, 3.0 / 700, 7.0 / 14256, 15.0 / 351424, 31.0 / 9757440};
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_NEAR(haar_var_enhanced_bell(std::size_t{1} << n), expected[n - 1], 1e-18);
}

class MonteCarlo : public ::testing::TestWithParam<std::size_t> {};

TEST_P(MonteCarlo, ConventionalMatchesFormula) {
  const std::size_t d = GetParam(), n = log2_exact(d);
  const PreparedModel model(h1_model(n, 1, odd_y(n)));
  const auto r = empirical_moments(model, GroupSampler::unitary(d, 10 + d), zero_state(n), 20000);
  EXPECT_EQ(r.analytic_form, "conventional_unitary");
  EXPECT_LT(std::abs(r.empirical_mean - *r.analytic_mean), 4.0 * r.standard_error);
  EXPECT_LT(std::abs(r.empirical_var - *r.analytic_var), 4.0 * var_se(r.values));
}

TEST_P(MonteCarlo, MixedInputMatchesFormula) {
  const std::size_t d = GetParam(), n = log2_exact(d);
  std::mt19937_64 rng(d);
  const DensityMatrix rho(oracle::random_density(d, rng));
  const auto o = make_observable(oracle::random_hermitian(d, rng), 1, n, "");
  const PreparedModel model(h1_model(n, 1, o));
  const auto r = empirical_moments(model, GroupSampler::unitary(d, 20 + d), rho, 20000);
  EXPECT_LT(std::abs(r.empirical_mean - *r.analytic_mean), 4.0 * r.standard_error);
  EXPECT_LT(std::abs(r.empirical_var - *r.analytic_var), 4.0 * var_se(r.values));
}

TEST_P(MonteCarlo, DynamicsMeanMatchesFormula) {
  const std::size_t d = GetParam(), n = log2_exact(d);
  const PreparedModel model(h2_model(n, bell_state(n), bell_projector(n)));
  const auto r = empirical_moments(model, GroupSampler::unitary(d, 30 + d), ComplexMatrix::identity(d), 20000);
  EXPECT_EQ(r.analytic_form, "enhanced_bell_dynamics_unitary");
  EXPECT_FALSE(r.analytic_var.has_value());
  EXPECT_LT(std::abs(r.empirical_mean - haar_mean_enhanced_bell(d)), 4.0 * r.standard_error);
}

TEST_P(MonteCarlo, BellProjectorOnStatesMatchesFormula) {
  const std::size_t d = GetParam(), n = log2_exact(d);
  const PreparedModel model(h1_model(n, 2, bell_projector(n)));
  const auto r = empirical_moments(model, GroupSampler::unitary(d, 40 + d), zero_state(n), 20000);
  EXPECT_EQ(r.analytic_form, "bell_projector_unitary");
  EXPECT_LT(std::abs(r.empirical_mean - *r.analytic_mean), 4.0 * r.standard_error);
  EXPECT_LT(std::abs(r.empirical_var - *r.analytic_var), 4.0 * var_se(r.values));
}

INSTANTIATE_TEST_SUITE_P(Dims, MonteCarlo, ::testing::Values(2, 4, 8));

TEST(Moments, LocalUnitaryNoGo) {
  std::mt19937_64 rng(2);
  const auto o = make_observable(oracle::random_hermitian(4, rng), 1, 2, "");
  const PreparedModel model(h1_model(2, 1, o));
  const auto r = empirical_moments(model, GroupSampler::local_unitary(2, 3), zero_state(2), 20000);
  EXPECT_EQ(r.analytic_form, "conventional_local_unitary");
  EXPECT_LT(std::abs(r.empirical_mean - o.matrix.trace().real() / 4.0), 4.0 * r.standard_error);
}

TEST(Moments, OrthogonalInputsAreConstant) {
  const PreparedModel enhanced(h2_model(2, bell_state(2), bell_projector(2)));
  const auto r = empirical_moments(enhanced, GroupSampler::orthogonal(4, 4), ComplexMatrix::identity(4), 500);
  EXPECT_LT(r.empirical_var, 1e-18);
  EXPECT_EQ(r.analytic_form, "enhanced_bell_orthogonal");
  const PreparedModel conventional(h1_model(2, 1, odd_y(2)));
  EXPECT_LT(empirical_moments(conventional, GroupSampler::orthogonal(4, 5), zero_state(2), 500).empirical_var, 1e-18);
}

TEST(Moments, DeterministicAcrossThreadCounts) {
  const PreparedModel model(h1_model(1, 1, odd_y(1)));
  ::setenv("GINV_THREADS", "1", 1);
  const auto a = empirical_moments(model, GroupSampler::unitary(2, 6), zero_state(1), 1000);
  ::setenv("GINV_THREADS", "3", 1);
  const auto b = empirical_moments(model, GroupSampler::unitary(2, 6), zero_state(1), 1000);
  ::unsetenv("GINV_THREADS");
  EXPECT_EQ(a.values, b.values);
  const auto c = empirical_moments(model, GroupSampler::unitary(2, 7), zero_state(1), 1000);
  EXPECT_NE(a.values, c.values);
}

TEST(Moments, Preconditions) {
  const PreparedModel model(h1_model(1, 1, odd_y(1)));
  EXPECT_THROW(empirical_moments(model, GroupSampler::unitary(2, 1), zero_state(1), 1), DomainError);
  EXPECT_THROW(empirical_moments(model, GroupSampler::unitary(4, 1), zero_state(1), 10), DimensionError);
}

TEST(Statistics, Misclassification) {
  EXPECT_EQ(misclassification_probability(0.0), 0.0);
  EXPECT_EQ(misclassification_probability(1.0), 0.5);
  EXPECT_NEAR(misclassification_probability(0.5), 1.0 / 3.0, 1e-15);
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = misclassification_probability(i / 100.0);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_THROW(misclassification_probability(1.5), DomainError);
}

TEST(Statistics, Cantelli) {
  EXPECT_EQ(cantelli_bound(0.0, 0.3), 0.0);
  EXPECT_NEAR(cantelli_bound(0.09, 0.3), 0.5, 1e-15);
  EXPECT_THROW(cantelli_bound(0.1, 0.0), DomainError);
}

TEST(Statistics, CantelliDominatesTails) {
  const PreparedModel model(h1_model(1, 1, odd_y(1)));
  const auto r = empirical_moments(model, GroupSampler::unitary(2, 8), zero_state(1), 10000);
  for (double delta : {0.2, 0.5, 0.8}) {
    double tail = 0.0;
    for (double v : r.values) tail += v - r.empirical_mean >= delta;
    tail /= static_cast<double>(r.values.size());
    EXPECT_LE(tail, cantelli_bound(r.empirical_var, delta)) << delta;
  }
}

TEST(Classify, PurityMidpoint) {
  const auto ds = purity_dataset(2, 60, 0.5, 9);
  const auto r = classify(ds, PreparedModel(h1_model(2, 2, swap_operator(2))), ClassificationRule::midpoint());
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_EQ(r.confusion[0][0] + r.confusion[0][1] + r.confusion[1][0] + r.confusion[1][1], 60u);
  EXPECT_EQ(classify(ds, PreparedModel(h1_model(2, 2, swap_operator(2))), ClassificationRule::nearest_mean()).accuracy,
            1.0);
}

TEST(Classify, DynamicsThreshold) {
  const auto ds = time_reversal_dynamics_dataset(3, 200, 10);
  const PreparedModel model(h2_model(3, bell_state(3), bell_projector(3)));
  const auto r = classify(ds, model, ClassificationRule::threshold(1.0, 0.1));
  EXPECT_EQ(r.accuracy, 1.0);
  const auto shots = classify(ds, model, ClassificationRule::threshold(1.0, 0.1), 50, 11);
  EXPECT_GE(shots.accuracy, 0.99);
  EXPECT_EQ(shots.shots, 50u);
}

TEST(Classify, ConstantModelHasNoInformation) {
  const auto ds = purity_dataset(1, 400, 0.6, 12);
  const auto o = make_observable(ComplexMatrix::identity(2) * cplx(0.5), 1, 1, "I/d");
  const auto r = classify(ds, PreparedModel(h1_model(1, 1, o)), ClassificationRule::midpoint());
  EXPECT_NEAR(r.accuracy, 0.5, 1e-12);
}

TEST(Classify, ThresholdWindowAndBounds) {
  const auto r = classify_values({0.0, 0.1, 0.95, 1.0, 1.2}, {0, 0, 1, 1, 0}, ClassificationRule::threshold(1.0, 0.1));
  EXPECT_EQ(r.predictions, (std::vector<int>{0, 0, 1, 1, 0}));
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_EQ(r.p_c_given_0, 0.0);
  ASSERT_TRUE(r.cantelli.has_value());
  EXPECT_LT(*r.cantelli, 1.0);
  EXPECT_THROW(classify_values({1.0}, {2}, ClassificationRule::midpoint()), DomainError);
}

TEST(Classify, InvariantUnderGroupConjugation) {
  auto ds = purity_dataset(2, 40, 0.4, 13);
  const PreparedModel model(h1_model(2, 2, swap_operator(2)));
  const auto before = classify(ds, model, ClassificationRule::midpoint());
  Stream s(14);
  for (auto& item : ds.items) {
    const auto v = haar_unitary(4, s);
    item.state = DensityMatrix(v * item.state.matrix() * v.adjoint());
    if (item.pure) item.pure = apply(v, *item.pure);
  }
  const auto after = classify(ds, model, ClassificationRule::midpoint());
  EXPECT_EQ(before.confusion, after.confusion);
  EXPECT_EQ(before.accuracy, after.accuracy);
}

TEST(Concentration, TableShapeAndLabelOne) {
  const auto t = concentration_experiment(ConcentrationFamily::ConventionalOddY, {1, 2, 3}, 2000, 15);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[2].d, 8u);
  EXPECT_NEAR(t.rows[0].analytic_var, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(t.analytic_slope, fit_slope({1, 2, 3}, {std::log2(1 / 3.0), std::log2(0.2), std::log2(1 / 9.0)}), 1e-12);
  const auto one = concentration_experiment(ConcentrationFamily::EnhancedBell, {1, 2}, 200, 16, true);
  for (const auto& row : one.rows) EXPECT_LT(row.empirical_var, 1e-18);
  EXPECT_TRUE(std::isnan(one.empirical_slope));
}

TEST(Concentration, SlopeFit) {
  EXPECT_NEAR(fit_slope({1, 2, 3, 4}, {1, -1, -3, -5}), -2.0, 1e-15);
  EXPECT_THROW(fit_slope({1}, {1}), DomainError);
  EXPECT_THROW(parse_concentration_family("x"), DomainError);
}

}  // namespace
}  // namespace ginv
