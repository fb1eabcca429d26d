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

#ifndef GINV_ANALYSIS_HPP
#define GINV_ANALYSIS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ginv/datasets.hpp"
#include "ginv/groups.hpp"
#include "ginv/invariance.hpp"
#include "ginv/models.hpp"
#include "ginv/observables.hpp"
#include "json.hpp"

namespace ginv {

// Closed-form Haar moments -------------------------------------------------

/// E_V Tr[V rho V^dag O] = Tr[O]/d for any state rho.
double haar_mean_conventional(const Observable& obs);

/// Var_V Tr[V rho_in V^dag O] for traceless O:
/// Tr[O^2] (Tr[rho_in^2]/(d^2-1) - 1/(d(d^2-1))). Throws if |Tr O| >= 1e-10.
double haar_var_time_reversal(const Observable& obs, const DensityMatrix& rho_in);

/// Var_V Tr[V rho V^dag O] for general O.
double haar_var_conventional(const Observable& obs, const DensityMatrix& rho_in);

/// 2/(d(d+1)): the Haar mean of |<Phi+|(U(x)U)|0>|^2 over U in U(d), which is
/// also the mean of |<Phi+|(W(x)W)|Phi+>|^2.
double haar_mean_enhanced_bell(std::size_t d);

/// Variance of |<Phi+|(U(x)U)|0>|^2 over Haar U: 4(d-1)/(d^2 (d+1)^2 (d+3)).
double haar_var_enhanced_bell(std::size_t d);

// Monte Carlo --------------------------------------------------------------

struct MomentReport {
  std::optional<double> analytic_mean;
  std::optional<double> analytic_var;
  /// Name of the closed form used for the analytic fields, empty if none.
  std::string analytic_form;
  double empirical_mean = 0.0;
  double empirical_var = 0.0;
  /// Empirical std / sqrt(samples).
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::vector<double> values;
};

/// Evaluates the model on V . template for `samples` draws of V, where V acts
/// by left action (V rho V^dag, V|psi>, V W). Sample i uses the sampler forked
/// by its chunk index, so the result depends only on the sampler seed.
MomentReport empirical_moments(const PreparedModel& model, const GroupSampler& sampler,
                               const Probe& input_template, std::size_t samples);

// Misclassification statistics ---------------------------------------------

/// P(0|c) = P(c|0) / (1 + P(c|0)).
double misclassification_probability(double p_c_given_0);

/// One-sided Cantelli bound Var / (Var + delta^2).
double cantelli_bound(double variance, double delta);

// Classification -----------------------------------------------------------

enum class RuleKind { Threshold, Midpoint, NearestMean };

const char* to_string(RuleKind kind);

struct ClassificationRule {
  RuleKind kind = RuleKind::Midpoint;
  double c = 0.0;
  double epsilon = 0.0;

  /// Label 1 iff the value lies in [c - eps, c + eps].
  static ClassificationRule threshold(double c, double epsilon);
  /// Label by the side of the midpoint between the two class means. Values
  /// within 1e-12 of the midpoint get label 0.
  static ClassificationRule midpoint();
  /// Label by the nearer class mean; ties (within 1e-12) go to label 0.
  static ClassificationRule nearest_mean();
};

struct ClassificationReport {
  ClassificationRule rule;
  std::array<double, 2> class_mean{};
  std::array<double, 2> class_var{};
  /// confusion[true][predicted].
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  double accuracy = 0.0;
  /// Fraction of label-0 items assigned label 1.
  double p_c_given_0 = 0.0;
  double misclassification = 0.0;
  /// Cantelli bound on P(c|0) from the label-0 spread; absent when the
  /// window does not lie above the label-0 mean.
  std::optional<double> cantelli;
  std::size_t shots = 0;
  std::vector<double> values;
  std::vector<double> standard_errors;
  std::vector<int> labels;
  std::vector<int> predictions;
};

/// With shots == 0 values are exact; otherwise estimate_with_shots is used,
/// with item i drawing from derive_seed(seed, i).
ClassificationReport classify(const StateDataset& data, const PreparedModel& model,
                              const ClassificationRule& rule, std::size_t shots = 0,
                              std::uint64_t seed = 0);
ClassificationReport classify(const UnitaryDataset& data, const PreparedModel& model,
                              const ClassificationRule& rule, std::size_t shots = 0,
                              std::uint64_t seed = 0);
/// Classifies precomputed values.
ClassificationReport classify_values(std::vector<double> values, std::vector<int> labels,
                                     const ClassificationRule& rule);

// Concentration ------------------------------------------------------------

enum class ConcentrationFamily {
  /// H1, k=1, O = Y (x) I^{n-1}, rho_in = |0><0|, V ~ U(d) or O(d).
  ConventionalOddY,
  /// H1, k=2, O = |Phi+><Phi+|, rho_in = |0><0|, V ~ U(d) or O(d).
  EnhancedBell,
};

const char* to_string(ConcentrationFamily family);
ConcentrationFamily parse_concentration_family(const std::string& name);

struct ConcentrationRow {
  std::size_t n = 0;
  std::size_t d = 0;
  double empirical_mean = 0.0;
  double empirical_var = 0.0;
  double analytic_var = 0.0;
  /// Standard error of the empirical variance.
  double var_standard_error = 0.0;
};

struct ConcentrationTable {
  ConcentrationFamily family = ConcentrationFamily::ConventionalOddY;
  /// Label-1 inputs draw from O(d) instead of U(d).
  bool label_one = false;
  std::vector<ConcentrationRow> rows;
  /// Least-squares slope of log2(var) against n; NaN if any variance is
  /// below 1e-18.
  double empirical_slope = 0.0;
  double analytic_slope = 0.0;
};

ConcentrationTable concentration_experiment(ConcentrationFamily family,
                                            const std::vector<std::size_t>& n_values,
                                            std::size_t samples, std::uint64_t seed,
                                            bool label_one = false);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

nlohmann::json to_json(const MomentReport& report);
nlohmann::json to_json(const ClassificationReport& report);
nlohmann::json to_json(const ConcentrationTable& table);

}  // namespace ginv

#endif  // GINV_ANALYSIS_HPP
