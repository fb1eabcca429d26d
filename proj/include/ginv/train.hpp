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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ginv/datasets.hpp"
#include "ginv/models.hpp"

namespace ginv {

enum class LossKind { MseLabels, MarginSeparation };

const char* to_string(LossKind kind);
LossKind parse_loss_kind(const std::string& name);

struct TrainConfig {
  double learning_rate = 0.1;
  std::size_t iterations = 100;
  double fd_step = 1e-5;
  std::uint64_t seed = 0;
  LossKind loss = LossKind::MseLabels;

  /// Throws DomainError unless lr > 0, step > 0 and iterations >= 1.
  void validate() const;
};

/// A model whose value on each dataset item depends on real parameters.
class ParametricModel {
 public:
  virtual ~ParametricModel() = default;
  virtual std::size_t parameter_count() const = 0;
  virtual std::vector<double> values(std::span<const double> theta, const StateDataset& data) const = 0;
  /// Starting point used by optimize() when none is given.
  virtual std::vector<double> initial_parameters(Stream& stream) const;
};

/// h(rho) = Tr[rho A(theta)^{(x)n}] with A(theta) = e^{-i theta.sigma} Z e^{i theta.sigma}.
/// S_n-invariant for every theta.
class GraphObservableModel final : public ParametricModel {
 public:
  explicit GraphObservableModel(std::size_t n);

  std::size_t parameter_count() const override { return 3; }
  std::vector<double> values(std::span<const double> theta, const StateDataset& data) const override;

  static ComplexMatrix single_qubit(std::span<const double> theta);
  Observable observable(std::span<const double> theta) const;

 private:
  std::size_t n_;
};

/// A ModelSpec whose ansatz parameters are trained.
class AnsatzModel final : public ParametricModel {
 public:
  explicit AnsatzModel(ModelSpec base);

  std::size_t parameter_count() const override { return base_.ansatz.parameter_count(); }
  std::vector<double> values(std::span<const double> theta, const StateDataset& data) const override;

 private:
  ModelSpec base_;
};

/// mse_labels: mean (h - y)^2.
/// margin_separation: -(mean_1 h - mean_0 h)^2 / (var_1 + var_0 + 1e-12), with
/// population variances per class.
double loss_from_values(std::span<const double> values, std::span<const double> targets, LossKind kind);
double loss(const ParametricModel& model, std::span<const double> theta, const StateDataset& data,
            LossKind kind);

/// Central differences (f(t + h e_i) - f(t - h e_i)) / 2h.
std::vector<double> finite_diff_gradient(const std::function<double(std::span<const double>)>& f,
                                         std::span<const double> theta, double step);

struct TrainResult {
  std::vector<double> theta;
  /// loss_trace[0] is the starting loss; one entry per iteration follows.
  std::vector<double> loss_trace;
  std::vector<std::vector<double>> theta_trace;
  std::size_t halvings = 0;
};

/// Gradient descent with backtracking: a step that increases the loss is
/// retried with half the learning rate, at most 20 times, after which the
/// iterate is kept. Throws NumericalError on a non-finite loss.
TrainResult optimize(const ParametricModel& model, const StateDataset& data, const TrainConfig& config,
                     std::optional<std::vector<double>> theta0 = std::nullopt);

/// "iteration,loss,theta_0,...,theta_{P-1}" rows.
std::string trace_csv(const TrainResult& result);

}  // namespace ginv

