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

#include "ginv/train.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "ginv/error.hpp"
#include "ginv/parallel.hpp"

namespace ginv {
namespace {

constexpr std::size_t kMaxHalvings = 20;
constexpr double kMarginRegularizer = 1e-12;

std::vector<double> targets_of(const StateDataset& data) {
  std::vector<double> t;
  t.reserve(data.items.size());
  for (const auto& it : data.items) t.push_back(static_cast<double>(it.label));
  return t;
}

std::vector<double> evaluate_items(const StateDataset& data, const ComplexMatrix& obs) {
  std::vector<double> out(data.items.size());
  parallel_chunks(data.items.size(), 16, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& it = data.items[i];
      out[i] = it.pure ? expectation(*it.pure, obs) : expectation(it.state, obs);
    }
  });
  return out;
}

}  // namespace

const char* to_string(LossKind kind) {
  return kind == LossKind::MseLabels ? "mse_labels" : "margin_separation";
}

LossKind parse_loss_kind(const std::string& name) {
  if (name == "mse_labels") return LossKind::MseLabels;
  if (name == "margin_separation") return LossKind::MarginSeparation;
  throw DomainError("unknown loss '" + name + "' (expected mse_labels or margin_separation)");
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw DomainError("learning rate must be positive");
  if (!(fd_step > 0.0)) throw DomainError("finite-difference step must be positive");
  if (iterations < 1) throw DomainError("iterations must be at least 1");
}

std::vector<double> ParametricModel::initial_parameters(Stream& stream) const {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> theta(parameter_count());
  for (auto& t : theta) t = u(stream);
  return theta;
}

GraphObservableModel::GraphObservableModel(std::size_t n) : n_(n) {
  if (n == 0 || n > 10) throw DomainError("graph observable model needs 1 <= n <= 10");
}

ComplexMatrix GraphObservableModel::single_qubit(std::span<const double> theta) {
  if (theta.size() != 3) throw DomainError("graph observable model takes 3 parameters");
  const cplx i(0.0, 1.0);
  const ComplexMatrix gen{{theta[2], cplx(theta[0], -theta[1])}, {cplx(theta[0], theta[1]), -theta[2]}};
  const ComplexMatrix u = expm_hermitian(gen, 1.0);
  const ComplexMatrix z{{1.0, 0.0}, {0.0, -1.0}};
  ComplexMatrix a = u * z * u.adjoint();
  return (a + a.adjoint()) * cplx(0.5);
}

Observable GraphObservableModel::observable(std::span<const double> theta) const {
  return make_observable(kron_power(single_qubit(theta), n_), 1, n_, "graph_observable");
}

std::vector<double> GraphObservableModel::values(std::span<const double> theta, const StateDataset& data) const {
  return evaluate_items(data, observable(theta).matrix);
}

AnsatzModel::AnsatzModel(ModelSpec base) : base_(std::move(base)) {
  base_.validate();
  if (base_.cls == HypothesisClass::H2) throw DomainError("AnsatzModel trains on state datasets; H2 takes unitaries");
}

std::vector<double> AnsatzModel::values(std::span<const double> theta, const StateDataset& data) const {
  ModelSpec spec = base_;
  spec.ansatz.params.assign(theta.begin(), theta.end());
  const PreparedModel model(std::move(spec));
  std::vector<double> out(data.items.size());
  parallel_chunks(data.items.size(), 16, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& it = data.items[i];
      out[i] = it.pure ? model.evaluate(*it.pure) : model.evaluate(it.state);
    }
  });
  return out;
}

double loss_from_values(std::span<const double> values, std::span<const double> targets, LossKind kind) {
  if (values.size() != targets.size()) throw DimensionError("values and targets differ in length");
  if (values.empty()) throw DomainError("loss over an empty dataset");
  const double n = static_cast<double>(values.size());
  if (kind == LossKind::MseLabels) {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += (values[i] - targets[i]) * (values[i] - targets[i]);
    return s / n;
  }
  double sum[2] = {0.0, 0.0}, sq[2] = {0.0, 0.0}, count[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int y = targets[i] > 0.5 ? 1 : 0;
    sum[y] += values[i];
    sq[y] += values[i] * values[i];
    count[y] += 1.0;
  }
  if (count[0] == 0.0 || count[1] == 0.0) throw DomainError("margin loss needs both classes");
  double mean[2], var[2];
  for (int y : {0, 1}) {
    mean[y] = sum[y] / count[y];
    var[y] = std::max(0.0, sq[y] / count[y] - mean[y] * mean[y]);
  }
  const double gap = mean[1] - mean[0];
  return -gap * gap / (var[0] + var[1] + kMarginRegularizer);
}

double loss(const ParametricModel& model, std::span<const double> theta, const StateDataset& data, LossKind kind) {
  const auto values = model.values(theta, data);
  const auto targets = targets_of(data);
  return loss_from_values(values, targets, kind);
}

std::vector<double> finite_diff_gradient(const std::function<double(std::span<const double>)>& f,
                                         std::span<const double> theta, double step) {
  if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
  std::vector<double> x(theta.begin(), theta.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + step;
    const double up = f(x);
    x[i] = keep - step;
    const double down = f(x);
    x[i] = keep;
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

TrainResult optimize(const ParametricModel& model, const StateDataset& data, const TrainConfig& config,
                     std::optional<std::vector<double>> theta0) {
  config.validate();
  TrainResult result;
  if (theta0) {
    if (theta0->size() != model.parameter_count()) throw DomainError("initial parameter vector has the wrong length");
    result.theta = std::move(*theta0);
  } else {
    Stream stream(config.seed);
    result.theta = model.initial_parameters(stream);
  }
  auto f = [&](std::span<const double> theta) {
    const double v = loss(model, theta, data, config.loss);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "non-finite loss " << v << " at theta = [";
      for (std::size_t i = 0; i < theta.size(); ++i) msg << (i ? ", " : "") << theta[i];
      msg << "]";
      throw NumericalError(msg.str());
    }
    return v;
  };
  double current = f(result.theta);
  result.loss_trace.push_back(current);
  result.theta_trace.push_back(result.theta);
  for (std::size_t it = 0; it < config.iterations; ++it) {
    const auto g = finite_diff_gradient(f, result.theta, config.fd_step);
    double lr = config.learning_rate;
    for (std::size_t h = 0; h <= kMaxHalvings; ++h) {
      std::vector<double> trial(result.theta);
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] -= lr * g[i];
      const double value = f(trial);
      if (value <= current) {
        result.theta = std::move(trial);
        current = value;
        break;
      }
      if (h < kMaxHalvings) {
        lr *= 0.5;
        ++result.halvings;
      }
    }
    result.loss_trace.push_back(current);
    result.theta_trace.push_back(result.theta);
  }
  return result;
}

std::string trace_csv(const TrainResult& result) {
  std::ostringstream out;
  out << std::setprecision(17) << "iteration,loss";
  const std::size_t p = result.theta.size();
  for (std::size_t i = 0; i < p; ++i) out << ",theta_" << i;
  out << "\n";
  for (std::size_t k = 0; k < result.loss_trace.size(); ++k) {
    out << k << "," << result.loss_trace[k];
    for (double t : result.theta_trace[k]) out << "," << t;
    out << "\n";
  }
  return out.str();
}

}  // namespace ginv
