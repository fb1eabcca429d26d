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

#include "ginv/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ginv/error.hpp"

namespace ginv {
namespace {

std::size_t probe_dim(const Probe& probe) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ComplexMatrix>) {
          return x.rows();
        } else {
          return x.dim();
        }
      },
      probe);
}

double evaluate_probe(const PreparedModel& model, const Probe& probe) {
  return std::visit([&](const auto& x) { return model.evaluate(x); }, probe);
}

Probe act(const ComplexMatrix& v, const Probe& probe) {
  if (const auto* rho = std::get_if<DensityMatrix>(&probe)) {
    return DensityMatrix(v * rho->matrix() * v.adjoint());
  }
  if (const auto* psi = std::get_if<StateVector>(&probe)) return apply(v, *psi);
  return Probe(v * std::get<ComplexMatrix>(probe) * v.adjoint());
}

}  // namespace

CheckReport check_invariance(const ModelSpec& model, GroupSampler& sampler, const Probe& probe,
                             std::size_t trials, double tol) {
  const PreparedModel prepared(model);
  if (sampler.degree() != probe_dim(probe)) {
    throw DimensionError("sampler degree " + std::to_string(sampler.degree()) +
                         " does not match model input dimension " + std::to_string(probe_dim(probe)));
  }
  const double base = evaluate_probe(prepared, probe);
  CheckReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const double moved = evaluate_probe(prepared, act(sampler.next(), probe));
    report.max_deviation = std::max(report.max_deviation, std::abs(moved - base));
  }
  report.pass = report.max_deviation < tol;
  return report;
}

}  // namespace ginv
