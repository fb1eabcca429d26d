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

#ifndef GINV_INVARIANCE_HPP
#define GINV_INVARIANCE_HPP

#include <cstddef>
#include <variant>

#include "ginv/groups.hpp"
#include "ginv/models.hpp"
#include "ginv/tensor.hpp"

namespace ginv {

/// A model input: a state for H1/H3, a unitary for H2.
using Probe = std::variant<DensityMatrix, StateVector, ComplexMatrix>;

/// max over trials of |h(V . x) - h(x)| where V . x is conjugation
/// (V rho V^dag, V|psi>, or V W V^dag).
CheckReport check_invariance(const ModelSpec& model, GroupSampler& sampler, const Probe& probe,
                             std::size_t trials, double tol);

}  // namespace ginv

#endif  // GINV_INVARIANCE_HPP
