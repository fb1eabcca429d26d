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

#include "ginv/observables.hpp"

#include <cmath>
#include <string>

#include "ginv/error.hpp"
#include "ginv/groups.hpp"

namespace ginv {
namespace {

std::size_t qubit_dim(std::size_t n) {
  if (n == 0) throw DomainError("qubit count must be positive");
  if (n > 20) throw CapacityError("too many qubits for a dense operator");
  return std::size_t{1} << n;
}

// sum over alpha subset of `mask` of weight(|alpha|) * SWAP_alpha on two copies of n qubits.
ComplexMatrix weighted_subset_swaps(std::size_t n, std::size_t mask,
                                    double (*weight)(std::size_t popcount)) {
  const std::size_t dim = qubit_dim(2 * n);
  ComplexMatrix out(dim, dim);
  Permutation perm(2 * n);
  for (std::size_t alpha = mask;; alpha = (alpha - 1) & mask) {
    for (std::size_t q = 0; q < 2 * n; ++q) perm[q] = q;
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if ((alpha >> j) & 1U) {
        std::swap(perm[j], perm[n + j]);
        ++count;
      }
    }
    const double w = weight(count);
    for (std::size_t x = 0; x < dim; ++x) out(permute_index(x, perm, 1), x) += w;
    if (alpha == 0) break;
  }
  return out;
}

std::size_t subset_mask(std::span<const std::size_t> q_set, std::size_t n) {
  std::size_t mask = 0;
  for (std::size_t q : q_set) {
    if (q >= n) throw DomainError("qubit index " + std::to_string(q) + " out of range");
    mask |= std::size_t{1} << q;
  }
  return mask;
}

}  // namespace

Observable make_observable(ComplexMatrix matrix, std::size_t copies, std::size_t qubits_per_copy,
                           std::string tag) {
  if (copies == 0 || qubits_per_copy == 0) throw DomainError("observable needs k, n >= 1");
  const std::size_t expected = qubit_dim(copies * qubits_per_copy);
  if (!matrix.is_square() || matrix.rows() != expected) {
    throw DimensionError("observable '" + tag + "' has dimension " +
                         std::to_string(matrix.rows()) + ", expected " + std::to_string(expected));
  }
  if (!is_hermitian(matrix)) throw DomainError("observable '" + tag + "' is not Hermitian");
  return Observable{std::move(matrix), copies, qubits_per_copy, std::move(tag), std::nullopt};
}

Observable swap_operator(std::size_t n) {
  qubit_dim(n);
  return make_observable(permutation_operator({1, 0}, PermutationTarget::Copies, n).matrix, 2, n,
                         "swap");
}

Observable swap_j(std::size_t j, std::size_t n) {
  if (j >= n) throw DomainError("swap_j: qubit index out of range");
  Permutation perm(2 * n);
  for (std::size_t q = 0; q < perm.size(); ++q) perm[q] = q;
  std::swap(perm[j], perm[n + j]);
  return make_observable(permutation_operator(perm, PermutationTarget::Qubits).matrix, 2, n,
                         "swap_j:" + std::to_string(j));
}

Observable bell_projector(std::size_t n) {
  qubit_dim(n);
  StateVector phi = bell_state(n);
  Observable o = make_observable(phi.projector(), 2, n, "bell");
  o.rank_one = std::move(phi);
  return o;
}

Observable impurity_observable(std::size_t j, std::size_t n) {
  const std::size_t dim = qubit_dim(2 * n);
  ComplexMatrix m = (ComplexMatrix::identity(dim) - swap_j(j, n).matrix) * cplx(2.0);
  return make_observable(std::move(m), 2, n, "impurity:" + std::to_string(j));
}

Observable meyer_wallach_observable(std::size_t n) {
  const std::size_t dim = qubit_dim(2 * n);
  ComplexMatrix m(dim, dim);
  for (std::size_t j = 0; j < n; ++j) m += ComplexMatrix::identity(dim) - swap_j(j, n).matrix;
  m *= 2.0 / static_cast<double>(n);
  return make_observable(std::move(m), 2, n, "meyer_wallach");
}

Observable concentratable_observable(std::span<const std::size_t> q_set, std::size_t n) {
  if (q_set.empty()) throw DomainError("concentratable_observable: empty qubit set");
  const std::size_t mask = subset_mask(q_set, n);
  std::size_t size = 0;
  for (std::size_t m = mask; m != 0; m &= m - 1) ++size;
  ComplexMatrix sum = weighted_subset_swaps(n, mask, [](std::size_t) { return 1.0; });
  ComplexMatrix m = ComplexMatrix::identity(sum.rows()) - sum * cplx(std::ldexp(1.0, -static_cast<int>(size)));
  std::string tag = "concentratable:";
  for (std::size_t q = 0; q < n; ++q) {
    if ((mask >> q) & 1U) {
      if (tag.back() != ':') tag += ',';
      tag += std::to_string(q);
    }
  }
  return make_observable(std::move(m), 2, n, std::move(tag));
}

Observable ntangle_observable(std::size_t n) {
  qubit_dim(n);
  const std::size_t mask = (std::size_t{1} << n) - 1;
  ComplexMatrix sum =
      weighted_subset_swaps(n, mask, [](std::size_t c) { return c % 2 == 0 ? 1.0 : -1.0; });
  ComplexMatrix m = ComplexMatrix::identity(sum.rows()) - sum * cplx(std::ldexp(1.0, -static_cast<int>(n)));
  return make_observable(std::move(m), 2, n, "ntangle");
}

PauliObservable pauli_string(std::string_view spec) {
  if (spec.empty()) throw DomainError("pauli_string: empty specification");
  const cplx i(0.0, 1.0);
  ComplexMatrix out;
  for (char c : spec) {
    ComplexMatrix f;
    switch (c) {
      case 'I': f = {{1.0, 0.0}, {0.0, 1.0}}; break;
      case 'X': f = {{0.0, 1.0}, {1.0, 0.0}}; break;
      case 'Y': f = {{0.0, -i}, {i, 0.0}}; break;
      case 'Z': f = {{1.0, 0.0}, {0.0, -1.0}}; break;
      default: throw DomainError(std::string("pauli_string: unknown factor '") + c + "'");
    }
    out = out.empty() ? std::move(f) : kron(out, f);
  }
  bool imaginary = true;
  for (const auto& v : out.entries()) {
    if (v.real() != 0.0) {
      imaginary = false;
      break;
    }
  }
  return {make_observable(std::move(out), 1, spec.size(), "pauli:" + std::string(spec)),
          imaginary};
}

std::pair<Observable, Observable> hermitize(const ComplexMatrix& a, std::size_t copies) {
  if (!a.is_square()) throw DimensionError("hermitize requires a square matrix");
  const std::size_t total = log2_exact(a.rows());
  if (copies == 0 || total % copies != 0) {
    throw DimensionError("hermitize: dimension incompatible with copy count");
  }
  const ComplexMatrix adj = a.adjoint();
  ComplexMatrix re = (a + adj) * cplx(0.5);
  ComplexMatrix im = (a - adj) * cplx(0.0, 0.5);
  return {make_observable(std::move(re), copies, total / copies, "hermitian_part"),
          make_observable(std::move(im), copies, total / copies, "antihermitian_part")};
}

Observable observable_from_tag(std::string_view tag, std::size_t n) {
  const auto colon = tag.find(':');
  const std::string_view head = tag.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : tag.substr(colon + 1);
  auto parse_list = [&]() {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= arg.size()) {
      const auto comma = arg.find(',', pos);
      const std::string item(arg.substr(pos, comma == std::string_view::npos ? arg.npos : comma - pos));
      if (item.empty()) throw DomainError("malformed observable tag '" + std::string(tag) + "'");
      out.push_back(std::stoul(item));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  if (head == "swap") return swap_operator(n);
  if (head == "bell") return bell_projector(n);
  if (head == "meyer_wallach") return meyer_wallach_observable(n);
  if (head == "ntangle") return ntangle_observable(n);
  if (head == "swap_j") return swap_j(parse_list().at(0), n);
  if (head == "impurity") return impurity_observable(parse_list().at(0), n);
  if (head == "concentratable") {
    const auto q = parse_list();
    return concentratable_observable(q, n);
  }
  if (head == "pauli") return pauli_string(arg).observable;
  throw DomainError("unknown observable tag '" + std::string(tag) + "'");
}

// ---------------------------------------------------------------------------

StateVector zero_state(std::size_t n) { return StateVector::basis(qubit_dim(n), 0); }

StateVector plus_state(std::size_t n) {
  const std::size_t d = qubit_dim(n);
  return StateVector::normalized(std::vector<cplx>(d, 1.0));
}

StateVector ghz_state(std::size_t n) {
  const std::size_t d = qubit_dim(n);
  std::vector<cplx> v(d);
  v.front() = 1.0;
  v.back() = 1.0;
  return StateVector::normalized(std::move(v));
}

StateVector w_state(std::size_t n) {
  const std::size_t d = qubit_dim(n);
  std::vector<cplx> v(d);
  for (std::size_t j = 0; j < n; ++j) v[std::size_t{1} << j] = 1.0;
  return StateVector::normalized(std::move(v));
}

StateVector product_state(std::span<const StateVector> factors) {
  if (factors.empty()) throw DomainError("product_state: no factors");
  StateVector out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

double reduced_purity(const DensityMatrix& rho, std::span<const std::size_t> subset) {
  return partial_trace(rho, subset).purity();
}

double impurity_from_purities(const DensityMatrix& rho, std::size_t j) {
  const std::size_t keep[] = {j};
  return 2.0 * (1.0 - reduced_purity(rho, keep));
}

double meyer_wallach_from_purities(const DensityMatrix& rho) {
  const std::size_t n = rho.qubits();
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t keep[] = {j};
    s += 1.0 - reduced_purity(rho, keep);
  }
  return 2.0 * s / static_cast<double>(n);
}

namespace {
double signed_purity_sum(const DensityMatrix& rho, std::size_t mask, bool alternate) {
  const std::size_t n = rho.qubits();
  double s = 0.0;
  for (std::size_t alpha = mask;; alpha = (alpha - 1) & mask) {
    std::vector<std::size_t> subset;
    for (std::size_t q = 0; q < n; ++q) {
      if ((alpha >> q) & 1U) subset.push_back(q);
    }
    const double sign = alternate && subset.size() % 2 == 1 ? -1.0 : 1.0;
    s += sign * reduced_purity(rho, subset);
    if (alpha == 0) break;
  }
  return s;
}
}  // namespace

double concentratable_from_purities(const DensityMatrix& rho, std::span<const std::size_t> q_set) {
  if (q_set.empty()) throw DomainError("concentratable: empty qubit set");
  const std::size_t mask = subset_mask(q_set, rho.qubits());
  std::size_t size = 0;
  for (std::size_t m = mask; m != 0; m &= m - 1) ++size;
  return 1.0 - std::ldexp(signed_purity_sum(rho, mask, false), -static_cast<int>(size));
}

double ntangle_from_purities(const DensityMatrix& rho) {
  const std::size_t n = rho.qubits();
  const std::size_t mask = (std::size_t{1} << n) - 1;
  return 1.0 - std::ldexp(signed_purity_sum(rho, mask, true), -static_cast<int>(n));
}

}  // namespace ginv
