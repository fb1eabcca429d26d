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

// Data-parallel complex kernels behind every dense operator product.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2+FMA
// variant. The variant is chosen once at startup from CPUID; setting
// GINV_SIMD=scalar in the environment forces the reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace ginv::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;
  // c[m x n] = a[m x k] * b[k x n], all row-major and densely packed.
  void (*gemm)(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
               std::size_t n);
  // sum_i x[i] * y[i]
  cplx (*dotu)(const cplx* x, const cplx* y, std::size_t n);
  // sum_i conj(x[i]) * y[i]
  cplx (*dotc)(const cplx* x, const cplx* y, std::size_t n);
  // y += alpha * x
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// Kernels used by the library; resolved once.
const KernelTable& active_kernels();

}  // namespace ginv::kernels
