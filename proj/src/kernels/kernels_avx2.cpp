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

// Compiled with -mavx2 -mfma. Nothing in here may run before the dispatcher has
// confirmed CPU support.

#include <immintrin.h>

#include <algorithm>

#include "ginv/kernels.hpp"
#include "kernels_internal.hpp"

namespace ginv::kernels {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = cplx(y[i].real() + alpha.real() * xr - alpha.imag() * xi,
                y[i].imag() + alpha.real() * xi + alpha.imag() * xr);
  }
}

// Accumulates straight = [xr*yr, xi*yi, ...] and crossed = [xr*yi, xi*yr, ...].
void accumulate_products(const cplx* x, const cplx* y, std::size_t n, double& rr, double& ii,
                         double& ri, double& ir) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d straight = _mm256_setzero_pd();
  __m256d crossed = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    straight = _mm256_fmadd_pd(xv, yv, straight);
    crossed = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), crossed);
  }
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, straight);
  _mm256_store_pd(c, crossed);
  rr = s[0] + s[2];
  ii = s[1] + s[3];
  ri = c[0] + c[2];
  ir = c[1] + c[3];
  for (; i < n; ++i) {
    rr += x[i].real() * y[i].real();
    ii += x[i].imag() * y[i].imag();
    ri += x[i].real() * y[i].imag();
    ir += x[i].imag() * y[i].real();
  }
}

cplx dotu_avx2(const cplx* x, const cplx* y, std::size_t n) {
  double rr, ii, ri, ir;
  accumulate_products(x, y, n, rr, ii, ri, ir);
  return {rr - ii, ri + ir};
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  double rr, ii, ri, ir;
  accumulate_products(x, y, n, rr, ii, ri, ir);
  return {rr + ii, ri - ir};
}

void gemm_avx2(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k,
               std::size_t n) {
  std::fill(c, c + m * n, cplx{});
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const cplx ail = a[i * k + l];
      if (ail == cplx{}) continue;
      axpy_avx2(ail, b + l * n, crow, n);
    }
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", gemm_avx2, dotu_avx2, dotc_avx2, axpy_avx2};
  return table;
}

}  // namespace ginv::kernels
