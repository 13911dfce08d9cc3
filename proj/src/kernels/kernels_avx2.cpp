// Copyright 2026 The plearn Authors
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

#include <immintrin.h>

#include "plearn/kernels.hpp"

namespace plearn::kernels::detail {

namespace {

// One qubit butterfly on four contiguous entries (I, X, Z, Y).
inline __m256d butterfly_contiguous(__m256d v) {
  __m256d sw = _mm256_permute_pd(v, 0b0101);
  __m256d sum = _mm256_add_pd(v, sw);
  __m256d diff = _mm256_sub_pd(sw, v);
  __m256d c = _mm256_blend_pd(sum, diff, 0b1010);  // (a0+a1, a0-a1, a2+a3, a2-a3)
  __m256d cp = _mm256_permute2f128_pd(c, c, 0x01);
  __m256d s2 = _mm256_add_pd(c, cp);
  __m256d d2 = _mm256_sub_pd(cp, c);
  __m256d t = _mm256_permute2f128_pd(s2, d2, 0x30);  // (I, Z, X, Y)
  return _mm256_permute4x64_pd(t, 0b11011000);
}

}  // namespace

void wht_avx2(double* data, int n) {
  if (n == 0) return;
  const size_t size = size_t{1} << (2 * n);
  for (size_t base = 0; base < size; base += 4) {
    _mm256_storeu_pd(data + base, butterfly_contiguous(_mm256_loadu_pd(data + base)));
  }
  for (int j = 1; j < n; ++j) {
    const size_t s = size_t{1} << (2 * j);
    for (size_t base = 0; base < size; base += 4 * s) {
      for (size_t k = 0; k < s; k += 4) {
        double* p = data + base + k;
        __m256d a0 = _mm256_loadu_pd(p);
        __m256d a1 = _mm256_loadu_pd(p + s);
        __m256d a2 = _mm256_loadu_pd(p + 2 * s);
        __m256d a3 = _mm256_loadu_pd(p + 3 * s);
        __m256d c0 = _mm256_add_pd(a0, a1), c1 = _mm256_sub_pd(a0, a1);
        __m256d c2 = _mm256_add_pd(a2, a3), c3 = _mm256_sub_pd(a2, a3);
        _mm256_storeu_pd(p, _mm256_add_pd(c0, c2));
        _mm256_storeu_pd(p + s, _mm256_sub_pd(c0, c2));
        _mm256_storeu_pd(p + 2 * s, _mm256_add_pd(c1, c3));
        _mm256_storeu_pd(p + 3 * s, _mm256_sub_pd(c1, c3));
      }
    }
  }
}

void matvec_avx2(const double* m, const double* x, double* y, size_t dim) {
  const size_t vec_end = dim & ~size_t{3};
  for (size_t i = 0; i < dim; ++i) {
    const double* row = m + i * dim;
    __m256d acc = _mm256_setzero_pd();
    size_t k = 0;
    for (; k < vec_end; k += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + k), _mm256_loadu_pd(x + k), acc);
    __m128d lo = _mm256_castpd256_pd128(acc), hi = _mm256_extractf128_pd(acc, 1);
    __m128d pair = _mm_add_pd(lo, hi);
    double total = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
    for (; k < dim; ++k) total += row[k] * x[k];
    y[i] = total;
  }
}

void matmul_avx2(const double* a, const double* b, double* c, size_t dim) {
  const size_t vec_end = dim & ~size_t{3};
  for (size_t i = 0; i < dim * dim; ++i) c[i] = 0.0;
  for (size_t i = 0; i < dim; ++i) {
    double* crow = c + i * dim;
    for (size_t k = 0; k < dim; ++k) {
      double aik = a[i * dim + k];
      if (aik == 0.0) continue;
      const double* brow = b + k * dim;
      __m256d av = _mm256_set1_pd(aik);
      size_t j = 0;
      for (; j < vec_end; j += 4) {
        _mm256_storeu_pd(crow + j, _mm256_fmadd_pd(av, _mm256_loadu_pd(brow + j), _mm256_loadu_pd(crow + j)));
      }
      for (; j < dim; ++j) crow[j] += aik * brow[j];
    }
  }
}

}  // namespace plearn::kernels::detail
