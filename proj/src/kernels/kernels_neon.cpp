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

#include <arm_neon.h>

#include "plearn/kernels.hpp"

namespace plearn::kernels::detail {

void wht_neon(double* data, int n) {
  if (n == 0) return;
  const size_t size = size_t{1} << (2 * n);
  // The first stage works on contiguous quadruples; pairs (a0,a1), (a2,a3).
  for (size_t base = 0; base < size; base += 4) {
    float64x2_t lo = vld1q_f64(data + base), hi = vld1q_f64(data + base + 2);
    double c0 = vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1);
    double c1 = vgetq_lane_f64(lo, 0) - vgetq_lane_f64(lo, 1);
    double c2 = vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1);
    double c3 = vgetq_lane_f64(hi, 0) - vgetq_lane_f64(hi, 1);
    float64x2_t c02 = {c0, c1}, c13 = {c2, c3};
    float64x2_t plus = vaddq_f64(c02, c13);   // (I, Z)
    float64x2_t minus = vsubq_f64(c02, c13);  // (X, Y)
    vst1q_f64(data + base, vzip1q_f64(plus, minus));
    vst1q_f64(data + base + 2, vzip2q_f64(plus, minus));
  }
  for (int j = 1; j < n; ++j) {
    const size_t s = size_t{1} << (2 * j);
    for (size_t base = 0; base < size; base += 4 * s) {
      for (size_t k = 0; k < s; k += 2) {
        double* p = data + base + k;
        float64x2_t a0 = vld1q_f64(p), a1 = vld1q_f64(p + s);
        float64x2_t a2 = vld1q_f64(p + 2 * s), a3 = vld1q_f64(p + 3 * s);
        float64x2_t c0 = vaddq_f64(a0, a1), c1 = vsubq_f64(a0, a1);
        float64x2_t c2 = vaddq_f64(a2, a3), c3 = vsubq_f64(a2, a3);
        vst1q_f64(p, vaddq_f64(c0, c2));
        vst1q_f64(p + s, vsubq_f64(c0, c2));
        vst1q_f64(p + 2 * s, vaddq_f64(c1, c3));
        vst1q_f64(p + 3 * s, vsubq_f64(c1, c3));
      }
    }
  }
}

void matvec_neon(const double* m, const double* x, double* y, size_t dim) {
  const size_t vec_end = dim & ~size_t{1};
  for (size_t i = 0; i < dim; ++i) {
    const double* row = m + i * dim;
    float64x2_t acc = vdupq_n_f64(0.0);
    size_t k = 0;
    for (; k < vec_end; k += 2) acc = vfmaq_f64(acc, vld1q_f64(row + k), vld1q_f64(x + k));
    double total = vaddvq_f64(acc);
    for (; k < dim; ++k) total += row[k] * x[k];
    y[i] = total;
  }
}

void matmul_neon(const double* a, const double* b, double* c, size_t dim) {
  const size_t vec_end = dim & ~size_t{1};
  for (size_t i = 0; i < dim * dim; ++i) c[i] = 0.0;
  for (size_t i = 0; i < dim; ++i) {
    double* crow = c + i * dim;
    for (size_t k = 0; k < dim; ++k) {
      double aik = a[i * dim + k];
      if (aik == 0.0) continue;
      const double* brow = b + k * dim;
      float64x2_t av = vdupq_n_f64(aik);
      size_t j = 0;
      for (; j < vec_end; j += 2) vst1q_f64(crow + j, vfmaq_f64(vld1q_f64(crow + j), av, vld1q_f64(brow + j)));
      for (; j < dim; ++j) crow[j] += aik * brow[j];
    }
  }
}

}  // namespace plearn::kernels::detail
