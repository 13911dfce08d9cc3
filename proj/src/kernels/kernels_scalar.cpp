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

#include <cstdint>

#include "plearn/kernels.hpp"

namespace plearn::kernels::detail {

void wht_scalar(double* data, int n) {
  const size_t size = size_t{1} << (2 * n);
  for (int j = 0; j < n; ++j) {
    const size_t s = size_t{1} << (2 * j);
    for (size_t base = 0; base < size; base += 4 * s) {
      for (size_t k = 0; k < s; ++k) {
        double* p = data + base + k;
        double a0 = p[0], a1 = p[s], a2 = p[2 * s], a3 = p[3 * s];
        double c0 = a0 + a1, c1 = a0 - a1, c2 = a2 + a3, c3 = a2 - a3;
        p[0] = c0 + c2;      // I: commutes with everything
        p[s] = c0 - c2;      // X: anticommutes with Z, Y
        p[2 * s] = c1 + c3;  // Z: anticommutes with X, Y
        p[3 * s] = c1 - c3;  // Y: anticommutes with X, Z
      }
    }
  }
}

void matvec_scalar(const double* m, const double* x, double* y, size_t dim) {
  for (size_t i = 0; i < dim; ++i) {
    const double* row = m + i * dim;
    double acc = 0.0;
    for (size_t k = 0; k < dim; ++k) acc += row[k] * x[k];
    y[i] = acc;
  }
}

void matmul_scalar(const double* a, const double* b, double* c, size_t dim) {
  for (size_t i = 0; i < dim * dim; ++i) c[i] = 0.0;
  for (size_t i = 0; i < dim; ++i) {
    double* crow = c + i * dim;
    for (size_t k = 0; k < dim; ++k) {
      double aik = a[i * dim + k];
      if (aik == 0.0) continue;
      const double* brow = b + k * dim;
      for (size_t j = 0; j < dim; ++j) crow[j] += aik * brow[j];
    }
  }
}

}  // namespace plearn::kernels::detail
