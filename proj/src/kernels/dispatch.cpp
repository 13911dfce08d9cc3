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

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "plearn/kernels.hpp"

namespace plearn::kernels {

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(PLEARN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    {
      static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
      return supported;
    }
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(PLEARN_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa chosen = [] {
    const char* env = std::getenv("PLEARN_ISA");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::kScalar;
    if (isa_available(Isa::kAvx2)) return Isa::kAvx2;
    if (isa_available(Isa::kNeon)) return Isa::kNeon;
    return Isa::kScalar;
  }();
  return chosen;
}

namespace {

void require(Isa isa) {
  if (!isa_available(isa)) throw std::runtime_error(std::string("kernel ISA not available: ") + isa_name(isa));
}

}  // namespace

void wht_inplace(Isa isa, double* data, int n) {
  require(isa);
  switch (isa) {
#if defined(PLEARN_HAVE_AVX2)
    case Isa::kAvx2:
      return detail::wht_avx2(data, n);
#endif
#if defined(PLEARN_HAVE_NEON)
    case Isa::kNeon:
      return detail::wht_neon(data, n);
#endif
    default:
      return detail::wht_scalar(data, n);
  }
}

void matvec(Isa isa, const double* m, const double* x, double* y, size_t dim) {
  require(isa);
  switch (isa) {
#if defined(PLEARN_HAVE_AVX2)
    case Isa::kAvx2:
      return detail::matvec_avx2(m, x, y, dim);
#endif
#if defined(PLEARN_HAVE_NEON)
    case Isa::kNeon:
      return detail::matvec_neon(m, x, y, dim);
#endif
    default:
      return detail::matvec_scalar(m, x, y, dim);
  }
}

void matmul(Isa isa, const double* a, const double* b, double* c, size_t dim) {
  require(isa);
  switch (isa) {
#if defined(PLEARN_HAVE_AVX2)
    case Isa::kAvx2:
      return detail::matmul_avx2(a, b, c, dim);
#endif
#if defined(PLEARN_HAVE_NEON)
    case Isa::kNeon:
      return detail::matmul_neon(a, b, c, dim);
#endif
    default:
      return detail::matmul_scalar(a, b, c, dim);
  }
}

void wht_inplace(double* data, int n) { wht_inplace(active_isa(), data, n); }
void matvec(const double* m, const double* x, double* y, size_t dim) { matvec(active_isa(), m, x, y, dim); }
void matmul(const double* a, const double* b, double* c, size_t dim) { matmul(active_isa(), a, b, c, dim); }

}  // namespace plearn::kernels
