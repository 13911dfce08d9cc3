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

#pragma once

#include <cstddef>

namespace plearn::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

const char* isa_name(Isa isa);
/// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);
/// Best available ISA, unless PLEARN_ISA=scalar is set in the environment.
Isa active_isa();

/// Unnormalised per-qubit Walsh-Hadamard transform over the canonical Pauli
/// index: out_b = sum_a (-1)^{<a,b>} in_a, in place, for 4^n entries.
void wht_inplace(double* data, int n);
/// y = m x for a row-major dim x dim matrix.
void matvec(const double* m, const double* x, double* y, size_t dim);
/// c = a b for row-major dim x dim matrices. c must not alias a or b.
void matmul(const double* a, const double* b, double* c, size_t dim);

// Explicit variants, used by the equivalence tests.
void wht_inplace(Isa isa, double* data, int n);
void matvec(Isa isa, const double* m, const double* x, double* y, size_t dim);
void matmul(Isa isa, const double* a, const double* b, double* c, size_t dim);

namespace detail {

void wht_scalar(double* data, int n);
void matvec_scalar(const double* m, const double* x, double* y, size_t dim);
void matmul_scalar(const double* a, const double* b, double* c, size_t dim);

void wht_avx2(double* data, int n);
void matvec_avx2(const double* m, const double* x, double* y, size_t dim);
void matmul_avx2(const double* a, const double* b, double* c, size_t dim);

void wht_neon(double* data, int n);
void matvec_neon(const double* m, const double* x, double* y, size_t dim);
void matmul_neon(const double* a, const double* b, double* c, size_t dim);

}  // namespace detail

}  // namespace plearn::kernels
