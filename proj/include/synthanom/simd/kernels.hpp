/*
 * Copyright 2026 The Synthanom Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef SYNTHANOM_SIMD_KERNELS_HPP_
#define SYNTHANOM_SIMD_KERNELS_HPP_

#include <cstddef>
#include <string_view>

// Data-parallel inner loops used by the transforms and stencils. Every
// backend implements the same table; the scalar table is the reference.
// Element-wise kernels are bit-identical across backends. `dot` reorders
// its summation and agrees only to rounding.
namespace synthanom::simd {

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  Backend backend;
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out = a - b
  void (*sub)(const double* a, const double* b, double* out, std::size_t n);
  // out = a + b
  void (*add)(const double* a, const double* b, double* out, std::size_t n);
  // out = a / b
  void (*div)(const double* a, const double* b, double* out, std::size_t n);
  // x *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the backend was not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// The table in use. Chosen on first call: the best supported backend, unless
// the SYNTHANOM_SIMD environment variable names one ("scalar", "avx2", "neon").
const KernelTable& kernels();
void set_backend(Backend backend);
bool backend_available(Backend backend);
std::string_view backend_name(Backend backend);

}  // namespace synthanom::simd

#endif  // SYNTHANOM_SIMD_KERNELS_HPP_
