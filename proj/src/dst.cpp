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


#include "synthanom/dst.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "synthanom/simd/kernels.hpp"

namespace synthanom {

std::vector<double> dst1_table(std::size_t n) {
  std::vector<double> table(n * n);
  const std::size_t period = 2 * (n + 1);
  const double step = std::numbers::pi / static_cast<double>(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      // Reduce the integer phase first so large N keeps full accuracy.
      const std::size_t phase = ((i + 1) * (k + 1)) % period;
      table[k * n + i] = std::sin(step * static_cast<double>(phase));
    }
  }
  return table;
}

namespace {

Tensor apply_dst1(const Tensor& x, std::size_t axis, bool inverse) {
  if (axis >= x.rank()) {
    throw InvalidArgument("dst1: axis " + std::to_string(axis) + " out of range for rank " +
                          std::to_string(x.rank()));
  }
  Tensor out(x.shape(), 0.0);
  if (x.empty()) return out;
  const std::size_t n = x.extent(axis);
  const std::size_t inner = x.strides()[axis];
  const std::size_t outer = x.size() / (n * inner);
  const std::vector<double> table = dst1_table(n);
  const simd::KernelTable& k = simd::kernels();

  if (inner == 1) {
    for (std::size_t o = 0; o < outer; ++o) {
      const double* in = x.data() + o * n;
      double* dst = out.data() + o * n;
      for (std::size_t j = 0; j < n; ++j) dst[j] = k.dot(table.data() + j * n, in, n);
    }
  } else {
    for (std::size_t o = 0; o < outer; ++o) {
      const double* in = x.data() + o * n * inner;
      double* dst = out.data() + o * n * inner;
      for (std::size_t j = 0; j < n; ++j) {
        double* row = dst + j * inner;
        for (std::size_t i = 0; i < n; ++i) k.axpy(table[j * n + i], in + i * inner, row, inner);
      }
    }
  }
  if (inverse) k.scale(2.0 / static_cast<double>(n + 1), out.data(), out.size());
  return out;
}

}  // namespace

Tensor dst1_forward(const Tensor& x, std::size_t axis) { return apply_dst1(x, axis, false); }

Tensor dst1_inverse(const Tensor& x, std::size_t axis) { return apply_dst1(x, axis, true); }

Tensor dst1_forward_all(const Tensor& x) {
  Tensor y = x;
  for (std::size_t a = 0; a < x.rank(); ++a) y = dst1_forward(y, a);
  return y;
}

Tensor dst1_inverse_all(const Tensor& x) {
  Tensor y = x;
  for (std::size_t a = 0; a < x.rank(); ++a) y = dst1_inverse(y, a);
  return y;
}

}  // namespace synthanom
