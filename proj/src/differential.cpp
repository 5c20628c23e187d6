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


#include "synthanom/differential.hpp"

#include "synthanom/simd/kernels.hpp"

namespace synthanom {

std::vector<Tensor> gradient(const Tensor& x) {
  const simd::KernelTable& k = simd::kernels();
  std::vector<Tensor> g;
  g.reserve(x.rank());
  for (std::size_t axis = 0; axis < x.rank(); ++axis) {
    Tensor out(x.shape(), 0.0);
    const std::size_t n = x.extent(axis);
    if (!x.empty() && n > 1) {
      const std::size_t inner = x.strides()[axis];
      const std::size_t block = n * inner;
      for (std::size_t o = 0; o < x.size(); o += block) {
        k.sub(x.data() + o + inner, x.data() + o, out.data() + o, block - inner);
      }
    }
    g.push_back(std::move(out));
  }
  return g;
}

Tensor divergence(std::span<const Tensor> v) {
  if (v.empty()) throw InvalidArgument("divergence: empty field");
  const Shape& shape = v.front().shape();
  if (v.size() != shape.size()) {
    throw InvalidArgument("divergence: need one component per axis");
  }
  for (const Tensor& c : v) require_same_shape(c.shape(), shape, "divergence");

  const simd::KernelTable& k = simd::kernels();
  Tensor out(shape, 0.0);
  if (out.empty()) return out;
  std::vector<double> diff(out.size());
  for (std::size_t axis = 0; axis < shape.size(); ++axis) {
    const Tensor& g = v[axis];
    const std::size_t inner = g.strides()[axis];
    const std::size_t block = shape[axis] * inner;
    for (std::size_t o = 0; o < g.size(); o += block) {
      std::copy(g.data() + o, g.data() + o + inner, diff.data() + o);
      k.sub(g.data() + o + inner, g.data() + o, diff.data() + o + inner, block - inner);
    }
    k.add(out.data(), diff.data(), out.data(), out.size());
  }
  return out;
}

}  // namespace synthanom
