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


#include "synthanom/distance_transform.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace synthanom {
namespace {

constexpr double kFar = 1e20;

// Lower envelope of parabolas (Felzenszwalb & Huttenlocher), one line.
void transform_line(const double* f, double* out, std::size_t n, std::vector<std::size_t>& v,
                    std::vector<double>& z) {
  v.resize(n);
  z.resize(n + 1);
  std::size_t k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  auto intersect = [&](std::size_t q, std::size_t p) {
    const double qd = static_cast<double>(q), pd = static_cast<double>(p);
    return ((f[q] + qd * qd) - (f[p] + pd * pd)) / (2.0 * qd - 2.0 * pd);
  };
  for (std::size_t q = 1; q < n; ++q) {
    double s = intersect(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    while (z[k + 1] < static_cast<double>(q)) ++k;
    const double diff = static_cast<double>(q) - static_cast<double>(v[k]);
    out[q] = diff * diff + f[v[k]];
  }
}

}  // namespace

Tensor squared_distance_to_background(const BoolTensor& raster) {
  const std::size_t d = raster.rank();
  Shape padded_shape = raster.shape();
  for (auto& e : padded_shape) e += 2;
  Tensor work(padded_shape, 0.0);
  Box inner{Index(d, 1), Index(d)};
  for (std::size_t a = 0; a < d; ++a) inner.hi[a] = padded_shape[a] - 1;
  if (!raster.empty()) {
    Index idx = inner.lo;
    std::size_t flat = 0;
    do {
      work.at(idx) = raster[flat++] ? kFar : 0.0;
    } while (next_index(idx, inner));
  }

  std::vector<double> line_in, line_out;
  std::vector<std::size_t> v;
  std::vector<double> z;
  for (std::size_t axis = 0; axis < d; ++axis) {
    const std::size_t n = padded_shape[axis];
    const std::size_t stride = work.strides()[axis];
    line_in.resize(n);
    line_out.resize(n);
    const std::size_t block = n * stride;
    for (std::size_t o = 0; o < work.size(); o += block) {
      for (std::size_t i = 0; i < stride; ++i) {
        double* base = work.data() + o + i;
        for (std::size_t q = 0; q < n; ++q) line_in[q] = base[q * stride];
        transform_line(line_in.data(), line_out.data(), n, v, z);
        for (std::size_t q = 0; q < n; ++q) base[q * stride] = line_out[q];
      }
    }
  }
  return raster.empty() ? Tensor(raster.shape()) : extract(work, inner);
}

Tensor distance_to_mask_edge(const BoolTensor& raster) {
  Tensor dist = squared_distance_to_background(raster);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    dist[i] = raster[i] ? std::sqrt(dist[i]) - 1.0 : 0.0;
  }
  return dist;
}

}  // namespace synthanom
