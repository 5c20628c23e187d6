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


#include "synthanom/tensor.hpp"

#include <cmath>
#include <sstream>

namespace synthanom {

std::size_t element_count(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t e : shape) n *= e;
  return n;
}

std::vector<std::size_t> row_major_strides(const Shape& shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t d = shape.size(); d-- > 1;) {
    strides[d - 1] = strides[d] * shape[d];
  }
  return strides;
}

std::string shape_to_string(const Shape& shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t d = 0; d < shape.size(); ++d) {
    if (d) os << 'x';
    os << shape[d];
  }
  os << ')';
  return os.str();
}

Shape Box::shape() const {
  Shape s(lo.size());
  for (std::size_t d = 0; d < lo.size(); ++d) s[d] = hi[d] > lo[d] ? hi[d] - lo[d] : 0;
  return s;
}

bool Box::empty() const {
  for (std::size_t d = 0; d < lo.size(); ++d) {
    if (hi[d] <= lo[d]) return true;
  }
  return lo.empty();
}

bool Box::contains(std::span<const std::size_t> index) const {
  for (std::size_t d = 0; d < lo.size(); ++d) {
    if (index[d] < lo[d] || index[d] >= hi[d]) return false;
  }
  return true;
}

bool next_index(Index& index, const Shape& shape) {
  for (std::size_t d = shape.size(); d-- > 0;) {
    if (++index[d] < shape[d]) return true;
    index[d] = 0;
  }
  return false;
}

bool next_index(Index& index, const Box& box) {
  for (std::size_t d = box.rank(); d-- > 0;) {
    if (++index[d] < box.hi[d]) return true;
    index[d] = box.lo[d];
  }
  return false;
}

Tensor extract(const Tensor& x, const Box& box) {
  if (box.rank() != x.rank()) throw InvalidArgument("extract: box rank mismatch");
  for (std::size_t d = 0; d < box.rank(); ++d) {
    if (box.hi[d] > x.extent(d) || box.lo[d] > box.hi[d]) {
      throw InvalidArgument("extract: box outside tensor");
    }
  }
  Tensor out(box.shape());
  if (out.empty()) return out;
  // Copy contiguous runs along the last axis.
  const std::size_t last = box.rank() - 1;
  const std::size_t run = box.hi[last] - box.lo[last];
  Box outer = box;
  outer.hi[last] = outer.lo[last] + 1;
  Index idx = outer.lo;
  std::size_t dst = 0;
  do {
    const double* src = x.data() + x.offset(idx);
    std::copy(src, src + run, out.data() + dst);
    dst += run;
  } while (next_index(idx, outer));
  return out;
}

void insert(Tensor& x, const Box& box, const Tensor& patch) {
  if (box.rank() != x.rank() || patch.shape() != box.shape()) {
    throw InvalidArgument("insert: patch shape does not match box");
  }
  for (std::size_t d = 0; d < box.rank(); ++d) {
    if (box.hi[d] > x.extent(d)) throw InvalidArgument("insert: box outside tensor");
  }
  if (patch.empty()) return;
  const std::size_t last = box.rank() - 1;
  const std::size_t run = box.hi[last] - box.lo[last];
  Box outer = box;
  outer.hi[last] = outer.lo[last] + 1;
  Index idx = outer.lo;
  std::size_t src = 0;
  do {
    std::copy(patch.data() + src, patch.data() + src + run, x.data() + x.offset(idx));
    src += run;
  } while (next_index(idx, outer));
}

bool all_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void require_finite(const Tensor& x, const char* what) {
  if (!all_finite(x.values())) {
    throw InvalidArgument(std::string(what) + ": tensor contains non-finite values");
  }
}

void require_same_shape(const Shape& a, const Shape& b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": shape mismatch " +
                          shape_to_string(a) + " vs " + shape_to_string(b));
  }
}

}  // namespace synthanom
