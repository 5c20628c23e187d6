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


#ifndef SYNTHANOM_TENSOR_HPP_
#define SYNTHANOM_TENSOR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "synthanom/error.hpp"

namespace synthanom {

using Shape = std::vector<std::size_t>;
using Index = std::vector<std::size_t>;

std::size_t element_count(const Shape& shape);
std::vector<std::size_t> row_major_strides(const Shape& shape);
std::string shape_to_string(const Shape& shape);

// Dense N-dimensional grid stored row-major (last axis fastest).
// Extents of zero are permitted and denote an empty tensor.
template <typename T>
class BasicTensor {
 public:
  using value_type = T;

  BasicTensor() : shape_{0}, strides_{1} {}

  explicit BasicTensor(Shape shape, T fill = T{})
      : shape_(std::move(shape)), strides_(row_major_strides(shape_)) {
    check_rank();
    data_.assign(element_count(shape_), fill);
  }

  BasicTensor(Shape shape, std::vector<T> data)
      : shape_(std::move(shape)),
        strides_(row_major_strides(shape_)),
        data_(std::move(data)) {
    check_rank();
    if (data_.size() != element_count(shape_)) {
      throw InvalidArgument("tensor data length " +
                            std::to_string(data_.size()) +
                            " does not match shape " + shape_to_string(shape_));
    }
  }

  const Shape& shape() const { return shape_; }
  const std::vector<std::size_t>& strides() const { return strides_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  std::size_t extent(std::size_t axis) const { return shape_.at(axis); }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  T& operator[](std::size_t flat) { return data_[flat]; }
  const T& operator[](std::size_t flat) const { return data_[flat]; }

  std::size_t offset(std::span<const std::size_t> index) const {
    std::size_t off = 0;
    for (std::size_t d = 0; d < shape_.size(); ++d) off += index[d] * strides_[d];
    return off;
  }
  T& at(std::span<const std::size_t> index) { return data_[offset(index)]; }
  const T& at(std::span<const std::size_t> index) const {
    return data_[offset(index)];
  }

  bool operator==(const BasicTensor& other) const = default;

 private:
  void check_rank() const {
    if (shape_.empty()) throw InvalidArgument("tensor rank must be >= 1");
  }

  Shape shape_;
  std::vector<std::size_t> strides_;
  std::vector<T> data_;
};

using Tensor = BasicTensor<double>;
using BoolTensor = BasicTensor<std::uint8_t>;

// Half-open axis-aligned box [lo, hi) per axis.
struct Box {
  std::vector<std::size_t> lo;
  std::vector<std::size_t> hi;

  std::size_t rank() const { return lo.size(); }
  Shape shape() const;
  bool empty() const;
  bool contains(std::span<const std::size_t> index) const;
  bool operator==(const Box&) const = default;
};

// Advances `index` in row-major order within `shape`; false once exhausted.
bool next_index(Index& index, const Shape& shape);
// Same, restricted to `box`.
bool next_index(Index& index, const Box& box);

Tensor extract(const Tensor& x, const Box& box);
void insert(Tensor& x, const Box& box, const Tensor& patch);

bool all_finite(std::span<const double> values);
void require_finite(const Tensor& x, const char* what);
void require_same_shape(const Shape& a, const Shape& b, const char* what);

}  // namespace synthanom

#endif  // SYNTHANOM_TENSOR_HPP_
