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


#ifndef SYNTHANOM_DST_HPP_
#define SYNTHANOM_DST_HPP_

#include <cstddef>
#include <vector>

#include "synthanom/tensor.hpp"

namespace synthanom {

// Row-major N x N table of sin(pi (n + 1)(k + 1) / (N + 1)).
std::vector<double> dst1_table(std::size_t n);

// Type-I discrete sine transform along one axis:
//   out_k = sum_n in_n sin(pi (n + 1)(k + 1) / (N + 1)).
Tensor dst1_forward(const Tensor& x, std::size_t axis);

// Forward kernel scaled by 2 / (N + 1); the exact inverse of dst1_forward.
Tensor dst1_inverse(const Tensor& x, std::size_t axis);

// Forward (or inverse) transform applied along every axis in turn.
Tensor dst1_forward_all(const Tensor& x);
Tensor dst1_inverse_all(const Tensor& x);

}  // namespace synthanom

#endif  // SYNTHANOM_DST_HPP_
