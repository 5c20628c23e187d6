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


#ifndef SYNTHANOM_DIFFERENTIAL_HPP_
#define SYNTHANOM_DIFFERENTIAL_HPP_

#include <span>
#include <vector>

#include "synthanom/tensor.hpp"

namespace synthanom {

// Forward differences, one tensor per axis: g_d[n] = x[n + e_d] - x[n];
// the last slice along each axis is zero.
std::vector<Tensor> gradient(const Tensor& x);

// Backward differences summed over axes, treating the value before the first
// slice as zero: out[n] = sum_d v_d[n] - v_d[n - e_d]. divergence(gradient(x))
// is the standard 2D+1 point Laplacian of x at voxels away from the border.
Tensor divergence(std::span<const Tensor> v);

}  // namespace synthanom

#endif  // SYNTHANOM_DIFFERENTIAL_HPP_
