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


#ifndef SYNTHANOM_DISTANCE_TRANSFORM_HPP_
#define SYNTHANOM_DISTANCE_TRANSFORM_HPP_

#include "synthanom/tensor.hpp"

namespace synthanom {

// Exact squared Euclidean distance from every voxel to the nearest voxel
// where `raster` is false. Voxels beyond the image border count as false.
Tensor squared_distance_to_background(const BoolTensor& raster);

// Distance from each raster voxel to the mask edge: Euclidean distance to the
// nearest background voxel minus one, so raster voxels with a face neighbour
// outside the mask get 0. Zero outside the raster.
Tensor distance_to_mask_edge(const BoolTensor& raster);

}  // namespace synthanom

#endif  // SYNTHANOM_DISTANCE_TRANSFORM_HPP_
