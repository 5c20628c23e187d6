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


#ifndef SYNTHANOM_PLACEMENT_HPP_
#define SYNTHANOM_PLACEMENT_HPP_

#include "synthanom/mask.hpp"
#include "synthanom/rng.hpp"
#include "synthanom/tensor.hpp"

namespace synthanom {

// True where x > threshold.
BoolTensor foreground_of(const Tensor& x, double threshold);

struct PlacementOptions {
  // Semi-axis length as a fraction of the axis extent, drawn uniformly.
  double size_min = 0.04;
  double size_max = 0.28;
  double min_overlap = 0.5;
  int max_attempts = 100;

  void validate() const;
};

// Fraction of raster voxels that are also foreground.
double foreground_overlap(const AnomalyMask& mask, const BoolTensor& foreground);

// Rejection-samples a random ellipsoid or cuboid until at least
// `min_overlap` of its raster lies on the foreground. The centre is a
// uniformly chosen foreground voxel. Throws PlacementFailure when the
// attempt budget runs out or the foreground is empty.
AnomalyMask sample_anomaly_placement(RngStream& rng, const Shape& shape,
                                     const BoolTensor& foreground,
                                     const PlacementOptions& options = {});

// Fair-coin repetition count in [1, max]: P(k = n) = 0.5^n for n < max and
// P(k = max) = 0.5^(max - 1).
int repeat_count(RngStream& rng, int max);

}  // namespace synthanom

#endif  // SYNTHANOM_PLACEMENT_HPP_
