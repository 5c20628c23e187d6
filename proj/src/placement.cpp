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


#include "synthanom/placement.hpp"

#include <numbers>
#include <string>

namespace synthanom {

BoolTensor foreground_of(const Tensor& x, double threshold) {
  BoolTensor out(x.shape(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] > threshold ? 1 : 0;
  return out;
}

void PlacementOptions::validate() const {
  if (!(size_min > 0.0) || !(size_max >= size_min)) {
    throw InvalidArgument("placement size range must satisfy 0 < min <= max");
  }
  if (!(min_overlap >= 0.0 && min_overlap <= 1.0)) {
    throw InvalidArgument("placement min_overlap must be in [0, 1]");
  }
  if (max_attempts < 1) throw InvalidArgument("placement max_attempts must be >= 1");
}

double foreground_overlap(const AnomalyMask& mask, const BoolTensor& foreground) {
  require_same_shape(mask.raster.shape(), foreground.shape(), "foreground_overlap");
  if (mask.count == 0) return 0.0;
  std::size_t hit = 0;
  if (!mask.bbox.empty()) {
    Index idx = mask.bbox.lo;
    do {
      const std::size_t off = mask.raster.offset(idx);
      if (mask.raster[off] && foreground[off]) ++hit;
    } while (next_index(idx, mask.bbox));
  }
  return static_cast<double>(hit) / static_cast<double>(mask.count);
}

AnomalyMask sample_anomaly_placement(RngStream& rng, const Shape& shape,
                                     const BoolTensor& foreground,
                                     const PlacementOptions& options) {
  options.validate();
  require_same_shape(shape, foreground.shape(), "sample_anomaly_placement");
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < foreground.size(); ++i) {
    if (foreground[i]) candidates.push_back(i);
  }
  if (candidates.empty()) {
    throw PlacementFailure("sample_anomaly_placement: foreground is empty");
  }
  const std::size_t d = shape.size();
  const std::vector<std::size_t> strides = row_major_strides(shape);

  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    MaskSpec spec;
    spec.kind = rng.coin() ? MaskKind::kEllipsoid : MaskKind::kCuboid;
    std::size_t flat = candidates[rng.uniform_index(candidates.size())];
    spec.center.resize(d);
    for (std::size_t a = 0; a < d; ++a) {
      spec.center[a] = static_cast<double>(flat / strides[a]);
      flat %= strides[a];
    }
    spec.semi_axes.resize(d);
    for (std::size_t a = 0; a < d; ++a) {
      spec.semi_axes[a] =
          rng.uniform(options.size_min, options.size_max) * static_cast<double>(shape[a]);
    }
    spec.rotation.resize(rotation_angle_count(d));
    for (double& angle : spec.rotation) angle = rng.uniform(0.0, std::numbers::pi);

    AnomalyMask mask = rasterize_mask(spec, shape);
    if (mask.count > 0 && foreground_overlap(mask, foreground) >= options.min_overlap) {
      return mask;
    }
  }
  throw PlacementFailure("sample_anomaly_placement: no valid placement in " +
                         std::to_string(options.max_attempts) + " attempts");
}

int repeat_count(RngStream& rng, int max) {
  if (max < 1) throw InvalidArgument("repeat_count: max must be >= 1");
  int k = 1;
  while (k < max && rng.coin(0.5)) ++k;
  return k;
}

}  // namespace synthanom
