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


#ifndef SYNTHANOM_MASK_HPP_
#define SYNTHANOM_MASK_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "synthanom/tensor.hpp"

namespace synthanom {

enum class MaskKind { kEllipsoid, kCuboid };

// Parametric anomaly shape in voxel coordinates. Voxel i along an axis has
// its centre at coordinate i. `rotation` holds one planar angle per axis pair
// (0,1), (0,2), ..., (1,2), ... in lexicographic order; the rotations are
// composed left to right.
struct MaskSpec {
  MaskKind kind = MaskKind::kEllipsoid;
  std::vector<double> center;
  std::vector<double> semi_axes;
  std::vector<double> rotation;

  std::size_t rank() const { return center.size(); }
  void validate() const;
  bool operator==(const MaskSpec&) const = default;
};

std::size_t rotation_angle_count(std::size_t rank);

// Precomputed rotation for a MaskSpec; maps world points into the shape's
// unrotated, centred frame.
class MaskGeometry {
 public:
  explicit MaskGeometry(const MaskSpec& spec);

  const MaskSpec& spec() const { return spec_; }
  std::size_t rank() const { return spec_.rank(); }

  // q = R^T (p - center)
  std::vector<double> to_local(std::span<const double> point) const;
  // Inclusive membership test of a world point.
  bool contains(std::span<const double> point) const;
  // Distance from `origin` (inside the shape) along unit `direction` to the
  // shape surface.
  double exit_distance(std::span<const double> origin,
                       std::span<const double> direction) const;
  // World-axis half extent of the shape around its centre.
  std::vector<double> half_extents() const;

 private:
  std::vector<double> rotate_inverse(std::span<const double> v) const;

  MaskSpec spec_;
  std::vector<double> matrix_;  // row-major rank x rank, columns are shape axes
};

struct AnomalyMask {
  MaskSpec spec;
  BoolTensor raster;
  Box bbox;            // tightest box around raster; empty box if raster empty
  std::size_t count = 0;
};

// Voxel centres inside the shape (inclusive test) become true; voxels beyond
// the image are clipped. If nothing is hit but the centre lies inside the
// image, the voxel nearest the centre is set so the raster is never empty.
AnomalyMask rasterize_mask(const MaskSpec& spec, const Shape& shape);

// Tightest box around the true voxels of `raster`.
Box bounding_box(const BoolTensor& raster);

}  // namespace synthanom

#endif  // SYNTHANOM_MASK_HPP_
