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


#include "synthanom/mask.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace synthanom {

void MaskSpec::validate() const {
  const std::size_t d = center.size();
  if (d == 0) throw InvalidArgument("mask spec must have rank >= 1");
  if (semi_axes.size() != d) throw InvalidArgument("mask semi_axes rank mismatch");
  if (rotation.size() != rotation_angle_count(d)) {
    throw InvalidArgument("mask rotation must hold D*(D-1)/2 angles");
  }
  for (double a : semi_axes) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("mask semi_axes must be > 0");
  }
  for (double c : center) {
    if (!std::isfinite(c)) throw InvalidArgument("mask center must be finite");
  }
  for (double r : rotation) {
    if (!std::isfinite(r)) throw InvalidArgument("mask rotation must be finite");
  }
}

std::size_t rotation_angle_count(std::size_t rank) { return rank * (rank - 1) / 2; }

MaskGeometry::MaskGeometry(const MaskSpec& spec) : spec_(spec) {
  spec_.validate();
  const std::size_t d = spec_.rank();
  matrix_.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) matrix_[i * d + i] = 1.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j, ++k) {
      const double c = std::cos(spec_.rotation[k]);
      const double s = std::sin(spec_.rotation[k]);
      // matrix <- matrix * G(i, j)
      for (std::size_t r = 0; r < d; ++r) {
        const double mi = matrix_[r * d + i];
        const double mj = matrix_[r * d + j];
        matrix_[r * d + i] = c * mi + s * mj;
        matrix_[r * d + j] = -s * mi + c * mj;
      }
    }
  }
}

std::vector<double> MaskGeometry::rotate_inverse(std::span<const double> v) const {
  const std::size_t d = rank();
  std::vector<double> q(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    double s = 0.0;
    for (std::size_t r = 0; r < d; ++r) s += matrix_[r * d + k] * v[r];
    q[k] = s;
  }
  return q;
}

std::vector<double> MaskGeometry::to_local(std::span<const double> point) const {
  std::vector<double> rel(rank());
  for (std::size_t i = 0; i < rank(); ++i) rel[i] = point[i] - spec_.center[i];
  return rotate_inverse(rel);
}

bool MaskGeometry::contains(std::span<const double> point) const {
  const std::vector<double> q = to_local(point);
  if (spec_.kind == MaskKind::kEllipsoid) {
    double s = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double t = q[k] / spec_.semi_axes[k];
      s += t * t;
    }
    return s <= 1.0;
  }
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (std::abs(q[k]) > spec_.semi_axes[k]) return false;
  }
  return true;
}

double MaskGeometry::exit_distance(std::span<const double> origin,
                                   std::span<const double> direction) const {
  const std::vector<double> q0 = to_local(origin);
  const std::vector<double> w = rotate_inverse(direction);
  if (spec_.kind == MaskKind::kEllipsoid) {
    // Solve |A^-1 (q0 + t w)|^2 = 1 for the positive root.
    double a = 0.0, b = 0.0, c = 0.0;
    for (std::size_t k = 0; k < q0.size(); ++k) {
      const double inv = 1.0 / spec_.semi_axes[k];
      const double qs = q0[k] * inv;
      const double ws = w[k] * inv;
      a += ws * ws;
      b += qs * ws;
      c += qs * qs;
    }
    const double disc = std::max(0.0, b * b - a * (c - 1.0));
    return std::max(0.0, (-b + std::sqrt(disc)) / a);
  }
  double t = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < q0.size(); ++k) {
    if (w[k] > 0.0) {
      t = std::min(t, (spec_.semi_axes[k] - q0[k]) / w[k]);
    } else if (w[k] < 0.0) {
      t = std::min(t, (-spec_.semi_axes[k] - q0[k]) / w[k]);
    }
  }
  return std::max(0.0, t);
}

std::vector<double> MaskGeometry::half_extents() const {
  const std::size_t d = rank();
  std::vector<double> out(d, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double m = matrix_[r * d + k] * spec_.semi_axes[k];
      s += spec_.kind == MaskKind::kEllipsoid ? m * m : std::abs(m);
    }
    out[r] = spec_.kind == MaskKind::kEllipsoid ? std::sqrt(s) : s;
  }
  return out;
}

Box bounding_box(const BoolTensor& raster) {
  const std::size_t d = raster.rank();
  Box box{Index(d, std::numeric_limits<std::size_t>::max()), Index(d, 0)};
  bool any = false;
  if (!raster.empty()) {
    Index idx(d, 0);
    std::size_t flat = 0;
    do {
      if (raster[flat]) {
        any = true;
        for (std::size_t a = 0; a < d; ++a) {
          box.lo[a] = std::min(box.lo[a], idx[a]);
          box.hi[a] = std::max(box.hi[a], idx[a] + 1);
        }
      }
      ++flat;
    } while (next_index(idx, raster.shape()));
  }
  if (!any) return Box{Index(d, 0), Index(d, 0)};
  return box;
}

AnomalyMask rasterize_mask(const MaskSpec& spec, const Shape& shape) {
  if (spec.rank() != shape.size()) {
    throw InvalidArgument("rasterize_mask: spec rank " + std::to_string(spec.rank()) +
                          " does not match image rank " + std::to_string(shape.size()));
  }
  const MaskGeometry geom(spec);
  const std::size_t d = shape.size();
  AnomalyMask mask{spec, BoolTensor(shape, 0), Box{}, 0};

  // Scan only the world-axis extent of the shape.
  const std::vector<double> half = geom.half_extents();
  Box scan{Index(d), Index(d)};
  for (std::size_t a = 0; a < d; ++a) {
    const double lo = std::floor(spec.center[a] - half[a]) - 1.0;
    const double hi = std::ceil(spec.center[a] + half[a]) + 2.0;
    const double n = static_cast<double>(shape[a]);
    scan.lo[a] = static_cast<std::size_t>(std::clamp(lo, 0.0, n));
    scan.hi[a] = static_cast<std::size_t>(std::clamp(hi, 0.0, n));
  }
  if (!scan.empty()) {
    Index idx = scan.lo;
    std::vector<double> p(d);
    do {
      for (std::size_t a = 0; a < d; ++a) p[a] = static_cast<double>(idx[a]);
      if (geom.contains(p)) {
        mask.raster.at(idx) = 1;
        ++mask.count;
      }
    } while (next_index(idx, scan));
  }

  if (mask.count == 0) {
    bool inside = true;
    Index nearest(d);
    for (std::size_t a = 0; a < d; ++a) {
      const double c = spec.center[a];
      if (c < -0.5 || c >= static_cast<double>(shape[a]) - 0.5) {
        inside = false;
        break;
      }
      nearest[a] = static_cast<std::size_t>(std::llround(c));
      nearest[a] = std::min(nearest[a], shape[a] - 1);
    }
    if (inside && element_count(shape) > 0) {
      mask.raster.at(nearest) = 1;
      mask.count = 1;
    }
  }
  mask.bbox = bounding_box(mask.raster);
  return mask;
}

}  // namespace synthanom
