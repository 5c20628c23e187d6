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


#include "synthanom/poisson.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "synthanom/differential.hpp"
#include "synthanom/dst.hpp"
#include "synthanom/simd/kernels.hpp"

namespace synthanom {
namespace {

Box grow(const Box& box) {
  Box out = box;
  for (std::size_t a = 0; a < box.rank(); ++a) {
    out.lo[a] -= 1;
    out.hi[a] += 1;
  }
  return out;
}

// Interior of a padded array as a Box in padded coordinates.
Box interior_of(const Shape& padded) {
  Box b{Index(padded.size(), 1), Index(padded.size())};
  for (std::size_t a = 0; a < padded.size(); ++a) b.hi[a] = padded[a] - 1;
  return b;
}

}  // namespace

SpectralCoefficients to_spectral(const Tensor& interior) {
  return {dst1_forward_all(interior)};
}

Tensor from_spectral(const SpectralCoefficients& coefficients) {
  return dst1_inverse_all(coefficients.values);
}

Tensor laplacian_spectrum(const Shape& interior) {
  Tensor lambda(interior, 0.0);
  if (lambda.empty()) return lambda;
  std::vector<std::vector<double>> per_axis(interior.size());
  for (std::size_t a = 0; a < interior.size(); ++a) {
    const double n1 = static_cast<double>(interior[a] + 1);
    per_axis[a].resize(interior[a]);
    for (std::size_t u = 0; u < interior[a]; ++u) {
      const double s = std::sin(std::numbers::pi * static_cast<double>(u + 1) / (2.0 * n1));
      per_axis[a][u] = 4.0 * s * s;
    }
  }
  Index idx(interior.size(), 0);
  std::size_t flat = 0;
  do {
    double sum = 0.0;
    for (std::size_t a = 0; a < interior.size(); ++a) sum += per_axis[a][idx[a]];
    lambda[flat++] = sum;
  } while (next_index(idx, interior));
  return lambda;
}

Tensor solve_poisson_dirichlet(const Tensor& rhs, const Tensor& padded_boundary) {
  if (padded_boundary.rank() != rhs.rank()) {
    throw InvalidArgument("solve_poisson_dirichlet: boundary rank mismatch");
  }
  for (std::size_t a = 0; a < rhs.rank(); ++a) {
    if (padded_boundary.extent(a) != rhs.extent(a) + 2) {
      throw InvalidArgument("solve_poisson_dirichlet: boundary must be the interior padded by one "
                            "voxel on each side, got " +
                            shape_to_string(padded_boundary.shape()) + " for interior " +
                            shape_to_string(rhs.shape()));
    }
  }
  if (rhs.empty()) return Tensor(rhs.shape());

  // Move the known boundary neighbours to the right-hand side. With the
  // interior zeroed, divergence(gradient(.)) at an interior voxel reduces to
  // the sum of its boundary neighbours.
  const Box inner = interior_of(padded_boundary.shape());
  Tensor composite = padded_boundary;
  insert(composite, inner, Tensor(rhs.shape(), 0.0));
  const std::vector<Tensor> g = gradient(composite);
  const Tensor neighbour_sum = extract(divergence(g), inner);

  const simd::KernelTable& k = simd::kernels();
  Tensor reduced(rhs.shape());
  k.sub(rhs.data(), neighbour_sum.data(), reduced.data(), rhs.size());

  SpectralCoefficients coeffs = to_spectral(reduced);
  Tensor lambda = laplacian_spectrum(rhs.shape());
  // L f = r  =>  -lambda f^ = r^
  k.scale(-1.0, lambda.data(), lambda.size());
  k.div(coeffs.values.data(), lambda.data(), coeffs.values.data(), lambda.size());
  return from_spectral(coeffs);
}

Box blend_region(const Box& bbox, const Shape& image) {
  if (bbox.rank() != image.size()) throw InvalidArgument("blend_region: rank mismatch");
  Box region = bbox;
  for (std::size_t a = 0; a < image.size(); ++a) {
    if (image[a] == 1) continue;  // degenerate axis, dropped from the solve
    const std::size_t hi_limit = image[a] >= 1 ? image[a] - 1 : 0;
    region.lo[a] = std::max<std::size_t>(region.lo[a], 1);
    region.hi[a] = std::min(region.hi[a], hi_limit);
    if (region.hi[a] < region.lo[a]) region.hi[a] = region.lo[a];
  }
  return region;
}

GuidedPatchProblem make_blend_problem(const Tensor& dest, const Tensor& src, const Box& region,
                                      std::span<const std::ptrdiff_t> src_offset) {
  const std::size_t d = dest.rank();
  if (src.rank() != d || region.rank() != d || src_offset.size() != d) {
    throw InvalidArgument("poisson_blend: rank mismatch between dest, src, box and offset");
  }
  for (std::size_t a = 0; a < d; ++a) {
    if (region.lo[a] < 1 || region.hi[a] + 1 > dest.extent(a) || region.hi[a] < region.lo[a]) {
      throw InvalidArgument("poisson_blend: region plus boundary layer exceeds destination on axis " +
                            std::to_string(a));
    }
    const std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(region.lo[a]) - 1 + src_offset[a];
    const std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(region.hi[a]) + 1 + src_offset[a];
    if (lo < 0 || hi > static_cast<std::ptrdiff_t>(src.extent(a))) {
      throw InvalidArgument("poisson_blend: translated region exceeds source on axis " +
                            std::to_string(a));
    }
  }
  const Box padded = grow(region);
  Box src_box = padded;
  for (std::size_t a = 0; a < d; ++a) {
    src_box.lo[a] = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(padded.lo[a]) + src_offset[a]);
    src_box.hi[a] = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(padded.hi[a]) + src_offset[a]);
  }
  return GuidedPatchProblem{region, extract(dest, padded), gradient(extract(src, src_box))};
}

Tensor guidance_divergence(const GuidedPatchProblem& problem) {
  return extract(divergence(problem.guidance), interior_of(problem.boundary.shape()));
}

Tensor solve(const GuidedPatchProblem& problem) {
  return solve_poisson_dirichlet(guidance_divergence(problem), problem.boundary);
}

Tensor poisson_blend(const Tensor& dest, const Tensor& src, const Box& bbox,
                     std::span<const std::ptrdiff_t> src_offset) {
  const std::size_t d = dest.rank();
  if (bbox.rank() != d || src.rank() != d || src_offset.size() != d) {
    throw InvalidArgument("poisson_blend: rank mismatch between dest, src, box and offset");
  }
  for (std::size_t a = 0; a < d; ++a) {
    if (bbox.hi[a] > dest.extent(a) || bbox.lo[a] > bbox.hi[a]) {
      throw InvalidArgument("poisson_blend: bounding box out of range");
    }
  }
  const Box region = blend_region(bbox, dest.shape());
  Tensor out = dest;
  if (region.empty()) return out;

  // Axes of extent one carry no neighbours; solve on the remaining axes, using
  // the source slice selected by the offset along each dropped axis.
  Shape kept_shape;
  Box src_box{Index(d, 0), Index(src.shape().begin(), src.shape().end())};
  Box kept_region;
  std::vector<std::ptrdiff_t> kept_offset;
  for (std::size_t a = 0; a < d; ++a) {
    if (dest.extent(a) == 1) {
      const std::ptrdiff_t at = src_offset[a];
      if (at < 0 || at >= static_cast<std::ptrdiff_t>(src.extent(a))) {
        throw InvalidArgument("poisson_blend: translated region exceeds source on axis " +
                              std::to_string(a));
      }
      src_box.lo[a] = static_cast<std::size_t>(at);
      src_box.hi[a] = src_box.lo[a] + 1;
      continue;
    }
    kept_shape.push_back(dest.extent(a));
    kept_region.lo.push_back(region.lo[a]);
    kept_region.hi.push_back(region.hi[a]);
    kept_offset.push_back(src_offset[a]);
  }
  if (kept_shape.empty()) return out;
  if (kept_shape.size() == d) {
    insert(out, region, solve(make_blend_problem(dest, src, region, src_offset)));
    return out;
  }
  const Tensor src_slab = extract(src, src_box);
  Shape kept_src_shape;
  for (std::size_t a = 0; a < d; ++a) {
    if (dest.extent(a) != 1) kept_src_shape.push_back(src.extent(a));
  }
  const Tensor flat_dest(kept_shape, std::vector<double>(dest.values().begin(), dest.values().end()));
  const Tensor flat_src(kept_src_shape,
                        std::vector<double>(src_slab.values().begin(), src_slab.values().end()));
  Tensor flat_out = flat_dest;
  insert(flat_out, kept_region, solve(make_blend_problem(flat_dest, flat_src, kept_region, kept_offset)));
  return Tensor(dest.shape(), std::vector<double>(flat_out.values().begin(), flat_out.values().end()));
}

Tensor poisson_blend(const Tensor& dest, const Tensor& src, const AnomalyMask& mask,
                     std::span<const std::ptrdiff_t> src_offset) {
  require_same_shape(mask.raster.shape(), dest.shape(), "poisson_blend");
  return poisson_blend(dest, src, mask.bbox, src_offset);
}

}  // namespace synthanom
