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


#ifndef SYNTHANOM_POISSON_HPP_
#define SYNTHANOM_POISSON_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "synthanom/mask.hpp"
#include "synthanom/tensor.hpp"

namespace synthanom {

// A Dirichlet Poisson problem on an axis-aligned box. Arrays are laid out on
// the padded box: the solve region grown by one voxel on every side, so the
// outermost layer holds the boundary values f_out.
struct GuidedPatchProblem {
  Box region;                    // solve region in destination coordinates
  Tensor boundary;               // destination values on the padded box
  std::vector<Tensor> guidance;  // per-axis source gradient on the padded box

  Shape interior_shape() const { return region.shape(); }
};

// DST-I coefficients of a field living on the interior of a problem.
struct SpectralCoefficients {
  Tensor values;
};

SpectralCoefficients to_spectral(const Tensor& interior);
Tensor from_spectral(const SpectralCoefficients& coefficients);

// Negated eigenvalues of the discrete Dirichlet Laplacian on `interior`:
//   lambda_u = sum_d 4 sin^2(pi (u_d + 1) / (2 (N_d + 1))),
// i.e. 2 - 2 cos(pi (u_d + 1) / (N_d + 1)) per axis.
Tensor laplacian_spectrum(const Shape& interior);

// Solves sum_d f[p + e_d] + f[p - e_d] - 2 f[p] = rhs[p] on the interior,
// with f fixed to `padded_boundary` on the outer layer. `padded_boundary` has
// shape rhs.shape() + 2 on every axis; its interior values are ignored.
Tensor solve_poisson_dirichlet(const Tensor& rhs, const Tensor& padded_boundary);

// Solve region used for a mask bounding box: the box clipped so that a
// one-voxel boundary layer exists inside the image. Axes of extent one are
// left as [0, 1) and are dropped from the solve.
Box blend_region(const Box& bbox, const Shape& image);

// Builds the problem for blending `src` into `dest` over `region`; source
// voxel = destination voxel + src_offset.
GuidedPatchProblem make_blend_problem(const Tensor& dest, const Tensor& src, const Box& region,
                                      std::span<const std::ptrdiff_t> src_offset);

// Divergence of the guidance field on the interior of the problem.
Tensor guidance_divergence(const GuidedPatchProblem& problem);

Tensor solve(const GuidedPatchProblem& problem);

// Seamless clone of src's gradients into dest over the blend region of the
// mask's bounding box. Voxels outside that region are copied from dest.
Tensor poisson_blend(const Tensor& dest, const Tensor& src, const AnomalyMask& mask,
                     std::span<const std::ptrdiff_t> src_offset);
Tensor poisson_blend(const Tensor& dest, const Tensor& src, const Box& bbox,
                     std::span<const std::ptrdiff_t> src_offset);

}  // namespace synthanom

#endif  // SYNTHANOM_POISSON_HPP_
