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


#ifndef SYNTHANOM_LABELLING_HPP_
#define SYNTHANOM_LABELLING_HPP_

#include "synthanom/tensor.hpp"

namespace synthanom {

// Default labeller width, in intensity units of z-scored images.
inline constexpr double kDefaultLabelSigma = 0.2;

// Flipped Gaussian 1 - exp(-delta^2 / (2 sigma^2)). Even, C1 at zero and
// strictly below one (values that would round to 1 are clamped to the largest
// single-precision float below 1, so labels survive a float32 round trip).
double gaussian_label(double delta, double sigma);

// Logistic 1 / (1 + exp(-k (delta - x0))); reference for comparison only.
double logistic_label(double delta, double k, double x0);

// Per-voxel gaussian_label(corrupted - clean, sigma).
Tensor label_map(const Tensor& clean, const Tensor& corrupted, double sigma = kDefaultLabelSigma);

}  // namespace synthanom

#endif  // SYNTHANOM_LABELLING_HPP_
