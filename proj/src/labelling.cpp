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


#include "synthanom/labelling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace synthanom {
namespace {

constexpr double kLabelCeiling = 1.0 - 0x1.0p-24;  // nextafter(1.0f, 0.0f)

}  // namespace

double gaussian_label(double delta, double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian_label: sigma must be > 0");
  const double y = -std::expm1(-(delta * delta) / (2.0 * sigma * sigma));
  return std::min(y, kLabelCeiling);
}

double logistic_label(double delta, double k, double x0) {
  if (!(k > 0.0)) throw InvalidArgument("logistic_label: k must be > 0");
  return 1.0 / (1.0 + std::exp(-k * (delta - x0)));
}

Tensor label_map(const Tensor& clean, const Tensor& corrupted, double sigma) {
  require_same_shape(clean.shape(), corrupted.shape(), "label_map");
  if (!(sigma > 0.0)) throw InvalidArgument("label_map: sigma must be > 0");
  Tensor out(clean.shape(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (corrupted[i] != clean[i]) out[i] = gaussian_label(corrupted[i] - clean[i], sigma);
  }
  return out;
}

}  // namespace synthanom
