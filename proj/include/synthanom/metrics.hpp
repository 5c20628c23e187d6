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


#ifndef SYNTHANOM_METRICS_HPP_
#define SYNTHANOM_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "synthanom/tensor.hpp"

namespace synthanom {

struct ScoredSet {
  std::vector<double> scores;
  std::vector<std::uint8_t> targets;  // nonzero = anomalous

  std::size_t positives() const;
  std::size_t negatives() const { return targets.size() - positives(); }
  void append(const ScoredSet& other);
};

// Step-wise area under the precision/recall curve, sum_n (R_n - R_{n-1}) P_n
// over descending distinct score thresholds (tied scores form one threshold).
// Throws UndefinedMetric without positives.
double average_precision(const ScoredSet& s);

// Mann-Whitney estimate of P(score(pos) > score(neg)), ties counted as one
// half. Throws UndefinedMetric unless both classes are present.
double auroc(const ScoredSet& s);

enum class Reducer { kMean, kMax };

std::string_view reducer_name(Reducer r);
Reducer parse_reducer(std::string_view name);

// Label values >= threshold count as anomalous.
inline constexpr double kDefaultLabelThreshold = 0.5;

// One entry per voxel.
ScoredSet pixel_scores(const Tensor& scores, const Tensor& labels,
                       double label_threshold = kDefaultLabelThreshold);

// One entry per slice along `axis`; the slice is positive if any of its voxels is.
ScoredSet reduce_to_slices(const Tensor& volume_scores, const Tensor& volume_labels,
                           std::size_t axis, Reducer reducer,
                           double label_threshold = kDefaultLabelThreshold);

// One entry for the whole volume.
ScoredSet reduce_to_sample(const Tensor& volume_scores, const Tensor& volume_labels,
                           Reducer reducer, double label_threshold = kDefaultLabelThreshold);

}  // namespace synthanom

#endif  // SYNTHANOM_METRICS_HPP_
