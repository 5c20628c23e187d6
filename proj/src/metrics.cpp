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


#include "synthanom/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace synthanom {

std::size_t ScoredSet::positives() const {
  return static_cast<std::size_t>(
      std::count_if(targets.begin(), targets.end(), [](std::uint8_t t) { return t != 0; }));
}

void ScoredSet::append(const ScoredSet& other) {
  scores.insert(scores.end(), other.scores.begin(), other.scores.end());
  targets.insert(targets.end(), other.targets.begin(), other.targets.end());
}

namespace {

void check_lengths(const ScoredSet& s) {
  if (s.scores.size() != s.targets.size()) {
    throw InvalidArgument("scored set has " + std::to_string(s.scores.size()) + " scores but " +
                          std::to_string(s.targets.size()) + " targets");
  }
}

std::vector<std::size_t> order_by_score(const ScoredSet& s, bool descending) {
  std::vector<std::size_t> idx(s.scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return descending ? s.scores[a] > s.scores[b] : s.scores[a] < s.scores[b];
  });
  return idx;
}

}  // namespace

double average_precision(const ScoredSet& s) {
  check_lengths(s);
  const std::size_t total_pos = s.positives();
  if (total_pos == 0) throw UndefinedMetric("average precision needs at least one positive");
  const std::vector<std::size_t> idx = order_by_score(s, true);
  const double p = static_cast<double>(total_pos);
  double ap = 0.0;
  std::size_t tp = 0, fp = 0, prev_tp = 0;
  for (std::size_t i = 0; i < idx.size();) {
    const double score = s.scores[idx[i]];
    for (; i < idx.size() && s.scores[idx[i]] == score; ++i) {
      if (s.targets[idx[i]]) {
        ++tp;
      } else {
        ++fp;
      }
    }
    const double recall_step = static_cast<double>(tp - prev_tp) / p;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    ap += recall_step * precision;
    prev_tp = tp;
  }
  return ap;
}

double auroc(const ScoredSet& s) {
  check_lengths(s);
  const std::size_t pos = s.positives();
  const std::size_t neg = s.targets.size() - pos;
  if (pos == 0 || neg == 0) throw UndefinedMetric("AUROC needs both positives and negatives");
  const std::vector<std::size_t> idx = order_by_score(s, false);
  // Sum of 2 * midrank over positives keeps everything integral.
  double twice_rank_sum = 0.0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    std::size_t group_pos = 0;
    while (j < idx.size() && s.scores[idx[j]] == s.scores[idx[i]]) {
      if (s.targets[idx[j]]) ++group_pos;
      ++j;
    }
    twice_rank_sum += static_cast<double>(group_pos) * static_cast<double>(i + 1 + j);
    i = j;
  }
  const double p = static_cast<double>(pos);
  const double u = twice_rank_sum / 2.0 - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(neg));
}

std::string_view reducer_name(Reducer r) { return r == Reducer::kMean ? "mean" : "max"; }

Reducer parse_reducer(std::string_view name) {
  if (name == "mean") return Reducer::kMean;
  if (name == "max") return Reducer::kMax;
  throw InvalidArgument("reducer must be mean or max, got " + std::string(name));
}

ScoredSet pixel_scores(const Tensor& scores, const Tensor& labels, double label_threshold) {
  require_same_shape(scores.shape(), labels.shape(), "pixel_scores");
  ScoredSet out;
  out.scores.assign(scores.values().begin(), scores.values().end());
  out.targets.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.targets[i] = labels[i] >= label_threshold ? 1 : 0;
  }
  return out;
}

ScoredSet reduce_to_slices(const Tensor& volume_scores, const Tensor& volume_labels,
                           std::size_t axis, Reducer reducer, double label_threshold) {
  require_same_shape(volume_scores.shape(), volume_labels.shape(), "reduce_to_slices");
  if (axis >= volume_scores.rank()) {
    throw InvalidArgument("reduce_to_slices: axis " + std::to_string(axis) + " out of range");
  }
  const std::size_t slices = volume_scores.extent(axis);
  const std::size_t per_slice = slices ? volume_scores.size() / slices : 0;
  ScoredSet out;
  out.scores.assign(slices, reducer == Reducer::kMax ? -std::numeric_limits<double>::infinity()
                                                      : 0.0);
  out.targets.assign(slices, 0);
  if (volume_scores.empty()) return out;
  Index idx(volume_scores.rank(), 0);
  std::size_t flat = 0;
  do {
    const std::size_t sl = idx[axis];
    const double v = volume_scores[flat];
    if (reducer == Reducer::kMax) {
      out.scores[sl] = std::max(out.scores[sl], v);
    } else {
      out.scores[sl] += v;
    }
    if (volume_labels[flat] >= label_threshold) out.targets[sl] = 1;
    ++flat;
  } while (next_index(idx, volume_scores.shape()));
  if (reducer == Reducer::kMean) {
    for (double& v : out.scores) v /= static_cast<double>(per_slice);
  }
  return out;
}

ScoredSet reduce_to_sample(const Tensor& volume_scores, const Tensor& volume_labels,
                           Reducer reducer, double label_threshold) {
  require_same_shape(volume_scores.shape(), volume_labels.shape(), "reduce_to_sample");
  if (volume_scores.empty()) throw InvalidArgument("reduce_to_sample: empty volume");
  ScoredSet out;
  const auto v = volume_scores.values();
  if (reducer == Reducer::kMax) {
    out.scores.push_back(*std::max_element(v.begin(), v.end()));
  } else {
    out.scores.push_back(std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()));
  }
  const auto l = volume_labels.values();
  out.targets.push_back(
      std::any_of(l.begin(), l.end(), [&](double x) { return x >= label_threshold; }) ? 1 : 0);
  return out;
}

}  // namespace synthanom
