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


#ifndef SYNTHANOM_TASKS_HPP_
#define SYNTHANOM_TASKS_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "synthanom/labelling.hpp"
#include "synthanom/mask.hpp"
#include "synthanom/placement.hpp"
#include "synthanom/rng.hpp"
#include "synthanom/tensor.hpp"

namespace synthanom {

enum class TaskKind { kIntraBlend, kInterBlend, kSink, kSource, kSmoothIntensity };

inline constexpr std::array<TaskKind, 5> kAllTasks = {
    TaskKind::kIntraBlend, TaskKind::kInterBlend, TaskKind::kSink, TaskKind::kSource,
    TaskKind::kSmoothIntensity};

std::string_view task_name(TaskKind kind);
TaskKind parse_task_kind(std::string_view name);
bool is_blend_task(TaskKind kind);

// Radial resampling around `center` (a raster voxel). exponent >= 1;
// exponent == 1 is the identity.
struct DeformParams {
  std::vector<double> center;
  double exponent = 2.0;

  void validate(std::size_t rank) const;
  bool operator==(const DeformParams&) const = default;
};

struct IntensityParams {
  double magnitude = 1.0;           // a > 0
  int sign = 1;                     // +1 or -1
  double smoothing_distance = 1.0;  // d_s > 0, voxels

  void validate() const;
  bool operator==(const IntensityParams&) const = default;
};

// Which donor tensor was used and where its patch came from
// (source voxel = destination voxel + offset).
struct BlendParams {
  std::size_t donor = 0;
  std::vector<std::ptrdiff_t> offset;

  bool operator==(const BlendParams&) const = default;
};

using TaskParams = std::variant<BlendParams, DeformParams, IntensityParams>;

struct AnomalyRecord {
  TaskKind kind;
  AnomalyMask mask;
  TaskParams params;
  Tensor label;  // label of this anomaly alone, relative to the image before it
};

enum class Deformation { kSink, kSource };

// Distance from the centre at which a voxel at radius r samples, for a ray
// whose mask radius is d.
//   sink:   d (1 - (1 - r/d)^f)
//   source: d (r/d)^f
double deformed_radius(Deformation kind, double r, double d, double f);

// Sampling position p~ for voxel p; returns p~ = center when p == center.
std::vector<double> resample_position(Deformation kind, std::span<const double> p,
                                      std::span<const double> center, double d, double f);

// Multilinear interpolation of x at a continuous voxel position, with
// coordinates clamped to the image.
double multilinear_sample(const Tensor& x, std::span<const double> position);

Tensor intra_blend(const Tensor& x, const Tensor& donor, const AnomalyMask& mask);

// Uniformly random offset such that the blend region (plus its boundary
// layer) of `bbox` fits inside a source of shape `source`.
std::vector<std::ptrdiff_t> sample_source_offset(RngStream& rng, const Shape& image,
                                                 const Box& bbox, const Shape& source);

Tensor inter_blend(const Tensor& x, const Tensor& external, const AnomalyMask& mask,
                   RngStream& rng);
Tensor inter_blend(const Tensor& x, const Tensor& external, const AnomalyMask& mask,
                   std::span<const std::ptrdiff_t> offset);

Tensor sink_deform(const Tensor& x, const AnomalyMask& mask, const DeformParams& params);
Tensor source_deform(const Tensor& x, const AnomalyMask& mask, const DeformParams& params);

// x + s a min(d_p / d_s, 1) on the raster, d_p = distance to the mask edge.
Tensor smooth_intensity(const Tensor& x, const AnomalyMask& mask, const IntensityParams& params);

struct TaskConfig {
  double foreground_threshold = 0.0;
  PlacementOptions placement;
  int max_anomalies = 4;
  int forced_count = 0;          // > 0 fixes the number of anomalies per image
  double exponent_min = 1.0;     // deformation exponent drawn from (min, max]
  double exponent_max = 4.0;
  double intensity_min = 0.25;   // magnitude as a fraction of the image IQR
  double intensity_max = 1.0;
  double smoothing_min = 0.1;    // d_s as a fraction of the smallest semi-axis
  double smoothing_max = 0.5;
  bool intra_same_location = true;
  double sigma = kDefaultLabelSigma;

  void validate() const;
};

// Non-owning donor sets. Intra donors must match the image shape.
struct DonorPool {
  std::vector<std::reference_wrapper<const Tensor>> intra;
  std::vector<std::reference_wrapper<const Tensor>> external;
};

// Interquartile range of x, falling back to the standard deviation and then
// to 1 for constant images.
double robust_scale(const Tensor& x);

TaskParams sample_task_params(RngStream& rng, TaskKind kind, const Tensor& x,
                              const AnomalyMask& mask, const DonorPool& donors,
                              const TaskConfig& config);

// Deterministic application of one fully specified anomaly.
Tensor apply_anomaly(const Tensor& x, TaskKind kind, const AnomalyMask& mask,
                     const TaskParams& params, const DonorPool& donors);

struct AnomalyResult {
  Tensor corrupted;
  Tensor label;  // label_map(clean, corrupted)
  std::vector<AnomalyRecord> records;
  int placement_failures = 0;
};

// Draws the anomaly count, then places and applies each anomaly in turn.
// Anomaly i uses rng.fork(i). Throws TaskFailure if every placement fails.
AnomalyResult apply_random_anomalies(const Tensor& x, TaskKind task, const DonorPool& donors,
                                     RngStream& rng, const TaskConfig& config);

}  // namespace synthanom

#endif  // SYNTHANOM_TASKS_HPP_
