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


#include "synthanom/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "synthanom/distance_transform.hpp"
#include "synthanom/poisson.hpp"

namespace synthanom {

std::string_view task_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::kIntraBlend:
      return "intra_blend";
    case TaskKind::kInterBlend:
      return "inter_blend";
    case TaskKind::kSink:
      return "sink";
    case TaskKind::kSource:
      return "source";
    case TaskKind::kSmoothIntensity:
      return "smooth_intensity";
  }
  return "unknown";
}

TaskKind parse_task_kind(std::string_view name) {
  for (TaskKind k : kAllTasks) {
    if (task_name(k) == name) return k;
  }
  throw InvalidArgument("unknown task kind: " + std::string(name));
}

bool is_blend_task(TaskKind kind) {
  return kind == TaskKind::kIntraBlend || kind == TaskKind::kInterBlend;
}

void DeformParams::validate(std::size_t rank) const {
  if (center.size() != rank) throw InvalidArgument("deform center rank mismatch");
  if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
    throw InvalidArgument("deform exponent must be >= 1");
  }
}

void IntensityParams::validate() const {
  if (!(magnitude > 0.0)) throw InvalidArgument("intensity magnitude must be > 0");
  if (sign != 1 && sign != -1) throw InvalidArgument("intensity sign must be +1 or -1");
  if (!(smoothing_distance > 0.0)) throw InvalidArgument("smoothing distance must be > 0");
}

double deformed_radius(Deformation kind, double r, double d, double f) {
  const double t = std::clamp(r / d, 0.0, 1.0);
  if (kind == Deformation::kSink) return d * (1.0 - std::pow(1.0 - t, f));
  return d * std::pow(t, f);
}

std::vector<double> resample_position(Deformation kind, std::span<const double> p,
                                      std::span<const double> center, double d, double f) {
  const std::size_t n = p.size();
  std::vector<double> diff(n);
  double r2 = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    diff[a] = p[a] - center[a];
    r2 += diff[a] * diff[a];
  }
  std::vector<double> out(center.begin(), center.end());
  if (r2 == 0.0 || !(d > 0.0)) return out;
  const double r = std::sqrt(r2);
  const double scale = deformed_radius(kind, r, d, f) / r;
  for (std::size_t a = 0; a < n; ++a) out[a] = center[a] + diff[a] * scale;
  return out;
}

double multilinear_sample(const Tensor& x, std::span<const double> position) {
  const std::size_t d = x.rank();
  std::vector<std::size_t> i0(d), i1(d);
  std::vector<double> w(d);
  for (std::size_t a = 0; a < d; ++a) {
    const double hi = static_cast<double>(x.extent(a) - 1);
    const double p = std::clamp(position[a], 0.0, hi);
    const double fl = std::floor(p);
    i0[a] = static_cast<std::size_t>(fl);
    i1[a] = std::min(i0[a] + 1, x.extent(a) - 1);
    w[a] = p - fl;
  }
  double sum = 0.0;
  Index corner(d);
  for (std::size_t bits = 0; bits < (std::size_t{1} << d); ++bits) {
    double weight = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
      const bool upper = (bits >> a) & 1U;
      weight *= upper ? w[a] : 1.0 - w[a];
      corner[a] = upper ? i1[a] : i0[a];
    }
    if (weight != 0.0) sum += weight * x.at(corner);
  }
  return sum;
}

Tensor intra_blend(const Tensor& x, const Tensor& donor, const AnomalyMask& mask) {
  require_same_shape(x.shape(), donor.shape(), "intra_blend");
  const std::vector<std::ptrdiff_t> zero(x.rank(), 0);
  return poisson_blend(x, donor, mask, zero);
}

std::vector<std::ptrdiff_t> sample_source_offset(RngStream& rng, const Shape& image,
                                                 const Box& bbox, const Shape& source) {
  if (source.size() != image.size()) {
    throw InvalidArgument("source tensor rank does not match the image");
  }
  const Box region = blend_region(bbox, image);
  std::vector<std::ptrdiff_t> offset(image.size(), 0);
  if (region.empty()) return offset;
  for (std::size_t a = 0; a < image.size(); ++a) {
    if (image[a] == 1) {
      offset[a] = static_cast<std::ptrdiff_t>(rng.uniform_index(std::max<std::size_t>(source[a], 1)));
      continue;
    }
    const std::size_t padded = region.hi[a] - region.lo[a] + 2;
    if (source[a] < padded) {
      throw InvalidArgument("external tensor smaller than the blend box on axis " +
                            std::to_string(a));
    }
    const std::size_t start = rng.uniform_index(source[a] - padded + 1);
    offset[a] = static_cast<std::ptrdiff_t>(start) - static_cast<std::ptrdiff_t>(region.lo[a] - 1);
  }
  return offset;
}

Tensor inter_blend(const Tensor& x, const Tensor& external, const AnomalyMask& mask,
                   RngStream& rng) {
  const auto offset = sample_source_offset(rng, x.shape(), mask.bbox, external.shape());
  return inter_blend(x, external, mask, offset);
}

Tensor inter_blend(const Tensor& x, const Tensor& external, const AnomalyMask& mask,
                   std::span<const std::ptrdiff_t> offset) {
  return poisson_blend(x, external, mask, offset);
}

namespace {

Tensor radial_deform(const Tensor& x, const AnomalyMask& mask, const DeformParams& params,
                     Deformation kind) {
  require_same_shape(x.shape(), mask.raster.shape(), "deform");
  params.validate(x.rank());
  Tensor out = x;
  if (params.exponent == 1.0 || mask.bbox.empty()) return out;

  const MaskGeometry geom(mask.spec);
  const std::size_t d = x.rank();
  std::vector<double> p(d), dir(d);
  Index idx = mask.bbox.lo;
  do {
    const std::size_t off = x.offset(idx);
    if (!mask.raster[off]) continue;
    double r2 = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      p[a] = static_cast<double>(idx[a]);
      dir[a] = p[a] - params.center[a];
      r2 += dir[a] * dir[a];
    }
    if (r2 == 0.0) continue;
    const double r = std::sqrt(r2);
    for (double& v : dir) v /= r;
    const double radius = geom.exit_distance(params.center, dir);
    const std::vector<double> q =
        resample_position(kind, p, params.center, radius, params.exponent);
    bool moved = false;
    for (std::size_t a = 0; a < d; ++a) moved |= std::abs(q[a] - p[a]) > 1e-12;
    if (moved) out[off] = multilinear_sample(x, q);
  } while (next_index(idx, mask.bbox));
  return out;
}

}  // namespace

Tensor sink_deform(const Tensor& x, const AnomalyMask& mask, const DeformParams& params) {
  return radial_deform(x, mask, params, Deformation::kSink);
}

Tensor source_deform(const Tensor& x, const AnomalyMask& mask, const DeformParams& params) {
  return radial_deform(x, mask, params, Deformation::kSource);
}

Tensor smooth_intensity(const Tensor& x, const AnomalyMask& mask, const IntensityParams& params) {
  require_same_shape(x.shape(), mask.raster.shape(), "smooth_intensity");
  params.validate();
  const Tensor edge = distance_to_mask_edge(mask.raster);
  Tensor out = x;
  const double change = static_cast<double>(params.sign) * params.magnitude;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!mask.raster[i]) continue;
    out[i] = x[i] + change * std::min(edge[i] / params.smoothing_distance, 1.0);
  }
  return out;
}

void TaskConfig::validate() const {
  placement.validate();
  if (max_anomalies < 1) throw InvalidArgument("max_anomalies must be >= 1");
  if (forced_count < 0) throw InvalidArgument("forced anomaly count must be >= 0");
  if (!(exponent_min >= 1.0 && exponent_max > exponent_min)) {
    throw InvalidArgument("exponent range must satisfy 1 <= min < max");
  }
  if (!(intensity_min > 0.0 && intensity_max >= intensity_min)) {
    throw InvalidArgument("intensity range must satisfy 0 < min <= max");
  }
  if (!(smoothing_min > 0.0 && smoothing_max >= smoothing_min)) {
    throw InvalidArgument("smoothing range must satisfy 0 < min <= max");
  }
  if (!(sigma > 0.0)) throw InvalidArgument("labeller sigma must be > 0");
}

double robust_scale(const Tensor& x) {
  if (x.empty()) return 1.0;
  std::vector<double> v(x.values().begin(), x.values().end());
  auto quantile = [&v](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
    const double a = v[lo];
    if (lo + 1 >= v.size()) return a;
    const double b = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
    return a + (pos - static_cast<double>(lo)) * (b - a);
  };
  const double q1 = quantile(0.25);
  const double q3 = quantile(0.75);
  if (q3 - q1 > 0.0) return q3 - q1;
  double mean = 0.0;
  for (double e : x.values()) mean += e;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double e : x.values()) var += (e - mean) * (e - mean);
  const double sd = std::sqrt(var / static_cast<double>(x.size()));
  return sd > 0.0 ? sd : 1.0;
}

TaskParams sample_task_params(RngStream& rng, TaskKind kind, const Tensor& x,
                              const AnomalyMask& mask, const DonorPool& donors,
                              const TaskConfig& config) {
  switch (kind) {
    case TaskKind::kIntraBlend: {
      if (donors.intra.empty()) throw InvalidArgument("intra_blend needs at least one donor");
      BlendParams bp;
      bp.donor = rng.uniform_index(donors.intra.size());
      const Tensor& donor = donors.intra[bp.donor].get();
      if (config.intra_same_location) {
        bp.offset.assign(x.rank(), 0);
      } else {
        bp.offset = sample_source_offset(rng, x.shape(), mask.bbox, donor.shape());
      }
      return bp;
    }
    case TaskKind::kInterBlend: {
      if (donors.external.empty()) {
        throw InvalidArgument("inter_blend needs at least one external tensor");
      }
      BlendParams bp;
      bp.donor = rng.uniform_index(donors.external.size());
      bp.offset = sample_source_offset(rng, x.shape(), mask.bbox,
                                       donors.external[bp.donor].get().shape());
      return bp;
    }
    case TaskKind::kSink:
    case TaskKind::kSource: {
      DeformParams dp;
      std::vector<std::size_t> raster;
      Index idx = mask.bbox.lo;
      if (!mask.bbox.empty()) {
        do {
          if (mask.raster.at(idx)) raster.push_back(mask.raster.offset(idx));
        } while (next_index(idx, mask.bbox));
      }
      if (raster.empty()) throw InvalidArgument("deformation needs a nonempty mask");
      std::size_t flat = raster[rng.uniform_index(raster.size())];
      dp.center.resize(x.rank());
      for (std::size_t a = 0; a < x.rank(); ++a) {
        dp.center[a] = static_cast<double>(flat / x.strides()[a]);
        flat %= x.strides()[a];
      }
      dp.exponent = config.exponent_max - (config.exponent_max - config.exponent_min) * rng.uniform();
      return dp;
    }
    case TaskKind::kSmoothIntensity: {
      IntensityParams ip;
      ip.magnitude = rng.uniform(config.intensity_min, config.intensity_max) * robust_scale(x);
      ip.sign = rng.coin() ? 1 : -1;
      const double smallest =
          *std::min_element(mask.spec.semi_axes.begin(), mask.spec.semi_axes.end());
      ip.smoothing_distance = rng.uniform(config.smoothing_min, config.smoothing_max) * smallest;
      return ip;
    }
  }
  throw InvalidArgument("unknown task kind");
}

Tensor apply_anomaly(const Tensor& x, TaskKind kind, const AnomalyMask& mask,
                     const TaskParams& params, const DonorPool& donors) {
  switch (kind) {
    case TaskKind::kIntraBlend:
    case TaskKind::kInterBlend: {
      const auto* bp = std::get_if<BlendParams>(&params);
      if (bp == nullptr) throw InvalidArgument("blend task requires blend parameters");
      const auto& pool = kind == TaskKind::kIntraBlend ? donors.intra : donors.external;
      if (bp->donor >= pool.size()) throw InvalidArgument("blend donor index out of range");
      const Tensor& src = pool[bp->donor].get();
      if (kind == TaskKind::kIntraBlend) require_same_shape(x.shape(), src.shape(), "intra_blend");
      return poisson_blend(x, src, mask, bp->offset);
    }
    case TaskKind::kSink:
    case TaskKind::kSource: {
      const auto* dp = std::get_if<DeformParams>(&params);
      if (dp == nullptr) throw InvalidArgument("deformation task requires deform parameters");
      return kind == TaskKind::kSink ? sink_deform(x, mask, *dp) : source_deform(x, mask, *dp);
    }
    case TaskKind::kSmoothIntensity: {
      const auto* ip = std::get_if<IntensityParams>(&params);
      if (ip == nullptr) throw InvalidArgument("smooth_intensity requires intensity parameters");
      return smooth_intensity(x, mask, *ip);
    }
  }
  throw InvalidArgument("unknown task kind");
}

AnomalyResult apply_random_anomalies(const Tensor& x, TaskKind task, const DonorPool& donors,
                                     RngStream& rng, const TaskConfig& config) {
  config.validate();
  require_finite(x, "apply_random_anomalies");
  if (task == TaskKind::kIntraBlend && donors.intra.empty()) {
    throw InvalidArgument("intra_blend needs a nonempty donor set");
  }
  if (task == TaskKind::kInterBlend && donors.external.empty()) {
    throw InvalidArgument("inter_blend needs a nonempty external set");
  }
  const int count =
      config.forced_count > 0 ? config.forced_count : repeat_count(rng, config.max_anomalies);
  const BoolTensor foreground = foreground_of(x, config.foreground_threshold);

  AnomalyResult result{x, Tensor(x.shape(), 0.0), {}, 0};
  for (int i = 0; i < count; ++i) {
    RngStream local = rng.fork(static_cast<std::uint64_t>(i));
    AnomalyMask mask;
    try {
      mask = sample_anomaly_placement(local, x.shape(), foreground, config.placement);
    } catch (const PlacementFailure&) {
      ++result.placement_failures;
      continue;
    }
    TaskParams params = sample_task_params(local, task, result.corrupted, mask, donors, config);
    Tensor next = apply_anomaly(result.corrupted, task, mask, params, donors);
    Tensor label = label_map(result.corrupted, next, config.sigma);
    result.records.push_back(AnomalyRecord{task, std::move(mask), std::move(params), std::move(label)});
    result.corrupted = std::move(next);
  }
  if (result.records.empty()) {
    throw TaskFailure("all " + std::to_string(count) + " anomaly placements failed");
  }
  result.label = label_map(x, result.corrupted, config.sigma);
  return result;
}

}  // namespace synthanom
