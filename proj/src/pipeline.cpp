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


#include "synthanom/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "synthanom/labelling.hpp"
#include "synthanom/ndt_io.hpp"

namespace synthanom {

namespace fs = std::filesystem;
using nlohmann::json;

Tensor zscore_foreground(const Tensor& x, double foreground_threshold) {
  auto stats = [&](bool foreground_only) {
    double sum = 0.0, sq = 0.0;
    std::size_t n = 0;
    for (double v : x.values()) {
      if (foreground_only && !(v > foreground_threshold)) continue;
      sum += v;
      ++n;
    }
    if (n == 0) return std::pair{0.0, 0.0};
    const double mean = sum / static_cast<double>(n);
    for (double v : x.values()) {
      if (foreground_only && !(v > foreground_threshold)) continue;
      sq += (v - mean) * (v - mean);
    }
    return std::pair{mean, std::sqrt(sq / static_cast<double>(n))};
  };
  auto [mean, sd] = stats(true);
  if (!(sd > 0.0)) std::tie(mean, sd) = stats(false);
  if (!(sd > 0.0)) sd = 1.0;
  Tensor out = x;
  for (double& v : out.values()) v = (v - mean) / sd;
  return out;
}

std::vector<std::string> list_sample_ids(const fs::path& dir) {
  std::vector<std::string> ids;
  for (const fs::path& p : list_ndt_files(dir)) ids.push_back(p.stem().string());
  return ids;
}

nlohmann::json run_plan(const PipelineConfig& config, const fs::path& manifest_path) {
  config.validate();
  if (config.input_dir.empty()) throw ConfigError("plan needs input_dir");
  const std::vector<std::string> ids = list_sample_ids(config.input_dir);
  if (ids.size() < config.folds) {
    throw DataError("input directory lists " + std::to_string(ids.size()) +
                    " samples, fewer than the " + std::to_string(config.folds) + " folds");
  }
  RngStream rng(config.seed, stable_hash("fold-assignment"));
  const auto samples = assign_folds(ids, config.folds, rng);
  TaskFoldAssignment assignment = TaskFoldAssignment::standard();
  assignment.folds = config.folds;
  const SplitPlan plan =
      enumerate_splits(assignment, config.train_tasks,
                       config.full_product ? SplitMode::kFullProduct : SplitMode::kPairedFolds);
  json doc = emit_manifest(plan, samples, config.seed);
  if (manifest_path.has_parent_path()) fs::create_directories(manifest_path.parent_path());
  write_file_atomic(manifest_path, doc.dump(2) + "\n");
  return doc;
}

std::uint64_t sample_stream_id(const std::string& sample_id, std::size_t iteration) {
  return hash_combine(stable_hash(sample_id), static_cast<std::uint64_t>(iteration));
}

namespace {

const char* kind_name(MaskKind k) { return k == MaskKind::kEllipsoid ? "ellipsoid" : "cuboid"; }

json mask_to_json(const MaskSpec& spec) {
  return json{{"kind", kind_name(spec.kind)},
              {"center", spec.center},
              {"semi_axes", spec.semi_axes},
              {"rotation", spec.rotation}};
}

MaskSpec mask_from_json(const json& j) {
  MaskSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "ellipsoid" && kind != "cuboid") throw DataError("unknown mask kind " + kind);
  spec.kind = kind == "ellipsoid" ? MaskKind::kEllipsoid : MaskKind::kCuboid;
  spec.center = j.at("center").get<std::vector<double>>();
  spec.semi_axes = j.at("semi_axes").get<std::vector<double>>();
  spec.rotation = j.at("rotation").get<std::vector<double>>();
  return spec;
}

json params_to_json(const TaskParams& params, const std::vector<std::string>& donor_ids) {
  return std::visit(
      [&](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BlendParams>) {
          return json{{"donor", donor_ids.at(p.donor)}, {"offset", p.offset}};
        } else if constexpr (std::is_same_v<P, DeformParams>) {
          return json{{"center", p.center}, {"exponent", p.exponent}};
        } else {
          return json{{"magnitude", p.magnitude},
                      {"sign", p.sign},
                      {"smoothing_distance", p.smoothing_distance}};
        }
      },
      params);
}

TaskParams params_from_json(TaskKind kind, const json& j) {
  switch (kind) {
    case TaskKind::kIntraBlend:
    case TaskKind::kInterBlend:
      return BlendParams{0, j.at("offset").get<std::vector<std::ptrdiff_t>>()};
    case TaskKind::kSink:
    case TaskKind::kSource:
      return DeformParams{j.at("center").get<std::vector<double>>(), j.at("exponent").get<double>()};
    case TaskKind::kSmoothIntensity:
      return IntensityParams{j.at("magnitude").get<double>(), j.at("sign").get<int>(),
                             j.at("smoothing_distance").get<double>()};
  }
  throw DataError("unknown task kind in record");
}

Tensor load_sample(const fs::path& dir, const std::string& id, bool zscore, double threshold) {
  Tensor x = read_ndt(dir / (id + ".ndt"));
  return zscore ? zscore_foreground(x, threshold) : x;
}

void write_outputs(const fs::path& out_dir, const std::string& id, const Tensor& image,
                   const Tensor& label) {
  write_ndt(out_dir / "images" / (id + ".ndt"), image);
  write_ndt(out_dir / "labels" / (id + ".ndt"), label);
}

}  // namespace

GenerateSummary run_generate(const PipelineConfig& config, const GenerateOptions& options) {
  config.validate();
  if (config.input_dir.empty()) throw ConfigError("generate needs input_dir");
  if (config.output_dir.empty()) throw ConfigError("generate needs output_dir");
  if (options.role != "train" && options.role != "val") {
    throw ConfigError("role must be train or val");
  }
  std::ifstream in(options.manifest);
  if (!in) throw DataError("cannot read manifest " + options.manifest.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(std::string("manifest is not valid JSON: ") + e.what());
  }
  const Manifest manifest = parse_manifest(doc);
  if (options.iteration >= manifest.plan.iterations.size()) {
    throw ConfigError("manifest has no iteration " + std::to_string(options.iteration));
  }
  const SplitIteration& it = manifest.plan.iterations[options.iteration];
  const std::vector<TaskKind>& tasks = options.role == "train" ? it.train_tasks : it.val_tasks;
  const std::vector<std::string> ids = manifest.role_samples(options.iteration, options.role);

  // Corrupt inputs abort the whole pass before anything is written.
  std::vector<Tensor> clean;
  clean.reserve(ids.size());
  for (const auto& id : ids) {
    clean.push_back(load_sample(config.input_dir, id, config.zscore, config.foreground_threshold));
  }
  std::vector<Tensor> external;
  std::vector<std::string> external_ids;
  if (std::find(tasks.begin(), tasks.end(), TaskKind::kInterBlend) != tasks.end()) {
    if (config.external_dir.empty()) {
      throw ConfigError("role includes inter_blend but external_dir is not set");
    }
    external_ids = list_sample_ids(config.external_dir);
    if (external_ids.empty()) throw DataError("external_dir holds no .ndt files");
    for (const auto& id : external_ids) {
      external.push_back(load_sample(config.external_dir, id, config.zscore, config.foreground_threshold));
    }
  }

  fs::create_directories(config.output_dir / "images");
  fs::create_directories(config.output_dir / "labels");
  const fs::path log_path = config.output_dir / "records.jsonl";
  std::ofstream log(log_path, std::ios::trunc);
  if (!log) throw DataError("cannot write " + log_path.string());

  const TaskConfig tc = config.task_config();
  GenerateSummary summary;
  for (std::size_t s = 0; s < ids.size(); ++s) {
    const std::uint64_t stream = sample_stream_id(ids[s], options.iteration);
    RngStream rng(config.seed, stream);
    const TaskKind task = tasks[rng.uniform_index(tasks.size())];
    ++summary.task_histogram[std::string(task_name(task))];

    DonorPool pool;
    std::vector<std::string> intra_ids;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (k == s && ids.size() > 1) continue;
      pool.intra.emplace_back(clean[k]);
      intra_ids.push_back(ids[k]);
    }
    for (const Tensor& e : external) pool.external.emplace_back(e);

    json entry{{"sample", ids[s]},
               {"iteration", options.iteration},
               {"role", options.role},
               {"seed", config.seed},
               {"stream", stream},
               {"task", task_name(task)},
               {"sigma", config.sigma},
               {"zscore", config.zscore},
               {"foreground_threshold", config.foreground_threshold}};
    try {
      AnomalyResult result = apply_random_anomalies(clean[s], task, pool, rng, tc);
      json anomalies = json::array();
      for (const AnomalyRecord& r : result.records) {
        anomalies.push_back({{"kind", task_name(r.kind)},
                             {"mask", mask_to_json(r.mask.spec)},
                             {"params", params_to_json(r.params, task == TaskKind::kInterBlend
                                                                     ? external_ids
                                                                     : intra_ids)}});
      }
      write_outputs(config.output_dir, ids[s], result.corrupted, result.label);
      entry["status"] = "ok";
      entry["placement_failures"] = result.placement_failures;
      entry["anomalies"] = std::move(anomalies);
      ++summary.written;
    } catch (const TaskFailure& e) {
      entry["status"] = "placement-failure";
      entry["message"] = e.what();
      ++summary.failed;
    } catch (const InvalidArgument& e) {
      entry["status"] = "error";
      entry["message"] = e.what();
      ++summary.failed;
    }
    log << entry.dump() << '\n';
    log.flush();
  }
  return summary;
}

ReplayOutput replay_record(const json& entry, const fs::path& input_dir,
                           const fs::path& external_dir) {
  try {
    if (entry.at("status").get<std::string>() != "ok") {
      throw DataError("record for " + entry.at("sample").get<std::string>() +
                      " has no successful anomalies to replay");
    }
    const std::string id = entry.at("sample").get<std::string>();
    const bool zscore = entry.value("zscore", false);
    const double threshold = entry.value("foreground_threshold", 0.0);
    const double sigma = entry.at("sigma").get<double>();
    const Tensor clean = load_sample(input_dir, id, zscore, threshold);
    Tensor current = clean;
    for (const json& a : entry.at("anomalies")) {
      const TaskKind kind = parse_task_kind(a.at("kind").get<std::string>());
      const AnomalyMask mask = rasterize_mask(mask_from_json(a.at("mask")), clean.shape());
      const TaskParams params = params_from_json(kind, a.at("params"));
      DonorPool pool;
      Tensor donor;
      if (is_blend_task(kind)) {
        const std::string donor_id = a.at("params").at("donor").get<std::string>();
        donor = load_sample(kind == TaskKind::kIntraBlend ? input_dir : external_dir, donor_id,
                            zscore, threshold);
        (kind == TaskKind::kIntraBlend ? pool.intra : pool.external).emplace_back(donor);
      }
      current = apply_anomaly(current, kind, mask, params, pool);
    }
    Tensor label = label_map(clean, current, sigma);
    return ReplayOutput{id, std::move(current), std::move(label)};
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed record: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("record cannot be replayed: ") + e.what());
  }
}

std::size_t run_replay(const fs::path& records, const fs::path& input_dir,
                       const fs::path& external_dir, const fs::path& output_dir) {
  std::ifstream in(records);
  if (!in) throw DataError("cannot read record log " + records.string());
  fs::create_directories(output_dir / "images");
  fs::create_directories(output_dir / "labels");
  std::size_t count = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json entry;
    try {
      entry = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(std::string("record log line is not JSON: ") + e.what());
    }
    if (entry.value("status", std::string()) != "ok") continue;
    const ReplayOutput out = replay_record(entry, input_dir, external_dir);
    write_outputs(output_dir, out.sample, out.corrupted, out.label);
    ++count;
  }
  return count;
}

EvalLevel parse_eval_level(const std::string& name) {
  if (name == "pixel") return EvalLevel::kPixel;
  if (name == "slice") return EvalLevel::kSlice;
  if (name == "sample") return EvalLevel::kSample;
  throw ConfigError("level must be pixel, slice or sample, got " + name);
}

std::string_view eval_level_name(EvalLevel level) {
  switch (level) {
    case EvalLevel::kPixel:
      return "pixel";
    case EvalLevel::kSlice:
      return "slice";
    case EvalLevel::kSample:
      return "sample";
  }
  return "unknown";
}

json EvalReport::to_json(const EvalOptions& options) const {
  return json{{"level", eval_level_name(options.level)},
              {"reducer", reducer_name(options.reducer)},
              {"slice_axis", options.slice_axis},
              {"label_threshold", options.label_threshold},
              {"pairs", pairs},
              {"entries", entries},
              {"positives", positives},
              {"average_precision", average_precision},
              {"auroc", auroc},
              {"ap_percent", 100.0 * average_precision},
              {"auroc_percent", 100.0 * auroc},
              {"skipped", skipped}};
}

EvalReport run_eval(const EvalOptions& options) {
  EvalReport report;
  ScoredSet all;
  for (const fs::path& pred_path : list_ndt_files(options.predictions)) {
    const fs::path label_path = options.labels / pred_path.filename();
    if (!fs::exists(label_path)) continue;
    const Tensor pred = read_ndt(pred_path);
    const Tensor label = read_ndt(label_path);
    if (pred.shape() != label.shape()) {
      report.skipped.push_back(pred_path.filename().string() + ": shape " +
                               shape_to_string(pred.shape()) + " vs " +
                               shape_to_string(label.shape()));
      continue;
    }
    switch (options.level) {
      case EvalLevel::kPixel:
        all.append(pixel_scores(pred, label, options.label_threshold));
        break;
      case EvalLevel::kSlice:
        if (options.slice_axis >= pred.rank()) {
          report.skipped.push_back(pred_path.filename().string() + ": no slice axis " +
                                   std::to_string(options.slice_axis));
          continue;
        }
        all.append(reduce_to_slices(pred, label, options.slice_axis, options.reducer,
                                    options.label_threshold));
        break;
      case EvalLevel::kSample:
        all.append(reduce_to_sample(pred, label, options.reducer, options.label_threshold));
        break;
    }
    ++report.pairs;
  }
  if (report.pairs == 0) throw DataError("no prediction/label file pairs to evaluate");
  report.entries = all.scores.size();
  report.positives = all.positives();
  try {
    report.average_precision = average_precision(all);
    report.auroc = auroc(all);
  } catch (const UndefinedMetric& e) {
    throw DataError(std::string("metrics undefined for these labels: ") + e.what());
  }
  if (!options.report.empty()) {
    if (options.report.has_parent_path()) fs::create_directories(options.report.parent_path());
    write_file_atomic(options.report, report.to_json(options).dump(2) + "\n");
  }
  return report;
}

}  // namespace synthanom
