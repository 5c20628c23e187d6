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


#ifndef SYNTHANOM_PIPELINE_HPP_
#define SYNTHANOM_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "synthanom/config.hpp"
#include "synthanom/manifest.hpp"
#include "synthanom/tasks.hpp"

namespace synthanom {

// Per-sample z-score over voxels above `foreground_threshold`.
Tensor zscore_foreground(const Tensor& x, double foreground_threshold);

// Sample ids (file stems) of the *.ndt files in a directory.
std::vector<std::string> list_sample_ids(const std::filesystem::path& dir);

// Splits `input_dir` into folds and writes the split manifest.
nlohmann::json run_plan(const PipelineConfig& config, const std::filesystem::path& manifest_path);

struct GenerateOptions {
  std::filesystem::path manifest;
  std::size_t iteration = 0;
  std::string role;  // "train" or "val"
};

struct GenerateSummary {
  std::size_t written = 0;
  std::size_t failed = 0;
  std::map<std::string, std::size_t> task_histogram;
};

// For every sample of the role: picks one task uniformly from the role's
// task set, applies it and writes
//   <output_dir>/images/<id>.ndt, <output_dir>/labels/<id>.ndt
// plus one JSON line per sample in <output_dir>/records.jsonl.
GenerateSummary run_generate(const PipelineConfig& config, const GenerateOptions& options);

// Stream id for a sample within an iteration; anomaly i of that sample uses
// the child stream fork(i).
std::uint64_t sample_stream_id(const std::string& sample_id, std::size_t iteration);

struct ReplayOutput {
  std::string sample;
  Tensor corrupted;
  Tensor label;
};

// Rebuilds one sample's outputs from its record-log entry and the clean
// inputs, without drawing any random numbers.
ReplayOutput replay_record(const nlohmann::json& entry, const std::filesystem::path& input_dir,
                           const std::filesystem::path& external_dir);

// Replays every successful entry of a record log into `output_dir`.
std::size_t run_replay(const std::filesystem::path& records, const std::filesystem::path& input_dir,
                       const std::filesystem::path& external_dir,
                       const std::filesystem::path& output_dir);

enum class EvalLevel { kPixel, kSlice, kSample };
EvalLevel parse_eval_level(const std::string& name);
std::string_view eval_level_name(EvalLevel level);

struct EvalOptions {
  std::filesystem::path predictions;
  std::filesystem::path labels;
  EvalLevel level = EvalLevel::kPixel;
  Reducer reducer = Reducer::kMean;
  std::size_t slice_axis = 0;
  double label_threshold = kDefaultLabelThreshold;
  std::filesystem::path report;  // optional JSON report
};

struct EvalReport {
  double average_precision = 0.0;  // unit interval
  double auroc = 0.0;
  std::size_t pairs = 0;
  std::size_t entries = 0;
  std::size_t positives = 0;
  std::vector<std::string> skipped;

  nlohmann::json to_json(const EvalOptions& options) const;
};

EvalReport run_eval(const EvalOptions& options);

}  // namespace synthanom

#endif  // SYNTHANOM_PIPELINE_HPP_
