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


#include "synthanom/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace synthanom {

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"seed", "master random seed (required)"},
      {"folds", "number of data folds F"},
      {"train_tasks", "number of training tasks T (1..4)"},
      {"sigma", "labeller sigma"},
      {"foreground_threshold", "intensity above which a voxel is foreground"},
      {"mask_size_min", "smallest semi-axis as a fraction of the axis extent"},
      {"mask_size_max", "largest semi-axis as a fraction of the axis extent"},
      {"placement_attempts", "rejection budget per anomaly placement"},
      {"max_anomalies", "maximum anomalies per image"},
      {"exponent_min", "deformation exponent lower bound (exclusive)"},
      {"exponent_max", "deformation exponent upper bound"},
      {"intensity_min", "intensity change lower bound, fraction of the image IQR"},
      {"intensity_max", "intensity change upper bound, fraction of the image IQR"},
      {"smoothing_min", "smoothing distance lower bound, fraction of the smallest semi-axis"},
      {"smoothing_max", "smoothing distance upper bound, fraction of the smallest semi-axis"},
      {"intra_same_location", "intra-dataset blends take the donor patch at the same location"},
      {"zscore", "z-score each input over its foreground when loading"},
      {"full_product", "plan F x C(T_N, T) splits instead of pairing tasks with folds"},
      {"reducer", "slice/sample score reducer: mean or max"},
      {"label_threshold", "label value at or above which a voxel counts as anomalous"},
      {"input_dir", "directory of clean .ndt samples"},
      {"external_dir", "directory of external .ndt tensors for inter-dataset blending"},
      {"output_dir", "output directory"},
  };
  return keys;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("config key '" + key + "': cannot parse '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + text + "'");
}

}  // namespace

ConfigMap parse_config_text(std::string_view text) {
  ConfigMap out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    out[trim(std::string_view(t).substr(0, eq))] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

TaskConfig PipelineConfig::task_config() const {
  TaskConfig tc;
  tc.foreground_threshold = foreground_threshold;
  tc.placement.size_min = mask_size_min;
  tc.placement.size_max = mask_size_max;
  tc.placement.max_attempts = placement_attempts;
  tc.max_anomalies = max_anomalies;
  tc.exponent_min = exponent_min;
  tc.exponent_max = exponent_max;
  tc.intensity_min = intensity_min;
  tc.intensity_max = intensity_max;
  tc.smoothing_min = smoothing_min;
  tc.smoothing_max = smoothing_max;
  tc.intra_same_location = intra_same_location;
  tc.sigma = sigma;
  return tc;
}

void PipelineConfig::validate() const {
  if (folds < 2) throw ConfigError("folds must be >= 2");
  if (train_tasks == 0) throw ConfigError("train_tasks = 0 leaves no training tasks");
  if (train_tasks >= kAllTasks.size()) {
    throw ConfigError("train_tasks = " + std::to_string(train_tasks) +
                      " leaves no validation tasks (must be 1..4)");
  }
  if (!(label_threshold > 0.0 && label_threshold <= 1.0)) {
    throw ConfigError("label_threshold must be in (0, 1]");
  }
  try {
    task_config().validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

PipelineConfig config_from_map(const ConfigMap& values, bool require_seed) {
  for (const auto& [key, value] : values) {
    bool known = false;
    for (const ConfigKey& k : config_keys()) known |= k.name == key;
    if (!known) throw ConfigError("unknown config key '" + key + "'");
  }
  if (require_seed && !values.count("seed")) throw ConfigError("config key 'seed' is required");

  PipelineConfig c;
  auto get = [&](const char* key, auto& field) {
    auto it = values.find(key);
    if (it == values.end()) return;
    using F = std::decay_t<decltype(field)>;
    if constexpr (std::is_same_v<F, bool>) {
      field = parse_bool(key, it->second);
    } else if constexpr (std::is_same_v<F, std::filesystem::path>) {
      field = it->second;
    } else if constexpr (std::is_same_v<F, Reducer>) {
      try {
        field = parse_reducer(it->second);
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    } else {
      field = parse_number<F>(key, it->second);
    }
  };
  get("seed", c.seed);
  get("folds", c.folds);
  get("train_tasks", c.train_tasks);
  get("sigma", c.sigma);
  get("foreground_threshold", c.foreground_threshold);
  get("mask_size_min", c.mask_size_min);
  get("mask_size_max", c.mask_size_max);
  get("placement_attempts", c.placement_attempts);
  get("max_anomalies", c.max_anomalies);
  get("exponent_min", c.exponent_min);
  get("exponent_max", c.exponent_max);
  get("intensity_min", c.intensity_min);
  get("intensity_max", c.intensity_max);
  get("smoothing_min", c.smoothing_min);
  get("smoothing_max", c.smoothing_max);
  get("intra_same_location", c.intra_same_location);
  get("zscore", c.zscore);
  get("full_product", c.full_product);
  get("reducer", c.reducer);
  get("label_threshold", c.label_threshold);
  get("input_dir", c.input_dir);
  get("external_dir", c.external_dir);
  get("output_dir", c.output_dir);
  c.validate();
  return c;
}

}  // namespace synthanom
