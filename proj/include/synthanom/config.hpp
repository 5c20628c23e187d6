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


#ifndef SYNTHANOM_CONFIG_HPP_
#define SYNTHANOM_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "synthanom/metrics.hpp"
#include "synthanom/tasks.hpp"

namespace synthanom {

using ConfigMap = std::map<std::string, std::string>;

struct ConfigKey {
  std::string_view name;
  std::string_view help;
};

// Every recognised key; each is also accepted as a --<name> flag.
const std::vector<ConfigKey>& config_keys();

// `key = value` lines; blank lines and lines starting with '#' are ignored.
ConfigMap parse_config_text(std::string_view text);
ConfigMap read_config_file(const std::filesystem::path& path);

struct PipelineConfig {
  std::uint64_t seed = 0;
  std::size_t folds = 5;
  std::size_t train_tasks = 1;
  double sigma = 0.2;
  double foreground_threshold = 0.0;
  double mask_size_min = 0.04;
  double mask_size_max = 0.28;
  int placement_attempts = 100;
  int max_anomalies = 4;
  double exponent_min = 1.0;
  double exponent_max = 4.0;
  double intensity_min = 0.25;
  double intensity_max = 1.0;
  double smoothing_min = 0.1;
  double smoothing_max = 0.5;
  bool intra_same_location = true;
  bool zscore = false;
  bool full_product = false;
  Reducer reducer = Reducer::kMean;
  double label_threshold = kDefaultLabelThreshold;
  std::filesystem::path input_dir;
  std::filesystem::path external_dir;
  std::filesystem::path output_dir;

  TaskConfig task_config() const;
  // Throws ConfigError.
  void validate() const;
};

// Builds a config from key/value pairs; `seed` is mandatory unless
// `require_seed` is false. Throws ConfigError on unknown keys, unparsable
// values or failed validation.
PipelineConfig config_from_map(const ConfigMap& values, bool require_seed = true);

}  // namespace synthanom

#endif  // SYNTHANOM_CONFIG_HPP_
