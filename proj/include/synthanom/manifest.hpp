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


#ifndef SYNTHANOM_MANIFEST_HPP_
#define SYNTHANOM_MANIFEST_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "synthanom/crossval.hpp"

namespace synthanom {

inline constexpr int kManifestVersion = 1;

struct Manifest {
  int version = kManifestVersion;
  std::uint64_t seed = 0;
  SplitPlan plan;
  std::vector<SampleAssignment> samples;

  // Sample ids of one role ("train" or "val") in one iteration, in the
  // order they appear in `samples`.
  std::vector<std::string> role_samples(std::size_t iteration, const std::string& role) const;
};

// JSON document with the fields version, seed, tasks, folds, iterations
// (id, train_tasks, val_tasks, train_samples, val_samples) plus the fold
// bookkeeping needed to parse the plan back.
nlohmann::json emit_manifest(const SplitPlan& plan, const std::vector<SampleAssignment>& samples,
                             std::uint64_t seed);

Manifest parse_manifest(const nlohmann::json& doc);

}  // namespace synthanom

#endif  // SYNTHANOM_MANIFEST_HPP_
