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


#include "synthanom/manifest.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace synthanom {
namespace {

using nlohmann::json;

json task_list(const std::vector<TaskKind>& tasks) {
  json out = json::array();
  for (TaskKind t : tasks) out.push_back(std::string(task_name(t)));
  return out;
}

std::vector<TaskKind> parse_tasks(const json& arr) {
  std::vector<TaskKind> out;
  for (const auto& t : arr) out.push_back(parse_task_kind(t.get<std::string>()));
  return out;
}

std::vector<std::string> samples_in(const std::vector<SampleAssignment>& samples,
                                    const std::vector<std::size_t>& folds) {
  std::vector<std::string> out;
  for (const auto& s : samples) {
    if (std::find(folds.begin(), folds.end(), s.fold) != folds.end()) out.push_back(s.sample_id);
  }
  return out;
}

std::string_view mode_name(SplitMode mode) {
  return mode == SplitMode::kPairedFolds ? "paired" : "full_product";
}

}  // namespace

std::vector<std::string> Manifest::role_samples(std::size_t iteration,
                                                const std::string& role) const {
  if (iteration >= plan.iterations.size()) {
    throw InvalidArgument("manifest has no iteration " + std::to_string(iteration));
  }
  const SplitIteration& it = plan.iterations[iteration];
  if (role == "train") return samples_in(samples, it.train_folds);
  if (role == "val") return samples_in(samples, it.val_folds);
  throw InvalidArgument("role must be train or val, got " + role);
}

json emit_manifest(const SplitPlan& plan, const std::vector<SampleAssignment>& samples,
                   std::uint64_t seed) {
  std::set<std::string> seen;
  json sample_arr = json::array();
  for (const auto& s : samples) {
    if (s.sample_id.empty()) throw InvalidArgument("emit_manifest: empty sample id");
    if (!seen.insert(s.sample_id).second) {
      throw InvalidArgument("emit_manifest: duplicate sample id " + s.sample_id);
    }
    if (s.fold >= plan.folds) {
      throw InvalidArgument("emit_manifest: sample " + s.sample_id + " has unknown fold " +
                            std::to_string(s.fold));
    }
    sample_arr.push_back({{"id", s.sample_id}, {"fold", s.fold}});
  }
  json iterations = json::array();
  for (const SplitIteration& it : plan.iterations) {
    iterations.push_back({{"id", it.id},
                          {"train_tasks", task_list(it.train_tasks)},
                          {"val_tasks", task_list(it.val_tasks)},
                          {"train_folds", it.train_folds},
                          {"val_folds", it.val_folds},
                          {"train_samples", samples_in(samples, it.train_folds)},
                          {"val_samples", samples_in(samples, it.val_folds)}});
  }
  return json{{"version", kManifestVersion},
              {"seed", seed},
              {"tasks", task_list(plan.tasks)},
              {"folds", plan.folds},
              {"train_task_count", plan.train_task_count},
              {"mode", mode_name(plan.mode)},
              {"samples", std::move(sample_arr)},
              {"iterations", std::move(iterations)}};
}

Manifest parse_manifest(const json& doc) {
  try {
    Manifest m;
    m.version = doc.at("version").get<int>();
    if (m.version != kManifestVersion) {
      throw DataError("unsupported manifest version " + std::to_string(m.version));
    }
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.plan.tasks = parse_tasks(doc.at("tasks"));
    m.plan.folds = doc.at("folds").get<std::size_t>();
    m.plan.train_task_count = doc.value("train_task_count", std::size_t{0});
    m.plan.mode = doc.value("mode", std::string("paired")) == "full_product"
                      ? SplitMode::kFullProduct
                      : SplitMode::kPairedFolds;
    std::map<std::string, std::size_t> fold_of;
    for (const auto& s : doc.at("samples")) {
      SampleAssignment a{s.at("id").get<std::string>(), s.at("fold").get<std::size_t>()};
      fold_of[a.sample_id] = a.fold;
      m.samples.push_back(std::move(a));
    }
    for (const auto& j : doc.at("iterations")) {
      SplitIteration it;
      it.id = j.at("id").get<std::size_t>();
      it.train_tasks = parse_tasks(j.at("train_tasks"));
      it.val_tasks = parse_tasks(j.at("val_tasks"));
      it.train_folds = j.at("train_folds").get<std::vector<std::size_t>>();
      it.val_folds = j.at("val_folds").get<std::vector<std::size_t>>();
      for (const char* key : {"train_samples", "val_samples"}) {
        for (const auto& id : j.at(key)) {
          if (!fold_of.count(id.get<std::string>())) {
            throw InvalidArgument("manifest iteration references unknown sample id " +
                                  id.get<std::string>());
          }
        }
      }
      m.plan.iterations.push_back(std::move(it));
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace synthanom
