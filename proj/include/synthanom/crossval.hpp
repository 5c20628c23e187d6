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


#ifndef SYNTHANOM_CROSSVAL_HPP_
#define SYNTHANOM_CROSSVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "synthanom/rng.hpp"
#include "synthanom/tasks.hpp"

namespace synthanom {

// Task i is paired with data fold i.
struct TaskFoldAssignment {
  std::vector<TaskKind> tasks;
  std::size_t folds = 0;

  static TaskFoldAssignment standard();  // the five tasks, five folds
  void validate() const;
};

struct SampleAssignment {
  std::string sample_id;
  std::size_t fold = 0;

  bool operator==(const SampleAssignment&) const = default;
};

struct SplitIteration {
  std::size_t id = 0;
  std::vector<TaskKind> train_tasks;
  std::vector<TaskKind> val_tasks;
  std::vector<std::size_t> train_folds;
  std::vector<std::size_t> val_folds;

  bool operator==(const SplitIteration&) const = default;
};

enum class SplitMode {
  kPairedFolds,  // one fold per task, C(T_N, T) iterations
  kFullProduct,  // every held-out fold times every task subset, F * C(T_N, T)
};

struct SplitPlan {
  std::vector<TaskKind> tasks;
  std::size_t folds = 0;
  std::size_t train_task_count = 0;
  SplitMode mode = SplitMode::kPairedFolds;
  std::vector<SplitIteration> iterations;

  bool operator==(const SplitPlan&) const = default;
};

std::uint64_t binomial(std::size_t n, std::size_t k);

// Shuffles the ids and deals them round-robin into `folds` folds, so fold
// sizes differ by at most one. Output keeps the input order.
std::vector<SampleAssignment> assign_folds(const std::vector<std::string>& sample_ids,
                                           std::size_t folds, RngStream& rng);

struct FoldRoles {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
};

// The folds paired with the larger task partition supply the training data.
FoldRoles majority_fold_roles(const std::vector<std::size_t>& train_task_folds,
                              const std::vector<std::size_t>& val_task_folds);

SplitPlan enumerate_splits(const TaskFoldAssignment& assignment, std::size_t train_tasks,
                           SplitMode mode = SplitMode::kPairedFolds);

}  // namespace synthanom

#endif  // SYNTHANOM_CROSSVAL_HPP_
