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


#include "synthanom/crossval.hpp"

#include <numeric>
#include <string>

namespace synthanom {

TaskFoldAssignment TaskFoldAssignment::standard() {
  return TaskFoldAssignment{std::vector<TaskKind>(kAllTasks.begin(), kAllTasks.end()),
                            kAllTasks.size()};
}

void TaskFoldAssignment::validate() const {
  if (tasks.size() < 2) throw InvalidArgument("need at least two tasks");
  if (folds < 2) throw InvalidArgument("need at least two folds");
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<SampleAssignment> assign_folds(const std::vector<std::string>& sample_ids,
                                           std::size_t folds, RngStream& rng) {
  if (folds < 2) throw InvalidArgument("assign_folds: need at least two folds");
  if (sample_ids.size() < folds) {
    throw InvalidArgument("assign_folds: " + std::to_string(sample_ids.size()) +
                          " samples cannot fill " + std::to_string(folds) + " folds");
  }
  std::vector<std::size_t> order(sample_ids.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform_index(i)]);
  }
  std::vector<SampleAssignment> out(sample_ids.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    out[order[pos]] = SampleAssignment{sample_ids[order[pos]], pos % folds};
  }
  return out;
}

FoldRoles majority_fold_roles(const std::vector<std::size_t>& train_task_folds,
                              const std::vector<std::size_t>& val_task_folds) {
  if (train_task_folds.size() >= val_task_folds.size()) {
    return FoldRoles{train_task_folds, val_task_folds};
  }
  return FoldRoles{val_task_folds, train_task_folds};
}

namespace {

// Calls fn(mask) for every k-subset of n items in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<bool> chosen(n, false);
    for (std::size_t p : pick) chosen[p] = true;
    fn(chosen);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

SplitPlan enumerate_splits(const TaskFoldAssignment& assignment, std::size_t train_tasks,
                           SplitMode mode) {
  assignment.validate();
  const std::size_t n = assignment.tasks.size();
  if (train_tasks == 0 || train_tasks >= n) {
    throw InvalidArgument(train_tasks == 0 ? "no training tasks" : "no validation tasks");
  }
  if (mode == SplitMode::kPairedFolds && assignment.folds != n) {
    throw InvalidArgument("paired task/fold splits need as many folds as tasks");
  }
  SplitPlan plan{assignment.tasks, assignment.folds, train_tasks, mode, {}};
  for_each_subset(n, train_tasks, [&](const std::vector<bool>& chosen) {
    SplitIteration it;
    std::vector<std::size_t> train_task_folds, val_task_folds;
    for (std::size_t t = 0; t < n; ++t) {
      (chosen[t] ? it.train_tasks : it.val_tasks).push_back(assignment.tasks[t]);
      (chosen[t] ? train_task_folds : val_task_folds).push_back(t);
    }
    if (mode == SplitMode::kPairedFolds) {
      FoldRoles roles = majority_fold_roles(train_task_folds, val_task_folds);
      it.train_folds = std::move(roles.train);
      it.val_folds = std::move(roles.val);
      it.id = plan.iterations.size();
      plan.iterations.push_back(std::move(it));
      return;
    }
    for (std::size_t held = 0; held < assignment.folds; ++held) {
      SplitIteration copy = it;
      for (std::size_t f = 0; f < assignment.folds; ++f) {
        (f == held ? copy.val_folds : copy.train_folds).push_back(f);
      }
      copy.id = plan.iterations.size();
      plan.iterations.push_back(std::move(copy));
    }
  });
  return plan;
}

}  // namespace synthanom
