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


#ifndef SYNTHANOM_ERROR_HPP_
#define SYNTHANOM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace synthanom {

// Caller passed arguments that violate an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Rejection sampling could not find a mask meeting the foreground overlap rule.
class PlacementFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every anomaly placement of a task application failed.
class TaskFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ranking metric is undefined for the given targets (e.g. no positives).
class UndefinedMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or unreadable input data (tensor files, manifests, record logs).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid pipeline configuration or command-line usage.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace synthanom

#endif  // SYNTHANOM_ERROR_HPP_
