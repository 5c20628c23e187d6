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


#ifndef SYNTHANOM_RNG_HPP_
#define SYNTHANOM_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace synthanom {

std::uint64_t splitmix64(std::uint64_t x);
// Stable across platforms and runs (FNV-1a followed by a splitmix finaliser).
std::uint64_t stable_hash(std::string_view text);
std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b);

// Seeded random stream. The engine (mt19937_64) and every conversion below
// are fully specified, so (seed, stream) gives the same draws everywhere;
// std:: distributions are deliberately not used.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  // Uniform in [0, n); n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  bool coin(double p = 0.5);

  // Independent child stream; depends only on (seed, stream, index), not on
  // how many values this stream has already produced.
  RngStream fork(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace synthanom

#endif  // SYNTHANOM_RNG_HPP_
