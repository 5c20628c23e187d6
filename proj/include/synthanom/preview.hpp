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


#ifndef SYNTHANOM_PREVIEW_HPP_
#define SYNTHANOM_PREVIEW_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "synthanom/tensor.hpp"

namespace synthanom {

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major
};

struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB triples
};

std::vector<std::uint8_t> encode_pgm(const GrayImage& image);
std::vector<std::uint8_t> encode_ppm(const RgbImage& image);

// 2-D slice `index` of a 3-D volume along `axis`; 2-D inputs pass through.
Tensor take_slice(const Tensor& x, std::size_t axis, std::size_t index);

inline constexpr std::size_t kMontageSeparator = 1;

// clean | corrupted | label, separated by one-pixel white columns. Both image
// panels share one intensity window; labels map [0, 1] to [0, 255].
GrayImage make_montage(const Tensor& clean, const Tensor& corrupted, const Tensor& label);

struct Profile {
  std::size_t row = 0;
  std::vector<double> before;
  std::vector<double> after;
};

// Values along the last axis of row `row` of a 2-D image.
Profile extract_profile(const Tensor& clean, const Tensor& corrupted, std::size_t row);

// Before (grey) and after (green) line plot of a profile.
RgbImage render_profile(const Profile& profile, std::size_t height = 128, std::size_t x_scale = 4);

struct PreviewOptions {
  std::filesystem::path clean;
  std::filesystem::path corrupted;
  std::filesystem::path label;    // optional; computed from clean/corrupted when empty
  std::filesystem::path records;  // optional record log used to centre the profile
  std::string sample;             // record to use; defaults to the clean file's stem
  std::size_t anomaly = 0;
  std::size_t slice_axis = 0;
  std::optional<std::size_t> slice;  // required for 3-D inputs
  double sigma = 0.2;
  std::filesystem::path output_prefix;
};

struct PreviewFiles {
  std::filesystem::path montage;
  std::filesystem::path profile_image;
  std::filesystem::path profile_csv;
  std::size_t profile_row = 0;
};

PreviewFiles run_preview(const PreviewOptions& options);

}  // namespace synthanom

#endif  // SYNTHANOM_PREVIEW_HPP_
