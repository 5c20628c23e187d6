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


#include "synthanom/preview.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "synthanom/labelling.hpp"
#include "synthanom/ndt_io.hpp"

namespace synthanom {

namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> with_header(const std::string& header,
                                      const std::vector<std::uint8_t>& body) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::uint8_t to_byte(double v, double lo, double hi) {
  if (!(hi > lo)) return 128;
  const double t = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(255.0 * t));
}

void require_2d(const Tensor& x, const char* what) {
  if (x.rank() != 2) {
    throw InvalidArgument(std::string(what) + ": expected a 2-D image, got rank " +
                          std::to_string(x.rank()));
  }
}

}  // namespace

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
  return with_header("P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                         "\n255\n",
                     image.pixels);
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& image) {
  return with_header("P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                         "\n255\n",
                     image.pixels);
}

Tensor take_slice(const Tensor& x, std::size_t axis, std::size_t index) {
  if (x.rank() == 2) return x;
  if (x.rank() != 3) throw InvalidArgument("preview needs a 2-D image or a 3-D volume");
  if (axis >= 3) throw InvalidArgument("slice axis out of range");
  if (index >= x.extent(axis)) {
    throw InvalidArgument("slice index " + std::to_string(index) + " out of range (extent " +
                          std::to_string(x.extent(axis)) + ")");
  }
  Box box{Index(3, 0), Index(x.shape().begin(), x.shape().end())};
  box.lo[axis] = index;
  box.hi[axis] = index + 1;
  Tensor slab = extract(x, box);
  Shape flat;
  for (std::size_t a = 0; a < 3; ++a) {
    if (a != axis) flat.push_back(x.extent(a));
  }
  return Tensor(flat, std::vector<double>(slab.values().begin(), slab.values().end()));
}

GrayImage make_montage(const Tensor& clean, const Tensor& corrupted, const Tensor& label) {
  require_2d(clean, "make_montage");
  require_same_shape(clean.shape(), corrupted.shape(), "make_montage");
  require_same_shape(clean.shape(), label.shape(), "make_montage");
  const std::size_t h = clean.extent(0), w = clean.extent(1);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const Tensor* t : {&clean, &corrupted}) {
    for (double v : t->values()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  GrayImage img;
  img.width = 3 * w + 2 * kMontageSeparator;
  img.height = h;
  img.pixels.assign(img.width * img.height, 255);
  for (std::size_t r = 0; r < h; ++r) {
    std::uint8_t* row = img.pixels.data() + r * img.width;
    for (std::size_t c = 0; c < w; ++c) {
      row[c] = to_byte(clean[r * w + c], lo, hi);
      row[w + kMontageSeparator + c] = to_byte(corrupted[r * w + c], lo, hi);
      row[2 * (w + kMontageSeparator) + c] = to_byte(label[r * w + c], 0.0, 1.0);
    }
  }
  return img;
}

Profile extract_profile(const Tensor& clean, const Tensor& corrupted, std::size_t row) {
  require_2d(clean, "extract_profile");
  require_same_shape(clean.shape(), corrupted.shape(), "extract_profile");
  if (row >= clean.extent(0)) throw InvalidArgument("profile row out of range");
  const std::size_t w = clean.extent(1);
  Profile p{row, {}, {}};
  p.before.assign(clean.data() + row * w, clean.data() + (row + 1) * w);
  p.after.assign(corrupted.data() + row * w, corrupted.data() + (row + 1) * w);
  return p;
}

RgbImage render_profile(const Profile& profile, std::size_t height, std::size_t x_scale) {
  const std::size_t n = profile.before.size();
  RgbImage img;
  img.width = std::max<std::size_t>(1, n * x_scale);
  img.height = height;
  img.pixels.assign(img.width * img.height * 3, 255);
  if (n == 0 || height < 3) return img;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto* v : {&profile.before, &profile.after}) {
    for (double e : *v) {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
  }
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double margin = 0.05 * (hi - lo);
  lo -= margin;
  hi += margin;
  auto y_of = [&](double v) {
    const double t = (v - lo) / (hi - lo);
    return static_cast<std::size_t>(std::lround((1.0 - t) * static_cast<double>(height - 1)));
  };
  auto plot = [&](const std::vector<double>& values, std::array<std::uint8_t, 3> colour) {
    for (std::size_t x = 0; x < img.width; ++x) {
      const std::size_t i = std::min(n - 1, x / x_scale);
      const std::size_t j = std::min(n - 1, (x + 1) / x_scale);
      std::size_t y0 = y_of(values[i]), y1 = y_of(values[j]);
      if (y0 > y1) std::swap(y0, y1);
      for (std::size_t y = y0; y <= y1; ++y) {
        std::uint8_t* px = img.pixels.data() + 3 * (y * img.width + x);
        std::copy(colour.begin(), colour.end(), px);
      }
    }
  };
  plot(profile.before, {128, 128, 128});
  plot(profile.after, {0, 160, 0});
  return img;
}

PreviewFiles run_preview(const PreviewOptions& options) {
  if (options.output_prefix.empty()) throw ConfigError("preview needs an output prefix");
  const Tensor clean_full = read_ndt(options.clean);
  const Tensor corrupted_full = read_ndt(options.corrupted);
  require_same_shape(clean_full.shape(), corrupted_full.shape(), "preview");
  const Tensor label_full = options.label.empty()
                                ? label_map(clean_full, corrupted_full, options.sigma)
                                : read_ndt(options.label);
  require_same_shape(clean_full.shape(), label_full.shape(), "preview");
  if (clean_full.rank() == 3 && !options.slice) {
    throw InvalidArgument("preview of a 3-D volume needs a slice index");
  }
  const std::size_t slice = options.slice.value_or(0);
  const Tensor clean = take_slice(clean_full, options.slice_axis, slice);
  const Tensor corrupted = take_slice(corrupted_full, options.slice_axis, slice);
  const Tensor label = take_slice(label_full, options.slice_axis, slice);

  // Profile row: the logged anomaly centre if available, else the row with
  // the largest total change.
  std::optional<std::size_t> row;
  if (!options.records.empty()) {
    const std::string sample =
        options.sample.empty() ? options.clean.stem().string() : options.sample;
    std::ifstream in(options.records);
    if (!in) throw DataError("cannot read record log " + options.records.string());
    std::string line;
    while (std::getline(in, line) && !row) {
      if (line.empty()) continue;
      const nlohmann::json entry = nlohmann::json::parse(line, nullptr, false);
      if (entry.is_discarded()) throw DataError("record log line is not JSON");
      if (entry.value("sample", std::string()) != sample || !entry.contains("anomalies")) continue;
      const auto& anomalies = entry.at("anomalies");
      if (options.anomaly >= anomalies.size()) {
        throw InvalidArgument("record has no anomaly " + std::to_string(options.anomaly));
      }
      std::vector<double> centre = anomalies[options.anomaly].at("mask").at("center");
      if (clean_full.rank() == 3) centre.erase(centre.begin() + static_cast<std::ptrdiff_t>(options.slice_axis));
      row = static_cast<std::size_t>(
          std::clamp<long long>(std::llround(centre[0]), 0, static_cast<long long>(clean.extent(0)) - 1));
    }
  }
  if (!row) {
    const std::size_t w = clean.extent(1);
    double best = -1.0;
    for (std::size_t r = 0; r < clean.extent(0); ++r) {
      double total = 0.0;
      for (std::size_t c = 0; c < w; ++c) total += std::abs(corrupted[r * w + c] - clean[r * w + c]);
      if (total > best) {
        best = total;
        row = r;
      }
    }
  }

  PreviewFiles files;
  files.profile_row = *row;
  files.montage = options.output_prefix;
  files.montage += "_montage.pgm";
  files.profile_image = options.output_prefix;
  files.profile_image += "_profile.ppm";
  files.profile_csv = options.output_prefix;
  files.profile_csv += "_profile.csv";
  if (options.output_prefix.has_parent_path()) {
    fs::create_directories(options.output_prefix.parent_path());
  }

  write_file_atomic(files.montage, encode_pgm(make_montage(clean, corrupted, label)));
  const Profile profile = extract_profile(clean, corrupted, *row);
  write_file_atomic(files.profile_image, encode_ppm(render_profile(profile)));
  std::ostringstream csv;
  csv.precision(9);
  csv << "index,before,after\n";
  for (std::size_t i = 0; i < profile.before.size(); ++i) {
    csv << i << ',' << profile.before[i] << ',' << profile.after[i] << '\n';
  }
  write_file_atomic(files.profile_csv, csv.str());
  return files;
}

}  // namespace synthanom
