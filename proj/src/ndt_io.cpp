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


#include "synthanom/ndt_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

namespace synthanom {
namespace {

constexpr char kMagic[8] = {'N', 'D', 'T', 'E', 'N', 'S', 'O', 'R'};
constexpr std::size_t kFixedHeader = 8 + 3;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

std::vector<std::uint8_t> encode_ndt(const Tensor& x) {
  if (x.rank() > 255) throw InvalidArgument("NDT supports at most 255 dimensions");
  std::vector<std::uint8_t> out(kFixedHeader + 4 * x.rank() + 4 * x.size());
  out.resize(0);
  for (char c : kMagic) out.push_back(static_cast<std::uint8_t>(c));
  out.push_back(kNdtVersion);
  out.push_back(kNdtFloat32);
  out.push_back(static_cast<std::uint8_t>(x.rank()));
  for (std::size_t e : x.shape()) {
    if (e > 0xffffffffULL) throw InvalidArgument("NDT extent exceeds 32 bits");
    put_u32(out, static_cast<std::uint32_t>(e));
  }
  for (double v : x.values()) {
    const float f = static_cast<float>(v);
    if (!std::isfinite(f)) throw InvalidArgument("NDT payload must be finite");
    put_u32(out, std::bit_cast<std::uint32_t>(f));
  }
  return out;
}

Tensor decode_ndt(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kFixedHeader || std::memcmp(bytes.data(), kMagic, 8) != 0) {
    throw DataError("not an NDT file (bad magic)");
  }
  if (bytes[8] != kNdtVersion) {
    throw DataError("unsupported NDT version " + std::to_string(bytes[8]));
  }
  if (bytes[9] != kNdtFloat32) throw DataError("unsupported NDT dtype " + std::to_string(bytes[9]));
  const std::size_t ndim = bytes[10];
  if (ndim == 0) throw DataError("NDT file declares zero dimensions");
  if (bytes.size() < kFixedHeader + 4 * ndim) throw DataError("truncated NDT header");
  Shape shape(ndim);
  std::size_t count = 1;
  for (std::size_t d = 0; d < ndim; ++d) {
    shape[d] = get_u32(bytes.data() + kFixedHeader + 4 * d);
    count *= shape[d];
  }
  const std::size_t payload = bytes.size() - kFixedHeader - 4 * ndim;
  if (payload != 4 * count) {
    throw DataError("NDT payload holds " + std::to_string(payload) + " bytes, header declares " +
                    std::to_string(count) + " float32 elements");
  }
  std::vector<double> data(count);
  const std::uint8_t* p = bytes.data() + kFixedHeader + 4 * ndim;
  for (std::size_t i = 0; i < count; ++i) {
    const float f = std::bit_cast<float>(get_u32(p + 4 * i));
    if (!std::isfinite(f)) throw DataError("NDT payload contains non-finite values");
    data[i] = f;
  }
  return Tensor(std::move(shape), std::move(data));
}

Tensor read_ndt(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_ndt(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_ndt(const std::filesystem::path& path, const Tensor& x) {
  write_file_atomic(path, encode_ndt(x));
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::span<const std::uint8_t>(
                              reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<std::filesystem::path> list_ndt_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw DataError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ndt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace synthanom
