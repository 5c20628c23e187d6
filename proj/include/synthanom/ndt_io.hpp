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


#ifndef SYNTHANOM_NDT_IO_HPP_
#define SYNTHANOM_NDT_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "synthanom/tensor.hpp"

// NDT tensor files:
//   "NDTENSOR" | version 0x01 | dtype 0x01 (float32 LE) | ndim (u8)
//   | ndim x u32 LE extents | row-major float32 LE payload
namespace synthanom {

inline constexpr std::uint8_t kNdtVersion = 1;
inline constexpr std::uint8_t kNdtFloat32 = 1;

std::vector<std::uint8_t> encode_ndt(const Tensor& x);
Tensor decode_ndt(std::span<const std::uint8_t> bytes);

Tensor read_ndt(const std::filesystem::path& path);
void write_ndt(const std::filesystem::path& path, const Tensor& x);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

// Sorted list of *.ndt files directly inside `dir`.
std::vector<std::filesystem::path> list_ndt_files(const std::filesystem::path& dir);

}  // namespace synthanom

#endif  // SYNTHANOM_NDT_IO_HPP_
