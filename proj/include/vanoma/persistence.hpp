// SPDX-License-Identifier: Apache-2.0
//
// vanoma - vision-assisted user clustering for mmWave-NOMA
// Copyright (C) 2026 The vanoma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "vanoma/predictor.hpp"
#include "vanoma/scene.hpp"

namespace vanoma {

class FormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Dataset file, little-endian:
//   "VNDSET\0\0" | u32 version | u32 B | u32 W | u32 H | u64 N
//   N x ( i32 user_id | f64 x | f64 y | u32 label | W*H x f32 )
inline constexpr char kDatasetMagic[8] = {'V', 'N', 'D', 'S', 'E', 'T', '\0', '\0'};
inline constexpr std::uint32_t kDatasetVersion = 1;

// Model file, little-endian:
//   "VNMODEL\0" | u32 version | u32 input | u32 hidden_count | hidden_count x u32 | u32 output
//   then every parameter as f64 in flat layer order (weights row-major, bias)
inline constexpr char kModelMagic[8] = {'V', 'N', 'M', 'O', 'D', 'E', 'L', '\0'};
inline constexpr std::uint32_t kModelVersion = 1;

struct Dataset
{
    int beam_count = 0;
    int width = 0;
    int height = 0;
    std::vector<LabeledSample> samples;
};

void write_dataset(std::ostream &out, std::span<const LabeledSample> samples, int beam_count);
Dataset read_dataset(std::istream &in);
void save_dataset(const std::filesystem::path &path, std::span<const LabeledSample> samples, int beam_count);
Dataset load_dataset(const std::filesystem::path &path);

void write_model(std::ostream &out, const ClassifierParameters &params);
ClassifierParameters read_model(std::istream &in);
void save_model(const std::filesystem::path &path, const ClassifierParameters &params);
ClassifierParameters load_model(const std::filesystem::path &path);

} // namespace vanoma
