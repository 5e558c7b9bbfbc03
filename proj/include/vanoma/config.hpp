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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "vanoma/pipeline.hpp"

namespace vanoma {

struct ExperimentConfig
{
    SimulationConfig sim;
    std::vector<std::uint64_t> seeds = default_seeds();
    std::vector<int> user_counts{100};
    std::vector<int> n_train{100, 500};
    std::vector<int> staleness_sweep{0, 2, 8};
    int eval_frames = 1;
    std::vector<Scheme> compare_schemes{Scheme::csi_fresh, Scheme::vision, Scheme::oracle_vision};
    std::vector<Scheme> stale_schemes{Scheme::csi_fresh, Scheme::csi_stale, Scheme::vision};
    std::string output_dir = "out";

    void validate() const;

    static std::vector<std::uint64_t> default_seeds();
};

/// Carries the offending line (0 when the problem is not tied to one line) and key.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(int line, std::string key, const std::string &message);
    int line() const { return line_; }
    const std::string &key() const { return key_; }

private:
    int line_;
    std::string key_;
};

/// INI-style text: `[section]` headers, `key = value` lines, `#` or `;` comments.
/// Unknown sections or keys are rejected; omitted keys keep their defaults.
ExperimentConfig parse_config_text(const std::string &text);
ExperimentConfig parse_config(const std::filesystem::path &path);

/// Every key in canonical order; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig &config);

/// "1,2,5-8" -> {1,2,5,6,7,8}
std::vector<std::uint64_t> parse_seed_list(const std::string &text);

} // namespace vanoma
