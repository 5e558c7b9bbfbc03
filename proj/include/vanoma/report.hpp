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

#include <iosfwd>
#include <span>
#include <string>

#include "vanoma/pipeline.hpp"

namespace vanoma {

inline constexpr const char *kResultCsvHeader =
    "scheme,seed,sweep_var,sweep_value,n_train,avg_se_bps_hz,beam_acc,clusters,slots";

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

/// One row per trial, sorted by (scheme, seed, sweep value, n_train).
void write_results_csv(std::ostream &out, std::span<const TrialResult> results);

/// Per-slot sum spectral efficiency of every trial (slot index runs across frames).
void write_slot_csv(std::ostream &out, std::span<const TrialResult> results);

void write_summary_csv(std::ostream &out, std::span<const SchemeSummary> summary);

} // namespace vanoma
