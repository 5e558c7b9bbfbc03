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

#include <map>
#include <span>
#include <vector>

#include "vanoma/channel.hpp"
#include "vanoma/clustering.hpp"

namespace vanoma {

struct RadioConfig
{
    double tx_power = 1.0;           // per beam, watts
    double noise_power = 0.01;       // watts
    double power_split_ratio = 0.25; // alpha in (0, 1)

    void validate() const;
};

/// Per-user fraction of the cluster's transmit power.
struct PowerAllocation
{
    std::map<int, double> fractions;
    double tx_power = 0.0;
};

struct LinkMetric
{
    double sinr = 0.0;
    double rate = 0.0; // log2(1 + sinr), bits/s/Hz
};

using LinkMetrics = std::map<int, LinkMetric>;

struct SystemMetrics
{
    std::vector<double> slot_sum_se;
    double average_se = 0.0;
    std::map<int, double> user_rate;

    bool operator==(const SystemMetrics &) const = default;
};

/// Geometric split over the SIC order: the user at decode position i of K
/// (i = 0 strongest) receives alpha^(K-1-i) (1 - alpha) / (1 - alpha^K).
PowerAllocation allocate_power(const Cluster &cluster, const RadioConfig &config);

/// SINR of every user in one slot under perfect SIC. A user at position i of
/// its cluster cancels the users after it (weaker, more power) and sees the
/// users before it as interference through its own effective gain. Every other
/// beam in the slot adds tx_power * |h^H f_b'|^2.
LinkMetrics compute_sinr(std::span<const Cluster> slot, const ChannelMap &channels, const Codebook &codebook,
                         std::span<const PowerAllocation> allocations, const RadioConfig &config);

/// Aggregates per-slot metrics: slot sum of rates and their mean over slots.
SystemMetrics spectral_efficiency(const Schedule &schedule, std::span<const LinkMetrics> per_slot);

/// allocate_power + compute_sinr + spectral_efficiency over a whole schedule.
SystemMetrics evaluate_schedule(const Schedule &schedule, const ChannelMap &channels, const Codebook &codebook,
                                const RadioConfig &config);

} // namespace vanoma
