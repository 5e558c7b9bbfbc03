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

#include "vanoma/noma_phy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vanoma {

void RadioConfig::validate() const
{
    if (!(tx_power >= 0.0) || !std::isfinite(tx_power))
        throw std::domain_error("RadioConfig: tx_power must be finite and >= 0");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        throw std::domain_error("RadioConfig: noise_power must be finite and > 0");
    if (!(power_split_ratio > 0.0 && power_split_ratio < 1.0))
        throw std::domain_error("RadioConfig: power_split_ratio must lie in (0, 1)");
}

PowerAllocation allocate_power(const Cluster &cluster, const RadioConfig &config)
{
    config.validate();
    PowerAllocation out;
    out.tx_power = config.tx_power;
    const auto k = static_cast<int>(cluster.users.size());
    if (k == 1)
    {
        out.fractions[cluster.users.front()] = 1.0;
        return out;
    }
    const double a = config.power_split_ratio;
    const double norm = (1.0 - a) / (1.0 - std::pow(a, k));
    for (int i = 0; i < k; ++i)
        out.fractions[cluster.users[static_cast<std::size_t>(i)]] = std::pow(a, k - 1 - i) * norm;
    return out;
}

namespace {

double fraction_of(std::span<const PowerAllocation> allocations, int user, double &tx_power)
{
    for (const auto &a : allocations)
    {
        const auto it = a.fractions.find(user);
        if (it != a.fractions.end())
        {
            tx_power = a.tx_power;
            return it->second;
        }
    }
    throw std::domain_error("compute_sinr: no power allocation for user " + std::to_string(user));
}

} // namespace

LinkMetrics compute_sinr(std::span<const Cluster> slot, const ChannelMap &channels, const Codebook &codebook,
                         std::span<const PowerAllocation> allocations, const RadioConfig &config)
{
    config.validate();
    LinkMetrics out;
    for (const auto &cluster : slot)
    {
        const CVec &beam = codebook.beam(cluster.beam_index);
        for (std::size_t i = 0; i < cluster.users.size(); ++i)
        {
            const int u = cluster.users[i];
            const auto it = channels.find(u);
            if (it == channels.end())
                throw std::out_of_range("compute_sinr: no channel for user " + std::to_string(u));
            const CVec &h = it->second.coefficients;
            const double g = effective_gain(h, beam);

            double p_tx = 0.0;
            const double signal = fraction_of(allocations, u, p_tx) * p_tx * g;

            double intra = 0.0;
            for (std::size_t j = 0; j < i; ++j)
            {
                double pj = 0.0;
                intra += fraction_of(allocations, cluster.users[j], pj) * pj * g;
            }

            double inter = 0.0;
            for (const auto &other : slot)
                if (other.beam_index != cluster.beam_index)
                    inter += config.tx_power * effective_gain(h, codebook.beam(other.beam_index));

            LinkMetric m;
            m.sinr = signal / (intra + inter + config.noise_power);
            m.rate = std::log2(1.0 + m.sinr);
            out[u] = m;
        }
    }
    return out;
}

SystemMetrics spectral_efficiency(const Schedule &schedule, std::span<const LinkMetrics> per_slot)
{
    SystemMetrics out;
    if (schedule.slots.empty())
        return out;
    if (per_slot.size() != schedule.slots.size())
        throw std::domain_error("spectral_efficiency: metrics missing for some slots");

    double total = 0.0;
    for (std::size_t s = 0; s < schedule.slots.size(); ++s)
    {
        double sum = 0.0;
        for (const auto &c : schedule.slots[s])
            for (int u : c.users)
            {
                const auto it = per_slot[s].find(u);
                if (it == per_slot[s].end())
                    throw std::domain_error("spectral_efficiency: no metrics for user " + std::to_string(u));
                sum += it->second.rate;
                out.user_rate[u] = it->second.rate;
            }
        out.slot_sum_se.push_back(sum);
        total += sum;
    }
    out.average_se = total / static_cast<double>(schedule.slots.size());
    return out;
}

SystemMetrics evaluate_schedule(const Schedule &schedule, const ChannelMap &channels, const Codebook &codebook,
                                const RadioConfig &config)
{
    std::vector<LinkMetrics> per_slot;
    per_slot.reserve(schedule.slots.size());
    for (const auto &slot : schedule.slots)
    {
        std::vector<PowerAllocation> alloc;
        alloc.reserve(slot.size());
        for (const auto &c : slot)
            alloc.push_back(allocate_power(c, config));
        per_slot.push_back(compute_sinr(slot, channels, codebook, alloc, config));
    }
    return spectral_efficiency(schedule, per_slot);
}

} // namespace vanoma
