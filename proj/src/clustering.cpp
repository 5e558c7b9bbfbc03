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

#include "vanoma/clustering.hpp"

#include <algorithm>
#include <stdexcept>

namespace vanoma {

std::string to_string(SicOrdering o)
{
    return o == SicOrdering::by_channel_gain ? "by_channel_gain" : "arbitrary_by_id";
}

SicOrdering sic_ordering_from_string(const std::string &s)
{
    if (s == "by_channel_gain")
        return SicOrdering::by_channel_gain;
    if (s == "arbitrary_by_id")
        return SicOrdering::arbitrary_by_id;
    throw std::invalid_argument("unknown SIC ordering '" + s + "'");
}

std::string to_string(SplitPolicy p)
{
    return p == SplitPolicy::greedy ? "greedy" : "balanced";
}

SplitPolicy split_policy_from_string(const std::string &s)
{
    if (s == "greedy")
        return SplitPolicy::greedy;
    if (s == "balanced")
        return SplitPolicy::balanced;
    throw std::invalid_argument("unknown split policy '" + s + "'");
}

void ClusteringConfig::validate() const
{
    if (n_max < 1)
        throw std::domain_error("ClusteringConfig: n_max must be >= 1");
}

std::size_t Schedule::cluster_count() const
{
    std::size_t n = 0;
    for (const auto &s : slots)
        n += s.size();
    return n;
}

Schedule noma_bb(const BeamAssignment &assignment, const ClusteringConfig &config, int beam_count)
{
    config.validate();
    if (beam_count < 1)
        throw std::domain_error("noma_bb: beam_count must be >= 1");

    // std::map iterates user ids in ascending order, so members stay sorted.
    std::vector<std::vector<int>> by_beam(static_cast<std::size_t>(beam_count));
    for (const auto &[user, beam] : assignment)
    {
        if (beam < 0 || beam >= beam_count)
            throw std::domain_error("noma_bb: user " + std::to_string(user) + " assigned to invalid beam " +
                                    std::to_string(beam));
        by_beam[static_cast<std::size_t>(beam)].push_back(user);
    }

    const auto n_max = static_cast<std::size_t>(config.n_max);
    Schedule schedule;
    for (int b = 0; b < beam_count; ++b)
    {
        const auto &members = by_beam[static_cast<std::size_t>(b)];
        const std::size_t n = members.size();
        if (n == 0)
            continue;
        const std::size_t k_clusters = (n + n_max - 1) / n_max;
        if (schedule.slots.size() < k_clusters)
            schedule.slots.resize(k_clusters);

        std::size_t pos = 0;
        for (std::size_t k = 0; k < k_clusters; ++k)
        {
            std::size_t size = std::min(n_max, n - pos);
            if (config.split_policy == SplitPolicy::balanced)
                size = n / k_clusters + (k < n % k_clusters ? 1 : 0);
            Cluster c;
            c.beam_index = b;
            c.slot_index = static_cast<int>(k);
            c.users.assign(members.begin() + static_cast<std::ptrdiff_t>(pos),
                           members.begin() + static_cast<std::ptrdiff_t>(pos + size));
            pos += size;
            schedule.slots[k].push_back(std::move(c));
        }
    }
    return schedule;
}

Cluster order_users_sic(Cluster cluster, const ChannelMap &channels, const Codebook &codebook, SicOrdering mode)
{
    if (mode == SicOrdering::arbitrary_by_id)
    {
        std::sort(cluster.users.begin(), cluster.users.end());
        return cluster;
    }

    const CVec &beam = codebook.beam(cluster.beam_index);
    std::vector<std::pair<double, int>> keyed;
    keyed.reserve(cluster.users.size());
    for (int u : cluster.users)
    {
        const auto it = channels.find(u);
        if (it == channels.end())
            throw std::out_of_range("order_users_sic: no channel for user " + std::to_string(u));
        keyed.emplace_back(effective_gain(it->second.coefficients, beam), u);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first)
            return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t i = 0; i < keyed.size(); ++i)
        cluster.users[i] = keyed[i].second;
    return cluster;
}

Schedule order_schedule(Schedule schedule, const ChannelMap &channels, const Codebook &codebook, SicOrdering mode)
{
    for (auto &slot : schedule.slots)
        for (auto &c : slot)
            c = order_users_sic(std::move(c), channels, codebook, mode);
    return schedule;
}

} // namespace vanoma
