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
#include <string>
#include <vector>

#include "vanoma/channel.hpp"

namespace vanoma {

/// user_id -> best beam index.
using BeamAssignment = std::map<int, int>;

enum class SicOrdering
{
    by_channel_gain,
    arbitrary_by_id
};

enum class SplitPolicy
{
    greedy,  // n_max, ..., n_max, remainder
    balanced // sizes differ by at most one
};

std::string to_string(SicOrdering o);
SicOrdering sic_ordering_from_string(const std::string &s);
std::string to_string(SplitPolicy p);
SplitPolicy split_policy_from_string(const std::string &s);

struct ClusteringConfig
{
    int n_max = 4;
    SicOrdering sic_ordering = SicOrdering::by_channel_gain;
    SplitPolicy split_policy = SplitPolicy::greedy;

    void validate() const;
};

/// Users sharing one beam in one time slot, listed in SIC decode order
/// (strongest first) once order_users_sic has run.
struct Cluster
{
    int beam_index = 0;
    std::vector<int> users;
    int slot_index = 0;
    bool operator==(const Cluster &) const = default;
};

struct Schedule
{
    std::vector<std::vector<Cluster>> slots; // clusters within a slot sorted by beam

    std::size_t cluster_count() const;
    std::size_t depth() const { return slots.size(); }
    bool operator==(const Schedule &) const = default;
};

/// NOMA best-beam clustering. For each beam with n > 0 users produce
/// ceil(n / n_max) clusters; the k-th cluster of every beam lands in slot k.
/// Members are in ascending user_id order.
Schedule noma_bb(const BeamAssignment &assignment, const ClusteringConfig &config, int beam_count);

Cluster order_users_sic(Cluster cluster, const ChannelMap &channels, const Codebook &codebook, SicOrdering mode);

/// Applies order_users_sic to every cluster of the schedule.
Schedule order_schedule(Schedule schedule, const ChannelMap &channels, const Codebook &codebook, SicOrdering mode);

} // namespace vanoma
