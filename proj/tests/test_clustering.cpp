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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <cmath>
#include <set>

#include "vanoma/clustering.hpp"

using namespace vanoma;

namespace {

BeamAssignment random_assignment(Rng &rng, int users, int beams)
{
    BeamAssignment a;
    std::uniform_int_distribution<int> b(0, beams - 1);
    for (int u = 0; u < users; ++u)
        a[u] = b(rng);
    return a;
}

// Structural invariants every schedule must satisfy.
void check_schedule(const Schedule &s, const BeamAssignment &a, int n_max)
{
    std::map<int, int> histogram;
    for (const auto &[u, b] : a)
        ++histogram[b];

    std::multiset<int> seen;
    std::map<int, int> clusters_per_beam;
    std::size_t expected_depth = 0;
    for (std::size_t slot = 0; slot < s.slots.size(); ++slot)
    {
        std::set<int> beams_in_slot;
        for (const auto &c : s.slots[slot])
        {
            CHECK(c.slot_index == static_cast<int>(slot));
            CHECK(!c.users.empty());
            CHECK(static_cast<int>(c.users.size()) <= n_max);
            CHECK(beams_in_slot.insert(c.beam_index).second);
            // Slots of one beam are consecutive from 0.
            CHECK(clusters_per_beam[c.beam_index] == static_cast<int>(slot));
            ++clusters_per_beam[c.beam_index];
            for (int u : c.users)
            {
                seen.insert(u);
                CHECK(a.at(u) == c.beam_index);
            }
        }
    }
    CHECK(seen.size() == a.size());
    CHECK(std::set<int>(seen.begin(), seen.end()).size() == a.size());
    for (const auto &[b, n] : histogram)
    {
        const int want = (n + n_max - 1) / n_max;
        CHECK(clusters_per_beam[b] == want);
        expected_depth = std::max(expected_depth, static_cast<std::size_t>(want));
    }
    CHECK(clusters_per_beam.size() == histogram.size());
    CHECK(s.depth() == expected_depth);
}

UserChannel on_beam(int id, const Codebook &cb, int beam, double amplitude)
{
    UserChannel ch;
    ch.user_id = id;
    ch.path_gain = amplitude;
    ch.coefficients = cb.beam(beam);
    for (auto &c : ch.coefficients)
        c *= amplitude;
    return ch;
}

} // namespace

TEST_CASE("noma_bb - worked examples")
{
    ClusteringConfig cfg;
    cfg.n_max = 3;

    SECTION("seven users on one beam split 3/3/1")
    {
        BeamAssignment a;
        for (int u : {12, 3, 8, 1, 20, 5, 9})
            a[u] = 10;
        const Schedule s = noma_bb(a, cfg, 64);
        REQUIRE(s.depth() == 3);
        CHECK(s.slots[0][0].users == std::vector<int>{1, 3, 5});
        CHECK(s.slots[1][0].users == std::vector<int>{8, 9, 12});
        CHECK(s.slots[2][0].users == std::vector<int>{20});
        for (int k = 0; k < 3; ++k)
        {
            CHECK(s.slots[static_cast<std::size_t>(k)].size() == 1);
            CHECK(s.slots[static_cast<std::size_t>(k)][0].beam_index == 10);
        }
    }

    SECTION("balanced split keeps the cluster count")
    {
        BeamAssignment a;
        for (int u = 0; u < 7; ++u)
            a[u] = 2;
        cfg.split_policy = SplitPolicy::balanced;
        const Schedule s = noma_bb(a, cfg, 4);
        REQUIRE(s.depth() == 3);
        CHECK(s.slots[0][0].users.size() == 3);
        CHECK(s.slots[1][0].users.size() == 2);
        CHECK(s.slots[2][0].users.size() == 2);
    }

    SECTION("empty beams form no cluster, distinct beams give singletons")
    {
        BeamAssignment a{{0, 5}, {1, 9}, {2, 63}};
        const Schedule s = noma_bb(a, cfg, 64);
        REQUIRE(s.depth() == 1);
        CHECK(s.cluster_count() == 3);
        for (const auto &c : s.slots[0])
            CHECK(c.users.size() == 1);
        CHECK(noma_bb({}, cfg, 64).cluster_count() == 0);
    }

    CHECK_THROWS_AS(noma_bb({{0, 64}}, cfg, 64), std::domain_error);
    CHECK_THROWS_AS(noma_bb({{0, -1}}, cfg, 64), std::domain_error);
    cfg.n_max = 0;
    CHECK_THROWS_AS(noma_bb({{0, 1}}, cfg, 64), std::domain_error);
}

TEST_CASE("noma_bb - count law on random assignments")
{
    Rng rng(2024);
    SECTION("200 users, 64 beams, n_max 4")
    {
        const auto a = random_assignment(rng, 200, 64);
        ClusteringConfig cfg;
        const Schedule s = noma_bb(a, cfg, 64);
        std::map<int, int> hist;
        for (const auto &[u, b] : a)
            ++hist[b];
        std::size_t total = 0;
        for (const auto &[b, n] : hist)
            total += static_cast<std::size_t>((n + 3) / 4);
        CHECK(s.cluster_count() == total);
        check_schedule(s, a, 4);
        CHECK(noma_bb(a, cfg, 64) == s);
    }

    SECTION("mixed sizes and both split policies")
    {
        for (int trial = 0; trial < 50; ++trial)
        {
            const int users = std::uniform_int_distribution<int>(1, 300)(rng);
            const int beams = std::uniform_int_distribution<int>(1, 64)(rng);
            ClusteringConfig cfg;
            cfg.n_max = std::uniform_int_distribution<int>(1, 8)(rng);
            cfg.split_policy = trial % 2 ? SplitPolicy::balanced : SplitPolicy::greedy;
            const auto a = random_assignment(rng, users, beams);
            check_schedule(noma_bb(a, cfg, beams), a, cfg.n_max);
        }
    }
}

TEST_CASE("order_users_sic")
{
    const Codebook cb = generate_dft_codebook(ArrayGeometry(64), 64);

    SECTION("strong user first")
    {
        ChannelMap ch{{4, on_beam(4, cb, 7, 0.5)}, {11, on_beam(11, cb, 7, 1.0)}};
        const Cluster c = order_users_sic({7, {4, 11}, 0}, ch, cb, SicOrdering::by_channel_gain);
        CHECK(c.users == std::vector<int>{11, 4});
    }

    SECTION("arbitrary mode sorts by id and needs no channels")
    {
        const Cluster c = order_users_sic({3, {9, 2, 5}, 0}, {}, cb, SicOrdering::arbitrary_by_id);
        CHECK(c.users == std::vector<int>{2, 5, 9});
    }

    SECTION("matches an independent sort and is scale invariant")
    {
        Rng rng(5);
        std::uniform_real_distribution<double> amp(0.1, 2.0);
        std::uniform_int_distribution<int> beam(0, 63);
        for (int t = 0; t < 30; ++t)
        {
            ChannelMap ch, scaled;
            Cluster c{beam(rng), {}, 0};
            for (int u = 0; u < 6; ++u)
            {
                const int id = 10 * u + t % 7;
                const double a = amp(rng);
                // Off-grid directions keep every gain well above rounding noise.
                const double theta = std::asin(std::uniform_real_distribution<double>(-0.9, 0.9)(rng));
                UserChannel h;
                h.user_id = id;
                h.path_gain = a;
                h.coefficients = steering_vector(ArrayGeometry(64), theta);
                UserChannel h3 = h;
                for (auto &x : h.coefficients)
                    x *= a;
                for (auto &x : h3.coefficients)
                    x *= 3.0 * a;
                ch[id] = h;
                scaled[id] = h3;
                c.users.push_back(id);
            }
            std::vector<std::pair<double, int>> ref;
            for (int id : c.users)
            {
                const auto g = std::norm(inner_product(ch[id].coefficients, cb.beam(c.beam_index)));
                ref.emplace_back(-g, id);
            }
            std::sort(ref.begin(), ref.end());
            std::vector<int> want;
            for (const auto &[g, id] : ref)
                want.push_back(id);
            const Cluster ordered = order_users_sic(c, ch, cb, SicOrdering::by_channel_gain);
            CHECK(ordered.users == want);
            CHECK(order_users_sic(c, scaled, cb, SicOrdering::by_channel_gain).users == ordered.users);
        }
    }

    CHECK_THROWS_AS(order_users_sic({0, {1}, 0}, {}, cb, SicOrdering::by_channel_gain), std::out_of_range);
}
