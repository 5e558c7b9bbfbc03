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

#include <cmath>

#include "vanoma/noma_phy.hpp"

using namespace vanoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

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

const Codebook &codebook()
{
    static const Codebook cb = generate_dft_codebook(ArrayGeometry(64), 64);
    return cb;
}

} // namespace

TEST_CASE("allocate_power")
{
    RadioConfig cfg;
    cfg.power_split_ratio = 0.25;
    CHECK(allocate_power({0, {4}, 0}, cfg).fractions.at(4) == 1.0);

    const auto two = allocate_power({0, {1, 2}, 0}, cfg);
    CHECK_THAT(two.fractions.at(1), WithinAbs(0.2, 1e-15));
    CHECK_THAT(two.fractions.at(2), WithinAbs(0.8, 1e-15));

    for (double alpha : {0.05, 0.25, 0.5, 0.9})
        for (int k = 1; k <= 8; ++k)
        {
            cfg.power_split_ratio = alpha;
            Cluster c{0, {}, 0};
            for (int u = 0; u < k; ++u)
                c.users.push_back(u);
            const auto p = allocate_power(c, cfg);
            double sum = 0.0;
            for (int u = 0; u < k; ++u)
            {
                sum += p.fractions.at(u);
                CHECK(p.fractions.at(u) > 0.0);
                if (u + 1 < k)
                    CHECK(p.fractions.at(u) <= p.fractions.at(u + 1));
            }
            CHECK_THAT(sum, WithinAbs(1.0, 1e-12));
        }

    cfg.power_split_ratio = 1.0;
    CHECK_THROWS_AS(allocate_power({0, {1, 2}, 0}, cfg), std::domain_error);
}

TEST_CASE("compute_sinr and spectral_efficiency - worked examples")
{
    const Codebook &cb = codebook();
    RadioConfig cfg;
    cfg.tx_power = 1.0;
    cfg.noise_power = 0.1;
    cfg.power_split_ratio = 0.25;

    SECTION("singleton, sole beam")
    {
        ChannelMap ch{{3, on_beam(3, cb, 20, 0.7)}};
        const std::vector<Cluster> slot{{20, {3}, 0}};
        const std::vector<PowerAllocation> alloc{allocate_power(slot[0], cfg)};
        const auto m = compute_sinr(slot, ch, cb, alloc, cfg);
        CHECK_THAT(m.at(3).sinr, WithinRel(0.49 / 0.1, 1e-12));
    }

    SECTION("two-user cluster")
    {
        ChannelMap ch{{1, on_beam(1, cb, 30, 1.0)}, {2, on_beam(2, cb, 30, 0.5)}};
        Schedule s;
        s.slots = {{Cluster{30, {1, 2}, 0}}};
        s = order_schedule(s, ch, cb, SicOrdering::by_channel_gain);
        REQUIRE(s.slots[0][0].users == std::vector<int>{1, 2});
        const std::vector<PowerAllocation> alloc{allocate_power(s.slots[0][0], cfg)};
        const auto m = compute_sinr(s.slots[0], ch, cb, alloc, cfg);
        CHECK_THAT(m.at(1).sinr, WithinAbs(2.0, 1e-12));
        CHECK_THAT(m.at(2).sinr, WithinAbs(4.0 / 3.0, 1e-12));

        const std::vector<LinkMetrics> per_slot{m};
        const auto se = spectral_efficiency(s, per_slot);
        const double want = std::log2(3.0) + std::log2(7.0 / 3.0);
        CHECK_THAT(se.slot_sum_se.at(0), WithinAbs(want, 1e-12));
        CHECK_THAT(se.average_se, WithinAbs(want, 1e-12));
        CHECK_THAT(se.average_se, WithinAbs(2.807, 5e-4));
    }

    SECTION("orthogonal on-grid beams do not interfere")
    {
        ChannelMap ch{{1, on_beam(1, cb, 10, 1.0)}, {2, on_beam(2, cb, 10, 0.5)}, {3, on_beam(3, cb, 40, 0.8)}};
        const std::vector<Cluster> alone{{10, {1, 2}, 0}};
        const std::vector<Cluster> both{{10, {1, 2}, 0}, {40, {3}, 0}};
        std::vector<PowerAllocation> a1{allocate_power(alone[0], cfg)};
        std::vector<PowerAllocation> a2{allocate_power(both[0], cfg), allocate_power(both[1], cfg)};
        const auto m1 = compute_sinr(alone, ch, cb, a1, cfg);
        const auto m2 = compute_sinr(both, ch, cb, a2, cfg);
        for (int u : {1, 2})
            CHECK_THAT(m2.at(u).rate, WithinRel(m1.at(u).rate, 1e-9));
        CHECK(effective_gain(ch.at(1).coefficients, cb.beam(40)) < 1e-10);
    }

    SECTION("missing allocation")
    {
        ChannelMap ch{{1, on_beam(1, cb, 10, 1.0)}};
        const std::vector<Cluster> slot{{10, {1}, 0}};
        CHECK_THROWS_AS(compute_sinr(slot, ch, cb, {}, cfg), std::domain_error);
    }
}

TEST_CASE("spectral efficiency edge cases and monotonicity")
{
    const Codebook &cb = codebook();
    Rng rng(99);
    std::uniform_int_distribution<int> beam(0, 63);
    std::uniform_real_distribution<double> amp(0.2, 1.5);

    ChannelMap ch;
    BeamAssignment a;
    for (int u = 0; u < 40; ++u)
    {
        // Slightly off-grid users so inter-beam leakage is nonzero.
        UserChannel c;
        c.user_id = u;
        c.aoa = std::asin(std::uniform_real_distribution<double>(-0.95, 0.95)(rng));
        c.path_gain = amp(rng);
        c.coefficients = steering_vector(ArrayGeometry(64), c.aoa);
        for (auto &x : c.coefficients)
            x *= c.path_gain;
        a[u] = best_beam_csi(c, cb);
        ch[u] = c;
    }
    ClusteringConfig ccfg;
    const Schedule s = order_schedule(noma_bb(a, ccfg, 64), ch, cb, SicOrdering::by_channel_gain);

    RadioConfig cfg;
    SystemMetrics prev = evaluate_schedule(s, ch, cb, cfg);
    for (double noise : {0.02, 0.1, 1.0, 10.0})
    {
        cfg.noise_power = noise;
        const SystemMetrics m = evaluate_schedule(s, ch, cb, cfg);
        for (const auto &[u, r] : m.user_rate)
            CHECK(r <= prev.user_rate.at(u));
        prev = m;
    }

    cfg.tx_power = 0.0;
    for (const auto &[u, r] : evaluate_schedule(s, ch, cb, cfg).user_rate)
        CHECK(r == 0.0);

    const SystemMetrics empty = spectral_efficiency(Schedule{}, {});
    CHECK(empty.average_se == 0.0);
    CHECK(empty.slot_sum_se.empty());
}
