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
#include <cmath>
#include <set>

#include "vanoma/scene.hpp"

using namespace vanoma;

namespace {

RenderConfig clean_render()
{
    RenderConfig c;
    c.pixel_noise_sigma = 0.0;
    c.position_jitter_m = 0.0;
    return c;
}

std::pair<int, int> brightest(const SceneImage &img)
{
    const auto it = std::max_element(img.pixels.begin(), img.pixels.end());
    const auto k = static_cast<int>(std::distance(img.pixels.begin(), it));
    return {k % img.width, k / img.width};
}

} // namespace

TEST_CASE("generate_scene")
{
    Rng rng(1);
    SECTION("single user grid sits at the room center")
    {
        const Scene s = generate_scene(10.0, 10.0, {5.0, 0.0}, 1, Placement::grid, rng);
        REQUIRE(s.users.size() == 1);
        CHECK(s.users[0].position == Point{5.0, 5.0});
    }

    SECTION("16 users on a 4x4 grid with 2.5 m pitch")
    {
        const Scene s = generate_scene(10.0, 10.0, {5.0, 0.0}, 16, Placement::grid, rng);
        REQUIRE(s.users.size() == 16);
        std::set<std::pair<double, double>> seen;
        for (const auto &u : s.users)
        {
            seen.insert({u.position.x, u.position.y});
            // Coordinates on the 1.25 + 2.5 k lattice.
            const double kx = (u.position.x - 1.25) / 2.5;
            const double ky = (u.position.y - 1.25) / 2.5;
            CHECK(std::abs(kx - std::round(kx)) < 1e-12);
            CHECK(std::abs(ky - std::round(ky)) < 1e-12);
        }
        CHECK(seen.size() == 16);
    }

    SECTION("uniform placement is deterministic and inside the room")
    {
        Rng a(42), b(42);
        const Scene s1 = generate_scene(10.0, 8.0, {5.0, 0.0}, 50, Placement::uniform_random, a);
        const Scene s2 = generate_scene(10.0, 8.0, {5.0, 0.0}, 50, Placement::uniform_random, b);
        CHECK(s1 == s2);
        CHECK_NOTHROW(s1.validate());
    }

    CHECK_THROWS_AS(generate_scene(10.0, 10.0, {5.0, 0.0}, 1000, Placement::grid, rng), std::domain_error);
    CHECK_THROWS_AS(generate_scene(10.0, 10.0, {5.0, 0.0}, 0, Placement::grid, rng), std::domain_error);
    CHECK_THROWS_AS(generate_scene(0.0, 10.0, {5.0, 0.0}, 3, Placement::grid, rng), std::domain_error);
}

TEST_CASE("render_user_image")
{
    Scene scene;
    scene.users = {{7, {5.0, 5.0}}};
    const RenderConfig cfg = clean_render();
    Rng rng(3);

    SECTION("centered user peaks at the grid center")
    {
        const SceneImage img = render_user_image(scene, 7, cfg, rng);
        // The room center maps to pixel coordinate (16, 16): the corner shared by pixels 15 and 16.
        const Point px = room_to_pixel(scene, cfg, {5.0, 5.0});
        CHECK(px == Point{16.0, 16.0});
        const auto [c, r] = brightest(img);
        CHECK((c == 15 || c == 16));
        CHECK((r == 15 || r == 16));
    }

    SECTION("pixels outside the blob equal the background")
    {
        const SceneImage img = render_user_image(scene, 7, cfg, rng);
        const SceneImage bg = render_background(cfg);
        const double support = 2.0 * cfg.marker_radius_px;
        int outside = 0;
        for (int r = 0; r < img.height; ++r)
            for (int c = 0; c < img.width; ++c)
            {
                const double dx = c + 0.5 - 16.0, dy = r + 0.5 - 16.0;
                if (dx * dx + dy * dy > support * support)
                {
                    CHECK(img.at(c, r) == bg.at(c, r));
                    ++outside;
                }
            }
        CHECK(outside > 900);
    }

    SECTION("deterministic and clamped under noise")
    {
        RenderConfig noisy;
        noisy.pixel_noise_sigma = 0.5;
        Scene many;
        Rng srng(9);
        many = generate_scene(10.0, 10.0, {5.0, 0.0}, 30, Placement::uniform_random, srng);
        Rng a(77), b(77);
        const SceneImage i1 = render_user_image(many, 4, noisy, a);
        const SceneImage i2 = render_user_image(many, 4, noisy, b);
        CHECK(i1 == i2);
        for (float p : i1.pixels)
            CHECK((p >= 0.0f && p <= 1.0f));
    }

    SECTION("co-located users render identically without noise")
    {
        Scene two;
        two.users = {{0, {3.3, 6.1}}, {1, {3.3, 6.1}}, {2, {8.0, 2.0}}};
        const SceneImage a = render_user_image(two, 0, cfg, rng);
        const SceneImage b = render_user_image(two, 1, cfg, rng);
        CHECK(a == b);
    }

    CHECK_THROWS_AS(render_user_image(scene, 99, cfg, rng), std::out_of_range);
}

TEST_CASE("make_training_set")
{
    const ArrayGeometry g(64);
    const Codebook cb = generate_dft_codebook(g, 64);
    const GainModel gain;
    SceneSpec spec;
    spec.user_count = 20;
    const RenderConfig render;

    for (int n : {100, 500})
    {
        Rng rng(static_cast<std::uint64_t>(n));
        const auto samples = make_training_set(spec, g, gain, cb, n, render, rng);
        CHECK(samples.size() == static_cast<std::size_t>(n));

        std::set<int> labels;
        for (const auto &s : samples)
        {
            // Relabel from scratch with a full codebook scan.
            Rng dummy(0);
            const auto ch = generate_channel(g, gain, s.user_id, s.true_position, spec.bs_position, dummy);
            int best = 0;
            for (int j = 1; j < cb.beam_count(); ++j)
                if (effective_gain(ch.coefficients, cb.beam(j)) > effective_gain(ch.coefficients, cb.beam(best)))
                    best = j;
            CHECK(s.label == best);
            CHECK(s.image.width == 32);
            labels.insert(s.label);
        }
        CHECK(labels.size() > 10);
    }

    Rng rng(1);
    CHECK_THROWS_AS(make_training_set(spec, g, gain, cb, 0, render, rng), std::domain_error);
}
