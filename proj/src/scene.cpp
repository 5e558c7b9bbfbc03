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

#include "vanoma/scene.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace vanoma {

const SceneUser &Scene::user(int user_id) const
{
    for (const auto &u : users)
        if (u.user_id == user_id)
            return u;
    throw std::out_of_range("Scene: unknown user_id " + std::to_string(user_id));
}

bool Scene::contains(Point p) const
{
    return p.x >= 0.0 && p.x <= room_width && p.y >= 0.0 && p.y <= room_depth;
}

void Scene::validate() const
{
    if (!(room_width > 0.0) || !(room_depth > 0.0))
        throw std::domain_error("Scene: room dimensions must be positive");
    std::set<int> ids;
    for (const auto &u : users)
    {
        if (!contains(u.position))
            throw std::domain_error("Scene: user " + std::to_string(u.user_id) + " outside the room");
        if (!ids.insert(u.user_id).second)
            throw std::domain_error("Scene: duplicate user_id " + std::to_string(u.user_id));
    }
}

std::string to_string(Placement p)
{
    return p == Placement::grid ? "grid" : "uniform_random";
}

Placement placement_from_string(const std::string &s)
{
    if (s == "grid")
        return Placement::grid;
    if (s == "uniform_random")
        return Placement::uniform_random;
    throw std::invalid_argument("unknown placement '" + s + "'");
}

void SceneSpec::validate() const
{
    if (!(room_width > 0.0) || !(room_depth > 0.0))
        throw std::domain_error("SceneSpec: room dimensions must be positive");
    if (user_count < 1)
        throw std::domain_error("SceneSpec: user_count must be >= 1");
}

Scene generate_scene(double room_width, double room_depth, Point bs_position, int user_count,
                     Placement placement, Rng &rng)
{
    if (!(room_width > 0.0) || !(room_depth > 0.0))
        throw std::domain_error("generate_scene: room dimensions must be positive");
    if (user_count < 1)
        throw std::domain_error("generate_scene: user_count must be >= 1");

    Scene scene;
    scene.room_width = room_width;
    scene.room_depth = room_depth;
    scene.bs_position = bs_position;
    scene.users.reserve(static_cast<std::size_t>(user_count));

    if (placement == Placement::grid)
    {
        const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(user_count))));
        const int rows = (user_count + cols - 1) / cols;
        const double pitch_x = room_width / cols;
        const double pitch_y = room_depth / rows;
        if (pitch_x < kMinGridPitch || pitch_y < kMinGridPitch)
            throw std::domain_error("generate_scene: " + std::to_string(user_count) +
                                    " users exceed the grid capacity of the room");
        for (int k = 0; k < user_count; ++k)
        {
            const int r = k / cols;
            const int c = k % cols;
            scene.users.push_back({k, {(c + 0.5) * pitch_x, (r + 0.5) * pitch_y}});
        }
    }
    else
    {
        std::uniform_real_distribution<double> ux(0.0, room_width);
        std::uniform_real_distribution<double> uy(0.0, room_depth);
        for (int k = 0; k < user_count; ++k)
        {
            Point p;
            do
            {
                p.x = ux(rng);
                p.y = uy(rng);
            } while (p == bs_position);
            scene.users.push_back({k, p});
        }
    }
    return scene;
}

Scene generate_scene(const SceneSpec &spec, Rng &rng)
{
    return generate_scene(spec.room_width, spec.room_depth, spec.bs_position, spec.user_count, spec.placement,
                          rng);
}

SceneImage::SceneImage(int w, int h, float fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill)
{
}

void RenderConfig::validate() const
{
    if (width < 1 || height < 1)
        throw std::domain_error("RenderConfig: image dimensions must be positive");
    if (marker_radius_px < 1)
        throw std::domain_error("RenderConfig: marker_radius_px must be >= 1");
    if (!(pixel_noise_sigma >= 0.0))
        throw std::domain_error("RenderConfig: pixel_noise_sigma must be >= 0");
    if (!(position_jitter_m >= 0.0))
        throw std::domain_error("RenderConfig: position_jitter_m must be >= 0");
    if (!(background_amplitude >= 0.0 && background_amplitude <= 1.0))
        throw std::domain_error("RenderConfig: background_amplitude must lie in [0, 1]");
    if (!(target_intensity >= 0.0 && target_intensity <= 1.0) ||
        !(distractor_intensity >= 0.0 && distractor_intensity <= 1.0))
        throw std::domain_error("RenderConfig: blob intensities must lie in [0, 1]");
}

SceneImage render_background(const RenderConfig &config)
{
    SceneImage img(config.width, config.height);
    if (config.background_amplitude > 0.0)
    {
        Rng rng(config.background_texture_seed);
        std::uniform_real_distribution<double> u(0.0, config.background_amplitude);
        for (auto &p : img.pixels)
            p = static_cast<float>(u(rng));
    }
    return img;
}

Point room_to_pixel(const Scene &scene, const RenderConfig &config, Point p)
{
    return {p.x / scene.room_width * config.width, p.y / scene.room_depth * config.height};
}

namespace {

void stamp_blob(SceneImage &img, Point center_px, double radius, double amplitude)
{
    const double support = 2.0 * radius;
    const int c0 = std::max(0, static_cast<int>(std::floor(center_px.x - support - 0.5)));
    const int c1 = std::min(img.width - 1, static_cast<int>(std::ceil(center_px.x + support)));
    const int r0 = std::max(0, static_cast<int>(std::floor(center_px.y - support - 0.5)));
    const int r1 = std::min(img.height - 1, static_cast<int>(std::ceil(center_px.y + support)));
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c)
        {
            const double dx = c + 0.5 - center_px.x;
            const double dy = r + 0.5 - center_px.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 > support * support)
                continue;
            const auto v = static_cast<float>(amplitude * std::exp(-d2 / (2.0 * radius * radius)));
            img.at(c, r) = std::max(img.at(c, r), v);
        }
}

} // namespace

SceneImage render_user_image(const Scene &scene, int user_id, const RenderConfig &config, Rng &rng)
{
    config.validate();
    const SceneUser &target = scene.user(user_id);

    SceneImage img = render_background(config);
    const double radius = config.marker_radius_px;

    for (const auto &u : scene.users)
        if (u.user_id != user_id)
            stamp_blob(img, room_to_pixel(scene, config, u.position), radius, config.distractor_intensity);

    Point pos = target.position;
    if (config.position_jitter_m > 0.0)
    {
        std::normal_distribution<double> jitter(0.0, config.position_jitter_m);
        pos.x = std::clamp(pos.x + jitter(rng), 0.0, scene.room_width);
        pos.y = std::clamp(pos.y + jitter(rng), 0.0, scene.room_depth);
    }
    stamp_blob(img, room_to_pixel(scene, config, pos), radius, config.target_intensity);

    if (config.pixel_noise_sigma > 0.0)
    {
        std::normal_distribution<double> noise(0.0, config.pixel_noise_sigma);
        for (auto &p : img.pixels)
            p = static_cast<float>(p + noise(rng));
    }
    for (auto &p : img.pixels)
        p = std::clamp(p, 0.0f, 1.0f);
    return img;
}

std::vector<LabeledSample> make_training_set(const SceneSpec &spec, const ArrayGeometry &geometry,
                                             const GainModel &gain, const Codebook &codebook,
                                             int sample_count, const RenderConfig &render, Rng &rng)
{
    if (sample_count < 1)
        throw std::domain_error("make_training_set: sample_count must be >= 1");
    spec.validate();

    std::vector<LabeledSample> samples;
    samples.reserve(static_cast<std::size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i)
    {
        const Scene scene = generate_scene(spec, rng);
        const auto pick = std::uniform_int_distribution<std::size_t>(0, scene.users.size() - 1)(rng);
        const SceneUser &u = scene.users[pick];
        const UserChannel ch = generate_channel(geometry, gain, u.user_id, u.position, scene.bs_position, rng);

        LabeledSample s;
        s.image = render_user_image(scene, u.user_id, render, rng);
        s.label = best_beam_csi(ch, codebook);
        s.user_id = u.user_id;
        s.true_position = u.position;
        samples.push_back(std::move(s));
    }
    return samples;
}

} // namespace vanoma
