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
#include <string>
#include <vector>

#include "vanoma/channel.hpp"
#include "vanoma/rng.hpp"

namespace vanoma {

struct SceneUser
{
    int user_id = 0;
    Point position;
    bool operator==(const SceneUser &) const = default;
};

/// Top-down view of a rectangular room [0, room_width] x [0, room_depth].
struct Scene
{
    double room_width = 10.0;
    double room_depth = 10.0;
    Point bs_position{5.0, 0.0};
    std::vector<SceneUser> users;

    const SceneUser &user(int user_id) const;
    bool contains(Point p) const;
    void validate() const;
    bool operator==(const Scene &) const = default;
};

enum class Placement
{
    grid,
    uniform_random
};

std::string to_string(Placement p);
Placement placement_from_string(const std::string &s);

/// Everything needed to draw a fresh scene population.
struct SceneSpec
{
    double room_width = 10.0;
    double room_depth = 10.0;
    Point bs_position{5.0, 0.0};
    int user_count = 100;
    Placement placement = Placement::uniform_random;

    void validate() const;
};

/// Grid placement never packs users closer than this (desk pitch).
inline constexpr double kMinGridPitch = 0.5;

Scene generate_scene(double room_width, double room_depth, Point bs_position, int user_count,
                     Placement placement, Rng &rng);
Scene generate_scene(const SceneSpec &spec, Rng &rng);

struct SceneImage
{
    int width = 0;
    int height = 0;
    std::vector<float> pixels; // row-major, intensities in [0, 1]

    SceneImage() = default;
    SceneImage(int w, int h, float fill = 0.0f);

    float at(int col, int row) const { return pixels[static_cast<std::size_t>(row * width + col)]; }
    float &at(int col, int row) { return pixels[static_cast<std::size_t>(row * width + col)]; }
    bool operator==(const SceneImage &) const = default;
};

struct RenderConfig
{
    int width = 32;
    int height = 32;
    int marker_radius_px = 2;
    double pixel_noise_sigma = 0.05;
    double position_jitter_m = 0.1;
    std::uint64_t background_texture_seed = 7;
    double background_amplitude = 0.1;
    double target_intensity = 1.0;
    double distractor_intensity = 0.4;

    void validate() const;
};

/// Static per-pixel background texture (the empty room) for a render config.
SceneImage render_background(const RenderConfig &config);

/// Maps room coordinates to continuous pixel coordinates (pixel centers sit at i + 0.5).
Point room_to_pixel(const Scene &scene, const RenderConfig &config, Point p);

/// Single-user camera surrogate: bright blob at the (jittered) target, dim blobs
/// at every other user, additive Gaussian pixel noise, clamped to [0, 1].
SceneImage render_user_image(const Scene &scene, int user_id, const RenderConfig &config, Rng &rng);

struct LabeledSample
{
    SceneImage image;
    int label = 0;
    int user_id = 0;
    Point true_position;
};

/// N samples, each drawn from a fresh random scene: one uniformly chosen
/// user is rendered and labelled with its CSI best beam.
std::vector<LabeledSample> make_training_set(const SceneSpec &spec, const ArrayGeometry &geometry,
                                             const GainModel &gain, const Codebook &codebook,
                                             int sample_count, const RenderConfig &render, Rng &rng);

} // namespace vanoma
