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

#include "vanoma/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vanoma {

ArrayGeometry::ArrayGeometry(int num_antennas, double element_spacing)
    : num_antennas_(num_antennas), element_spacing_(element_spacing)
{
    if (num_antennas < 1)
        throw std::domain_error("ArrayGeometry: num_antennas must be >= 1");
    if (!(element_spacing > 0.0))
        throw std::domain_error("ArrayGeometry: element_spacing must be > 0");
}

Codebook::Codebook(std::vector<CVec> beams) : beams_(std::move(beams))
{
    if (beams_.empty())
        throw std::domain_error("Codebook: at least one beam is required");
    const auto m = beams_.front().size();
    for (const auto &b : beams_)
    {
        if (b.size() != m || m == 0)
            throw std::domain_error("Codebook: beams must share a nonzero length");
        if (std::abs(norm2(b) - 1.0) > 1e-12)
            throw std::domain_error("Codebook: beams must have unit norm");
    }
}

void GainModel::validate() const
{
    if (!(reference_gain > 0.0))
        throw std::domain_error("GainModel: reference_gain must be > 0");
    if (!(reference_distance > 0.0))
        throw std::domain_error("GainModel: reference_distance must be > 0");
    if (!std::isfinite(pathloss_exponent))
        throw std::domain_error("GainModel: pathloss_exponent must be finite");
}

CVec steering_vector(const ArrayGeometry &geometry, double angle)
{
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (!(std::abs(angle) <= half_pi))
        throw std::domain_error("steering_vector: angle outside [-pi/2, pi/2]: " + std::to_string(angle));

    const int m = geometry.num_antennas();
    const double amp = 1.0 / std::sqrt(static_cast<double>(m));
    const double k = -2.0 * std::numbers::pi * geometry.element_spacing() * std::sin(angle);
    CVec a(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        a[static_cast<std::size_t>(i)] = std::polar(amp, k * i);
    return a;
}

double dft_beam_angle(int j, int beam_count)
{
    const double s = -1.0 + (2.0 * j + 1.0) / static_cast<double>(beam_count);
    return std::asin(s);
}

Codebook generate_dft_codebook(const ArrayGeometry &geometry, int beam_count)
{
    if (beam_count < 1)
        throw std::domain_error("generate_dft_codebook: beam_count must be >= 1");
    std::vector<CVec> beams;
    beams.reserve(static_cast<std::size_t>(beam_count));
    for (int j = 0; j < beam_count; ++j)
        beams.push_back(steering_vector(geometry, dft_beam_angle(j, beam_count)));
    return Codebook(std::move(beams));
}

double angle_from_boresight(Point position, Point bs_position)
{
    const double dx = position.x - bs_position.x;
    const double dy = position.y - bs_position.y;
    if (dx == 0.0 && dy == 0.0)
        throw std::domain_error("angle_from_boresight: user position coincides with the base station");
    return std::atan2(dx, dy);
}

UserChannel generate_channel(const ArrayGeometry &geometry, const GainModel &gain, int user_id,
                             Point position, Point bs_position, Rng &rng)
{
    gain.validate();
    const double aoa = angle_from_boresight(position, bs_position);

    double amplitude = gain.reference_gain;
    if (!gain.equal_gain)
    {
        const double d = std::hypot(position.x - bs_position.x, position.y - bs_position.y);
        amplitude *= std::pow(d / gain.reference_distance, -gain.pathloss_exponent / 2.0);
    }
    double phase = 0.0;
    if (gain.random_phase)
        phase = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng);

    UserChannel ch;
    ch.user_id = user_id;
    ch.aoa = aoa;
    ch.path_gain = std::polar(amplitude, phase);
    ch.coefficients = steering_vector(geometry, aoa);
    for (auto &c : ch.coefficients)
        c *= ch.path_gain;
    return ch;
}

cplx inner_product(const CVec &h, const CVec &f)
{
    if (h.size() != f.size())
        throw std::domain_error("inner_product: length mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < h.size(); ++i)
        acc += std::conj(h[i]) * f[i];
    return acc;
}

double norm2(const CVec &v)
{
    double acc = 0.0;
    for (const auto &c : v)
        acc += std::norm(c);
    return std::sqrt(acc);
}

double effective_gain(const CVec &h, const CVec &f)
{
    return std::norm(inner_product(h, f));
}

double cosine_similarity(const CVec &h, const CVec &f)
{
    const double nh = norm2(h);
    const double nf = norm2(f);
    if (!(nh > 0.0) || !(nf > 0.0))
        throw std::domain_error("cosine_similarity: zero-norm input");
    return std::abs(inner_product(h, f)) / (nh * nf);
}

int best_beam_csi(const CVec &h, const Codebook &codebook)
{
    int best = 0;
    double best_gain = -1.0;
    for (int j = 0; j < codebook.beam_count(); ++j)
    {
        const double g = effective_gain(h, codebook.beam(j));
        if (g > best_gain)
        {
            best_gain = g;
            best = j;
        }
    }
    return best;
}

int best_beam_csi(const UserChannel &channel, const Codebook &codebook)
{
    return best_beam_csi(channel.coefficients, codebook);
}

} // namespace vanoma
