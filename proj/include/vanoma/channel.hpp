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

#include <complex>
#include <map>
#include <vector>

#include "vanoma/rng.hpp"

namespace vanoma {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

struct Point
{
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point &) const = default;
};

/// Uniform linear array lying along the x axis with boresight towards +y.
class ArrayGeometry
{
public:
    explicit ArrayGeometry(int num_antennas = 64, double element_spacing = 0.5);

    int num_antennas() const { return num_antennas_; }
    double element_spacing() const { return element_spacing_; } // in carrier wavelengths

private:
    int num_antennas_;
    double element_spacing_;
};

/// Ordered set of unit-norm beamforming vectors.
class Codebook
{
public:
    explicit Codebook(std::vector<CVec> beams);

    int beam_count() const { return static_cast<int>(beams_.size()); }
    int dimension() const { return static_cast<int>(beams_.front().size()); }
    const CVec &beam(int j) const { return beams_.at(static_cast<std::size_t>(j)); }
    const std::vector<CVec> &beams() const { return beams_; }

private:
    std::vector<CVec> beams_;
};

/// Single-path LoS channel. coefficients == path_gain * steering_vector(aoa).
struct UserChannel
{
    int user_id = 0;
    CVec coefficients;
    cplx path_gain{0.0, 0.0};
    double aoa = 0.0; // radians from boresight
};

using ChannelMap = std::map<int, UserChannel>;

/// Distance-based amplitude model |g| = reference_gain * (d / d_ref)^(-exponent / 2).
/// With equal_gain set the distance term is dropped and every user gets
/// |g| = reference_gain.
struct GainModel
{
    double reference_gain = 1.0;
    double reference_distance = 1.0; // meters
    double pathloss_exponent = 2.0;
    bool equal_gain = true;
    bool random_phase = false;

    void validate() const;
};

CVec steering_vector(const ArrayGeometry &geometry, double angle);

/// Beam j points at arcsin(-1 + (2j+1)/B), a uniform grid in sin-space.
Codebook generate_dft_codebook(const ArrayGeometry &geometry, int beam_count);

/// Grid angle of beam j for a B-beam DFT codebook.
double dft_beam_angle(int j, int beam_count);

/// Angle of `position` seen from an array at `bs_position` with +y boresight.
double angle_from_boresight(Point position, Point bs_position);

UserChannel generate_channel(const ArrayGeometry &geometry, const GainModel &gain, int user_id,
                             Point position, Point bs_position, Rng &rng);

/// h^H f
cplx inner_product(const CVec &h, const CVec &f);

double norm2(const CVec &v);

/// |h^H f|^2
double effective_gain(const CVec &h, const CVec &f);

double cosine_similarity(const CVec &h, const CVec &f);

/// argmax_j |h^H f_j|^2, lowest index on ties.
int best_beam_csi(const UserChannel &channel, const Codebook &codebook);
int best_beam_csi(const CVec &h, const Codebook &codebook);

} // namespace vanoma
