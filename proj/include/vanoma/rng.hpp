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
#include <random>

namespace vanoma {

using Rng = std::mt19937_64;

/// Mixes a master seed with a stream tag and an index into an independent
/// sub-seed (splitmix64 finalizer). Used to give every trial, frame and user
/// its own random stream so results do not depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0)
{
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ stream) ^ index);
}

// Stream tags for derive_seed.
namespace stream {
inline constexpr std::uint64_t scene = 1;
inline constexpr std::uint64_t channel = 2;
inline constexpr std::uint64_t render = 3;
inline constexpr std::uint64_t training = 4;
inline constexpr std::uint64_t init = 5;
inline constexpr std::uint64_t mobility = 6;
inline constexpr std::uint64_t probe = 7;
inline constexpr std::uint64_t dataset = 8;
} // namespace stream

} // namespace vanoma
