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

#include "vanoma/persistence.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace vanoma {

namespace {

template <typename U>
void put_le(std::ostream &out, U v)
{
    char buf[sizeof(U)];
    for (std::size_t i = 0; i < sizeof(U); ++i)
        buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, sizeof(U));
}

template <typename U>
U get_le(std::istream &in)
{
    unsigned char buf[sizeof(U)];
    if (!in.read(reinterpret_cast<char *>(buf), sizeof(U)))
        throw FormatError("unexpected end of file");
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i)
        v |= static_cast<U>(buf[i]) << (8 * i);
    return v;
}

void put_u32(std::ostream &out, std::uint32_t v) { put_le(out, v); }
void put_u64(std::ostream &out, std::uint64_t v) { put_le(out, v); }
void put_f32(std::ostream &out, float v) { put_le(out, std::bit_cast<std::uint32_t>(v)); }
void put_f64(std::ostream &out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t get_u32(std::istream &in) { return get_le<std::uint32_t>(in); }
std::uint64_t get_u64(std::istream &in) { return get_le<std::uint64_t>(in); }
float get_f32(std::istream &in) { return std::bit_cast<float>(get_le<std::uint32_t>(in)); }
double get_f64(std::istream &in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

void expect_magic(std::istream &in, const char (&magic)[8], const char *what)
{
    char buf[8];
    if (!in.read(buf, 8) || std::memcmp(buf, magic, 8) != 0)
        throw FormatError(std::string("not a ") + what + " file (bad magic)");
}

void expect_version(std::istream &in, std::uint32_t version, const char *what)
{
    const auto v = get_u32(in);
    if (v != version)
        throw FormatError(std::string("unsupported ") + what + " version " + std::to_string(v));
}

} // namespace

void write_dataset(std::ostream &out, std::span<const LabeledSample> samples, int beam_count)
{
    if (beam_count < 1)
        throw std::domain_error("write_dataset: beam_count must be >= 1");
    const int w = samples.empty() ? 0 : samples.front().image.width;
    const int h = samples.empty() ? 0 : samples.front().image.height;
    out.write(kDatasetMagic, 8);
    put_u32(out, kDatasetVersion);
    put_u32(out, static_cast<std::uint32_t>(beam_count));
    put_u32(out, static_cast<std::uint32_t>(w));
    put_u32(out, static_cast<std::uint32_t>(h));
    put_u64(out, samples.size());
    for (const auto &s : samples)
    {
        if (s.image.width != w || s.image.height != h)
            throw std::domain_error("write_dataset: images must share one size");
        if (s.label < 0 || s.label >= beam_count)
            throw std::domain_error("write_dataset: label out of range");
        put_u32(out, static_cast<std::uint32_t>(s.user_id));
        put_f64(out, s.true_position.x);
        put_f64(out, s.true_position.y);
        put_u32(out, static_cast<std::uint32_t>(s.label));
        for (float p : s.image.pixels)
            put_f32(out, p);
    }
    if (!out)
        throw FormatError("write_dataset: stream write failed");
}

Dataset read_dataset(std::istream &in)
{
    expect_magic(in, kDatasetMagic, "dataset");
    expect_version(in, kDatasetVersion, "dataset");
    Dataset d;
    d.beam_count = static_cast<int>(get_u32(in));
    d.width = static_cast<int>(get_u32(in));
    d.height = static_cast<int>(get_u32(in));
    const auto n = get_u64(in);
    if (d.beam_count < 1)
        throw FormatError("dataset: beam count must be >= 1");
    d.samples.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1u << 20)));
    for (std::uint64_t i = 0; i < n; ++i)
    {
        LabeledSample s;
        s.user_id = static_cast<std::int32_t>(get_u32(in));
        s.true_position.x = get_f64(in);
        s.true_position.y = get_f64(in);
        s.label = static_cast<int>(get_u32(in));
        if (s.label < 0 || s.label >= d.beam_count)
            throw FormatError("dataset: record " + std::to_string(i) + " has label out of range");
        s.image = SceneImage(d.width, d.height);
        for (auto &p : s.image.pixels)
            p = get_f32(in);
        d.samples.push_back(std::move(s));
    }
    return d;
}

void save_dataset(const std::filesystem::path &path, std::span<const LabeledSample> samples, int beam_count)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw FormatError("cannot open " + path.string() + " for writing");
    write_dataset(out, samples, beam_count);
}

Dataset load_dataset(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path.string());
    return read_dataset(in);
}

void write_model(std::ostream &out, const ClassifierParameters &params)
{
    const Architecture &arch = params.architecture();
    out.write(kModelMagic, 8);
    put_u32(out, kModelVersion);
    put_u32(out, static_cast<std::uint32_t>(arch.input_size));
    put_u32(out, static_cast<std::uint32_t>(arch.hidden.size()));
    for (int h : arch.hidden)
        put_u32(out, static_cast<std::uint32_t>(h));
    put_u32(out, static_cast<std::uint32_t>(arch.output_size));
    for (const auto &l : params.layers())
    {
        for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
            for (Eigen::Index c = 0; c < l.weights.cols(); ++c)
                put_f64(out, l.weights(r, c));
        for (Eigen::Index r = 0; r < l.bias.size(); ++r)
            put_f64(out, l.bias(r));
    }
    if (!out)
        throw FormatError("write_model: stream write failed");
}

ClassifierParameters read_model(std::istream &in)
{
    expect_magic(in, kModelMagic, "model");
    expect_version(in, kModelVersion, "model");
    Architecture arch;
    arch.input_size = static_cast<int>(get_u32(in));
    const auto hidden = get_u32(in);
    if (hidden > 64)
        throw FormatError("model: implausible hidden layer count " + std::to_string(hidden));
    arch.hidden.clear();
    for (std::uint32_t i = 0; i < hidden; ++i)
        arch.hidden.push_back(static_cast<int>(get_u32(in)));
    arch.output_size = static_cast<int>(get_u32(in));
    try
    {
        arch.validate();
    }
    catch (const std::domain_error &e)
    {
        throw FormatError(std::string("model: ") + e.what());
    }
    ClassifierParameters params(arch);
    for (auto &l : params.layers())
    {
        for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
            for (Eigen::Index c = 0; c < l.weights.cols(); ++c)
                l.weights(r, c) = get_f64(in);
        for (Eigen::Index r = 0; r < l.bias.size(); ++r)
            l.bias(r) = get_f64(in);
    }
    return params;
}

void save_model(const std::filesystem::path &path, const ClassifierParameters &params)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw FormatError("cannot open " + path.string() + " for writing");
    write_model(out, params);
}

ClassifierParameters load_model(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path.string());
    return read_model(in);
}

} // namespace vanoma
