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

#include "vanoma/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace vanoma {

std::vector<std::uint64_t> ExperimentConfig::default_seeds()
{
    std::vector<std::uint64_t> s;
    for (std::uint64_t i = 1; i <= 20; ++i)
        s.push_back(i);
    return s;
}

void ExperimentConfig::validate() const
{
    sim.validate();
    if (seeds.empty())
        throw std::domain_error("seed list must be nonempty");
    if (user_counts.empty() || n_train.empty() || staleness_sweep.empty())
        throw std::domain_error("sweep lists must be nonempty");
    if (eval_frames < 1)
        throw std::domain_error("eval_frames must be >= 1");
}

ConfigError::ConfigError(int line, std::string key, const std::string &message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : key + ": ") + message),
      line_(line), key_(std::move(key))
{
}

namespace {

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
    {
        item = trim(item);
        if (item.empty())
            throw std::invalid_argument("empty list item");
        out.push_back(item);
    }
    if (out.empty())
        throw std::invalid_argument("empty list");
    return out;
}

template <typename T>
T parse_number(const std::string &s)
{
    T v{};
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw std::invalid_argument("not a valid number: '" + s + "'");
    return v;
}

std::string format_double(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

bool parse_bool(const std::string &s)
{
    if (s == "true")
        return true;
    if (s == "false")
        return false;
    throw std::invalid_argument("expected true or false, got '" + s + "'");
}

template <typename T>
std::string join(const std::vector<T> &v, const std::function<std::string(const T &)> &fmt)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (i)
            out += ", ";
        out += fmt(v[i]);
    }
    return out;
}

struct Key
{
    std::string section;
    std::string name;
    std::function<void(ExperimentConfig &, const std::string &)> set;
    std::function<std::string(const ExperimentConfig &)> get;
};

using DoubleRef = std::function<double &(ExperimentConfig &)>;
using IntRef = std::function<int &(ExperimentConfig &)>;

enum class Bound
{
    any,
    nonneg,
    positive,
    unit_open // (0, 1)
};

void check_bound(double v, Bound b)
{
    switch (b)
    {
    case Bound::any:
        if (!std::isfinite(v))
            throw std::domain_error("must be finite");
        break;
    case Bound::nonneg:
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::domain_error("must be >= 0");
        break;
    case Bound::positive:
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::domain_error("must be > 0");
        break;
    case Bound::unit_open:
        if (!(v > 0.0 && v < 1.0))
            throw std::domain_error("must lie in (0, 1)");
        break;
    }
}

Key dbl(std::string sec, std::string name, DoubleRef ref, Bound b = Bound::any)
{
    return {std::move(sec), std::move(name),
            [ref, b](ExperimentConfig &c, const std::string &v) {
                const double x = parse_number<double>(v);
                check_bound(x, b);
                ref(c) = x;
            },
            [ref](const ExperimentConfig &c) { return format_double(ref(const_cast<ExperimentConfig &>(c))); }};
}

Key integer(std::string sec, std::string name, IntRef ref, int min_value)
{
    return {std::move(sec), std::move(name),
            [ref, min_value](ExperimentConfig &c, const std::string &v) {
                const int x = parse_number<int>(v);
                if (x < min_value)
                    throw std::domain_error("must be >= " + std::to_string(min_value));
                ref(c) = x;
            },
            [ref](const ExperimentConfig &c) { return std::to_string(ref(const_cast<ExperimentConfig &>(c))); }};
}

Key boolean(std::string sec, std::string name, std::function<bool &(ExperimentConfig &)> ref)
{
    return {std::move(sec), std::move(name),
            [ref](ExperimentConfig &c, const std::string &v) { ref(c) = parse_bool(v); },
            [ref](const ExperimentConfig &c) {
                return std::string(ref(const_cast<ExperimentConfig &>(c)) ? "true" : "false");
            }};
}

Key int_list(std::string sec, std::string name, std::function<std::vector<int> &(ExperimentConfig &)> ref,
             int min_value)
{
    return {std::move(sec), std::move(name),
            [ref, min_value](ExperimentConfig &c, const std::string &v) {
                std::vector<int> out;
                for (const auto &item : split_list(v))
                {
                    const int x = parse_number<int>(item);
                    if (x < min_value)
                        throw std::domain_error("entries must be >= " + std::to_string(min_value));
                    out.push_back(x);
                }
                ref(c) = std::move(out);
            },
            [ref](const ExperimentConfig &c) {
                return join<int>(ref(const_cast<ExperimentConfig &>(c)), [](const int &x) { return std::to_string(x); });
            }};
}

Key scheme_list(std::string sec, std::string name, std::function<std::vector<Scheme> &(ExperimentConfig &)> ref)
{
    return {std::move(sec), std::move(name),
            [ref](ExperimentConfig &c, const std::string &v) {
                std::vector<Scheme> out;
                for (const auto &item : split_list(v))
                    out.push_back(scheme_from_string(item));
                ref(c) = std::move(out);
            },
            [ref](const ExperimentConfig &c) {
                return join<Scheme>(ref(const_cast<ExperimentConfig &>(c)),
                                    [](const Scheme &s) { return to_string(s); });
            }};
}

const std::vector<Key> &keys()
{
    static const std::vector<Key> table = [] {
        std::vector<Key> k;
        k.push_back(integer("array", "num_antennas", [](auto &c) -> int & { return c.sim.num_antennas; }, 1));
        k.push_back(dbl("array", "element_spacing", [](auto &c) -> double & { return c.sim.element_spacing; }, Bound::positive));

        k.push_back(integer("codebook", "beam_count", [](auto &c) -> int & { return c.sim.beam_count; }, 1));

        k.push_back(dbl("gain", "reference_gain", [](auto &c) -> double & { return c.sim.gain.reference_gain; }, Bound::positive));
        k.push_back(dbl("gain", "reference_distance", [](auto &c) -> double & { return c.sim.gain.reference_distance; }, Bound::positive));
        k.push_back(dbl("gain", "pathloss_exponent", [](auto &c) -> double & { return c.sim.gain.pathloss_exponent; }));
        k.push_back(boolean("gain", "equal_gain", [](auto &c) -> bool & { return c.sim.gain.equal_gain; }));
        k.push_back(boolean("gain", "random_phase", [](auto &c) -> bool & { return c.sim.gain.random_phase; }));

        k.push_back(dbl("scene", "room_width", [](auto &c) -> double & { return c.sim.scene.room_width; }, Bound::positive));
        k.push_back(dbl("scene", "room_depth", [](auto &c) -> double & { return c.sim.scene.room_depth; }, Bound::positive));
        k.push_back(dbl("scene", "bs_x", [](auto &c) -> double & { return c.sim.scene.bs_position.x; }));
        k.push_back(dbl("scene", "bs_y", [](auto &c) -> double & { return c.sim.scene.bs_position.y; }));
        k.push_back(integer("scene", "user_count", [](auto &c) -> int & { return c.sim.scene.user_count; }, 1));
        k.push_back({"scene", "placement",
                     [](ExperimentConfig &c, const std::string &v) { c.sim.scene.placement = placement_from_string(v); },
                     [](const ExperimentConfig &c) { return to_string(c.sim.scene.placement); }});

        k.push_back(integer("render", "width", [](auto &c) -> int & { return c.sim.render.width; }, 1));
        k.push_back(integer("render", "height", [](auto &c) -> int & { return c.sim.render.height; }, 1));
        k.push_back(integer("render", "marker_radius_px", [](auto &c) -> int & { return c.sim.render.marker_radius_px; }, 1));
        k.push_back(dbl("render", "pixel_noise_sigma", [](auto &c) -> double & { return c.sim.render.pixel_noise_sigma; }, Bound::nonneg));
        k.push_back(dbl("render", "position_jitter_m", [](auto &c) -> double & { return c.sim.render.position_jitter_m; }, Bound::nonneg));
        k.push_back({"render", "background_texture_seed",
                     [](ExperimentConfig &c, const std::string &v) {
                         c.sim.render.background_texture_seed = parse_number<std::uint64_t>(v);
                     },
                     [](const ExperimentConfig &c) { return std::to_string(c.sim.render.background_texture_seed); }});
        k.push_back(dbl("render", "background_amplitude", [](auto &c) -> double & { return c.sim.render.background_amplitude; }, Bound::nonneg));
        k.push_back(dbl("render", "target_intensity", [](auto &c) -> double & { return c.sim.render.target_intensity; }, Bound::nonneg));
        k.push_back(dbl("render", "distractor_intensity", [](auto &c) -> double & { return c.sim.render.distractor_intensity; }, Bound::nonneg));

        k.push_back(int_list("training", "hidden_layers", [](auto &c) -> std::vector<int> & { return c.sim.hidden_layers; }, 1));
        k.push_back(dbl("training", "learning_rate", [](auto &c) -> double & { return c.sim.training.learning_rate; }, Bound::positive));
        k.push_back(integer("training", "epochs", [](auto &c) -> int & { return c.sim.training.epochs; }, 1));
        k.push_back(integer("training", "batch_size", [](auto &c) -> int & { return c.sim.training.batch_size; }, 1));
        k.push_back({"training", "seed",
                     [](ExperimentConfig &c, const std::string &v) { c.sim.training.seed = parse_number<std::uint64_t>(v); },
                     [](const ExperimentConfig &c) { return std::to_string(c.sim.training.seed); }});
        k.push_back(dbl("training", "weight_init_scale", [](auto &c) -> double & { return c.sim.training.weight_init_scale; }, Bound::nonneg));

        k.push_back(integer("clustering", "n_max", [](auto &c) -> int & { return c.sim.clustering.n_max; }, 1));
        k.push_back({"clustering", "sic_ordering",
                     [](ExperimentConfig &c, const std::string &v) { c.sim.clustering.sic_ordering = sic_ordering_from_string(v); },
                     [](const ExperimentConfig &c) { return to_string(c.sim.clustering.sic_ordering); }});
        k.push_back({"clustering", "split_policy",
                     [](ExperimentConfig &c, const std::string &v) { c.sim.clustering.split_policy = split_policy_from_string(v); },
                     [](const ExperimentConfig &c) { return to_string(c.sim.clustering.split_policy); }});
        k.push_back({"clustering", "vision_sic_ordering",
                     [](ExperimentConfig &c, const std::string &v) { c.sim.vision_sic_ordering = sic_ordering_from_string(v); },
                     [](const ExperimentConfig &c) { return to_string(c.sim.vision_sic_ordering); }});

        k.push_back(dbl("radio", "tx_power", [](auto &c) -> double & { return c.sim.radio.tx_power; }, Bound::positive));
        k.push_back(dbl("radio", "noise_power", [](auto &c) -> double & { return c.sim.radio.noise_power; }, Bound::positive));
        k.push_back(dbl("radio", "power_split_ratio", [](auto &c) -> double & { return c.sim.radio.power_split_ratio; }, Bound::unit_open));

        k.push_back(integer("validation", "sample_rate", [](auto &c) -> int & { return c.sim.validation.sample_rate; }, 1));
        k.push_back(integer("validation", "window", [](auto &c) -> int & { return c.sim.validation.window; }, 1));
        k.push_back(dbl("validation", "error_threshold", [](auto &c) -> double & { return c.sim.validation.error_threshold; }, Bound::unit_open));

        k.push_back(dbl("mobility", "step_sigma", [](auto &c) -> double & { return c.sim.mobility.step_sigma; }, Bound::nonneg));
        k.push_back(integer("mobility", "staleness", [](auto &c) -> int & { return c.sim.mobility.staleness; }, 0));
        k.push_back(integer("mobility", "frames", [](auto &c) -> int & { return c.sim.frames; }, 1));

        k.push_back({"experiment", "seeds",
                     [](ExperimentConfig &c, const std::string &v) { c.seeds = parse_seed_list(v); },
                     [](const ExperimentConfig &c) {
                         return join<std::uint64_t>(c.seeds, [](const std::uint64_t &s) { return std::to_string(s); });
                     }});
        k.push_back(int_list("experiment", "user_counts", [](auto &c) -> std::vector<int> & { return c.user_counts; }, 1));
        k.push_back(int_list("experiment", "n_train", [](auto &c) -> std::vector<int> & { return c.n_train; }, 1));
        k.push_back(int_list("experiment", "staleness_sweep", [](auto &c) -> std::vector<int> & { return c.staleness_sweep; }, 0));
        k.push_back(integer("experiment", "eval_frames", [](auto &c) -> int & { return c.eval_frames; }, 1));
        k.push_back(scheme_list("experiment", "compare_schemes", [](auto &c) -> std::vector<Scheme> & { return c.compare_schemes; }));
        k.push_back(scheme_list("experiment", "stale_schemes", [](auto &c) -> std::vector<Scheme> & { return c.stale_schemes; }));
        k.push_back({"experiment", "output_dir",
                     [](ExperimentConfig &c, const std::string &v) { c.output_dir = v; },
                     [](const ExperimentConfig &c) { return c.output_dir; }});
        return k;
    }();
    return table;
}

} // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string &text)
{
    std::vector<std::uint64_t> out;
    for (const auto &item : split_list(text))
    {
        const auto dash = item.find('-');
        if (dash == std::string::npos)
        {
            out.push_back(parse_number<std::uint64_t>(item));
            continue;
        }
        const auto lo = parse_number<std::uint64_t>(trim(item.substr(0, dash)));
        const auto hi = parse_number<std::uint64_t>(trim(item.substr(dash + 1)));
        if (hi < lo || hi - lo > 1'000'000)
            throw std::invalid_argument("bad seed range '" + item + "'");
        for (auto s = lo; s <= hi; ++s)
            out.push_back(s);
    }
    return out;
}

ExperimentConfig parse_config_text(const std::string &text)
{
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        std::string line = raw;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos)
            line.erase(comment);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw ConfigError(line_no, "", "malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            const bool known = std::any_of(keys().begin(), keys().end(), [&](const Key &k) { return k.section == section; });
            if (!known)
                throw ConfigError(line_no, section, "unknown section");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "", "expected 'key = value', got '" + line + "'");
        const std::string name = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string full = section.empty() ? name : section + "." + name;
        if (section.empty())
            throw ConfigError(line_no, full, "key outside of any section");

        const auto it = std::find_if(keys().begin(), keys().end(),
                                     [&](const Key &k) { return k.section == section && k.name == name; });
        if (it == keys().end())
            throw ConfigError(line_no, full, "unknown key");
        if (value.empty())
            throw ConfigError(line_no, full, "missing value");
        try
        {
            it->set(cfg, value);
        }
        catch (const std::exception &e)
        {
            throw ConfigError(line_no, full, e.what());
        }
    }

    try
    {
        cfg.validate();
    }
    catch (const std::exception &e)
    {
        throw ConfigError(0, "", e.what());
    }
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(0, "", "cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string serialize_config(const ExperimentConfig &config)
{
    std::string out;
    std::string section;
    for (const auto &k : keys())
    {
        if (k.section != section)
        {
            if (!section.empty())
                out += "\n";
            section = k.section;
            out += "[" + section + "]\n";
        }
        out += k.name + " = " + k.get(config) + "\n";
    }
    return out;
}

} // namespace vanoma
