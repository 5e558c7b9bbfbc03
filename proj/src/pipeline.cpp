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

#include "vanoma/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace vanoma {

void ValidationConfig::validate() const
{
    if (sample_rate < 1)
        throw std::domain_error("ValidationConfig: sample_rate must be >= 1");
    if (window < sample_rate)
        throw std::domain_error("ValidationConfig: window must be >= sample_rate");
    if (!(error_threshold > 0.0 && error_threshold <= 1.0))
        throw std::domain_error("ValidationConfig: error_threshold must lie in (0, 1]");
}

void MobilityModel::validate() const
{
    if (!(step_sigma >= 0.0))
        throw std::domain_error("MobilityModel: step_sigma must be >= 0");
    if (staleness < 0)
        throw std::domain_error("MobilityModel: staleness must be >= 0");
}

std::string to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::csi_fresh: return "csi_fresh";
    case Scheme::csi_stale: return "csi_stale";
    case Scheme::vision: return "vision";
    case Scheme::oracle_vision: return "oracle_vision";
    }
    return "?";
}

Scheme scheme_from_string(const std::string &s)
{
    for (Scheme v : {Scheme::csi_fresh, Scheme::csi_stale, Scheme::vision, Scheme::oracle_vision})
        if (to_string(v) == s)
            return v;
    throw std::invalid_argument("unknown scheme '" + s + "'");
}

void SimulationConfig::validate() const
{
    ArrayGeometry(num_antennas, element_spacing);
    if (beam_count < 1)
        throw std::domain_error("SimulationConfig: beam_count must be >= 1");
    gain.validate();
    scene.validate();
    render.validate();
    architecture().validate();
    training.validate();
    clustering.validate();
    radio.validate();
    validation.validate();
    mobility.validate();
    if (frames < 1)
        throw std::domain_error("SimulationConfig: frames must be >= 1");
}

Architecture SimulationConfig::architecture() const
{
    return {render.width * render.height, hidden_layers, beam_count};
}

Environment Environment::from_config(const SimulationConfig &config)
{
    ArrayGeometry geometry(config.num_antennas, config.element_spacing);
    return {geometry, config.gain, generate_dft_codebook(geometry, config.beam_count)};
}

ChannelMap acquire_csi(const Scene &scene, const Environment &env, std::uint64_t seed)
{
    ChannelMap out;
    for (const auto &u : scene.users)
    {
        Rng rng(derive_seed(seed, stream::channel, static_cast<std::uint64_t>(u.user_id)));
        out.emplace(u.user_id, generate_channel(env.geometry, env.gain, u.user_id, u.position, scene.bs_position, rng));
    }
    return out;
}

BeamAssignment assign_beams_csi(const ChannelMap &channels, const Codebook &codebook)
{
    BeamAssignment out;
    for (const auto &[id, ch] : channels)
        out[id] = best_beam_csi(ch, codebook);
    return out;
}

Schedule csi_schedule(const ChannelMap &channels, const Codebook &codebook, const ClusteringConfig &config)
{
    return order_schedule(noma_bb(assign_beams_csi(channels, codebook), config, codebook.beam_count()), channels,
                          codebook, config.sic_ordering);
}

int ClassifierPredictor::predict(const Scene &scene, int user_id, Rng &render_rng) const
{
    return predict_best_beam(forward(params_, render_user_image(scene, user_id, render_, render_rng)));
}

int OraclePredictor::predict(const Scene &, int user_id, Rng &) const
{
    const auto it = channels_.find(user_id);
    if (it == channels_.end())
        throw std::out_of_range("OraclePredictor: no channel for user " + std::to_string(user_id));
    return best_beam_csi(it->second, codebook_);
}

namespace {

Rng user_render_rng(std::uint64_t render_seed, int user_id)
{
    return Rng(derive_seed(render_seed, stream::render, static_cast<std::uint64_t>(user_id)));
}

TrainingConfig seeded_training(const TrainingConfig &base, std::uint64_t seed)
{
    TrainingConfig t = base;
    t.seed = derive_seed(base.seed, stream::training, seed);
    return t;
}

double agreement(const BeamAssignment &predicted, const BeamAssignment &truth)
{
    if (truth.empty())
        return 0.0;
    std::size_t hits = 0;
    for (const auto &[id, beam] : truth)
    {
        const auto it = predicted.find(id);
        if (it != predicted.end() && it->second == beam)
            ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

} // namespace

Stage1Result run_stage1(const SceneStream &scenes, const Environment &env, int n_train,
                        const SimulationConfig &config, std::uint64_t seed)
{
    if (n_train < 1)
        throw std::domain_error("run_stage1: n_train must be >= 1");

    Stage1Result out;
    out.samples.reserve(static_cast<std::size_t>(n_train));
    for (std::uint64_t frame = 0; static_cast<int>(out.samples.size()) < n_train; ++frame)
    {
        const Scene scene = scenes();
        const ChannelMap channels = acquire_csi(scene, env, derive_seed(seed, stream::channel, frame));
        out.schedules.push_back(csi_schedule(channels, env.codebook, config.clustering));

        const std::uint64_t render_seed = derive_seed(seed, stream::render, frame);
        for (const auto &u : scene.users)
        {
            if (static_cast<int>(out.samples.size()) >= n_train)
                break;
            Rng rng = user_render_rng(render_seed, u.user_id);
            LabeledSample s;
            s.image = render_user_image(scene, u.user_id, config.render, rng);
            s.label = best_beam_csi(channels.at(u.user_id), env.codebook);
            s.user_id = u.user_id;
            s.true_position = u.position;
            out.samples.push_back(std::move(s));
        }
    }

    const TrainingConfig training = seeded_training(config.training, seed);
    out.params = train(init_classifier(config.architecture(), training.weight_init_scale, training.seed), out.samples,
                       training, &out.epoch_losses);
    return out;
}

SceneStream fresh_scene_stream(const SceneSpec &spec, std::uint64_t seed)
{
    auto rng = std::make_shared<Rng>(seed);
    return [spec, rng]() { return generate_scene(spec, *rng); };
}

Stage2Result run_stage2(const BeamPredictor &predictor, const Scene &scene, const Codebook &codebook,
                        const ClusteringConfig &clustering, SicOrdering ordering, std::uint64_t render_seed,
                        const ChannelMap *gain_channels)
{
    Stage2Result out;
    for (const auto &u : scene.users)
    {
        Rng rng = user_render_rng(render_seed, u.user_id);
        out.assignment[u.user_id] = predictor.predict(scene, u.user_id, rng);
    }
    out.schedule = noma_bb(out.assignment, clustering, codebook.beam_count());
    if (ordering == SicOrdering::by_channel_gain && gain_channels == nullptr)
        throw std::invalid_argument("run_stage2: gain ordering requires channels");
    out.schedule = order_schedule(std::move(out.schedule), gain_channels ? *gain_channels : ChannelMap{}, codebook,
                                  ordering);
    return out;
}

StageValidator::StageValidator(const ValidationConfig &config) : config_(config)
{
    config_.validate();
}

void StageValidator::record(bool mismatch)
{
    window_.push_back(mismatch);
    if (static_cast<int>(window_.size()) > config_.window)
        window_.pop_front();
    ++probes_;
    if (mismatch)
        ++mismatches_;
}

double StageValidator::window_rate() const
{
    if (window_.empty())
        return 0.0;
    const auto bad = std::count(window_.begin(), window_.end(), true);
    return static_cast<double>(bad) / static_cast<double>(window_.size());
}

bool StageValidator::should_retrain() const
{
    return window_full() && window_rate() > config_.error_threshold;
}

void StageValidator::reset()
{
    window_.clear();
    probes_ = 0;
    mismatches_ = 0;
}

void probe_slot(StageValidator &validator, const BeamAssignment &predicted, const Scene &scene,
                const Environment &env, const ValidationConfig &config, Rng &rng)
{
    const std::size_t n = scene.users.size();
    const std::size_t k = std::min(n, static_cast<std::size_t>(config.sample_rate));
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    // Partial Fisher-Yates: the first k entries are a uniform sample without replacement.
    for (std::size_t i = 0; i < k; ++i)
    {
        const auto j = std::uniform_int_distribution<std::size_t>(i, n - 1)(rng);
        std::swap(idx[i], idx[j]);
    }
    for (std::size_t i = 0; i < k; ++i)
    {
        const SceneUser &u = scene.users[idx[i]];
        const UserChannel ch = generate_channel(env.geometry, env.gain, u.user_id, u.position, scene.bs_position, rng);
        const auto it = predicted.find(u.user_id);
        const bool mismatch = it == predicted.end() || it->second != best_beam_csi(ch, env.codebook);
        validator.record(mismatch);
    }
}

ValidationOutcome run_stage3_validate(const BeamAssignment &predicted, const Scene &scene, const Environment &env,
                                      const ValidationConfig &config, int slots, Rng &rng)
{
    StageValidator validator(config);
    ValidationOutcome out;
    for (int s = 0; s < slots; ++s)
    {
        probe_slot(validator, predicted, scene, env, config, rng);
        out.slots_run = s + 1;
        if (validator.should_retrain())
        {
            out.decision = ValidationDecision::retrain;
            break;
        }
    }
    out.probes = validator.probes();
    out.mismatches = validator.mismatches();
    out.window_rate = validator.window_rate();
    return out;
}

CbsController::CbsController(const SimulationConfig &config, const Environment &env, int n_train,
                             std::uint64_t seed)
    : config_(config), env_(env), n_train_(n_train), seed_(seed), validator_(config.validation),
      probe_rng_(derive_seed(seed, stream::probe))
{
    if (n_train < 1)
        throw std::domain_error("CbsController: n_train must be >= 1");
}

FrameReport CbsController::step(const Scene &frame)
{
    FrameReport report;
    report.state = state_;
    const std::uint64_t f = frame_index_++;
    // The simulator always knows the true channels for scoring; the stage
    // logic decides whether the clustering may read them.
    const ChannelMap channels = acquire_csi(frame, env_, derive_seed(seed_, stream::channel, f));
    const std::uint64_t render_seed = derive_seed(seed_, stream::render, f);

    if (state_.training)
    {
        report.clustered_from_csi = true;
        report.schedule = csi_schedule(channels, env_.codebook, config_.clustering);
        for (const auto &u : frame.users)
        {
            if (static_cast<int>(samples_.size()) >= n_train_)
                break;
            Rng rng = user_render_rng(render_seed, u.user_id);
            LabeledSample s;
            s.image = render_user_image(frame, u.user_id, config_.render, rng);
            s.label = best_beam_csi(channels.at(u.user_id), env_.codebook);
            s.user_id = u.user_id;
            s.true_position = u.position;
            samples_.push_back(std::move(s));
        }
        if (static_cast<int>(samples_.size()) >= n_train_)
        {
            const TrainingConfig training =
                seeded_training(config_.training, derive_seed(seed_, stream::training, static_cast<std::uint64_t>(trainings_++)));
            model_ = train(init_classifier(config_.architecture(), training.weight_init_scale, training.seed),
                           samples_, training);
            samples_.clear();
            validator_.reset();
            state_ = {false, true, true};
            report.model_trained = true;
        }
    }
    else
    {
        ClassifierPredictor predictor(*model_, config_.render);
        const Stage2Result s2 = run_stage2(predictor, frame, env_.codebook, config_.clustering,
                                           config_.vision_sic_ordering, render_seed, &channels);
        report.schedule = s2.schedule;
        probe_slot(validator_, s2.assignment, frame, env_, config_.validation, probe_rng_);
        if (validator_.should_retrain())
        {
            report.retrain_triggered = true;
            state_ = {true, false, false};
        }
    }
    report.metrics = evaluate_schedule(report.schedule, channels, env_.codebook, config_.radio);
    return report;
}

bool result_order(const TrialResult &a, const TrialResult &b)
{
    return std::tie(a.scheme, a.seed, a.sweep_value, a.n_train) < std::tie(b.scheme, b.seed, b.sweep_value, b.n_train);
}

namespace {

struct FrameScore
{
    SystemMetrics metrics;
    double accuracy = 0.0;
    std::size_t clusters = 0;
    std::size_t slots = 0;
};

class TrialAccumulator
{
public:
    void add(const Schedule &schedule, const SystemMetrics &m, double accuracy)
    {
        se_sum_ += m.average_se;
        acc_sum_ += accuracy;
        slot_se_.insert(slot_se_.end(), m.slot_sum_se.begin(), m.slot_sum_se.end());
        clusters_ += schedule.cluster_count();
        slots_ += schedule.depth();
        ++frames_;
    }

    TrialResult finish(Scheme scheme, std::uint64_t seed, std::string sweep_var, double sweep_value, int n_train) const
    {
        TrialResult r;
        r.scheme = scheme;
        r.seed = seed;
        r.sweep_var = std::move(sweep_var);
        r.sweep_value = sweep_value;
        r.n_train = n_train;
        r.avg_se = frames_ ? se_sum_ / frames_ : 0.0;
        r.slot_sum_se = slot_se_;
        r.beam_accuracy = frames_ ? acc_sum_ / frames_ : 0.0;
        r.clusters = clusters_;
        r.slots = slots_;
        return r;
    }

private:
    double se_sum_ = 0.0;
    double acc_sum_ = 0.0;
    std::vector<double> slot_se_;
    std::size_t clusters_ = 0;
    std::size_t slots_ = 0;
    int frames_ = 0;
};

Point reflect(Point p, double w, double d)
{
    auto fold = [](double v, double hi) {
        while (v < 0.0 || v > hi)
            v = v < 0.0 ? -v : 2.0 * hi - v;
        return v;
    };
    return {fold(p.x, w), fold(p.y, d)};
}

/// Scores one scheme on one snapshot.
struct SnapshotEvaluator
{
    const SimulationConfig &config;
    const Environment &env;

    void csi(TrialAccumulator &acc, const ChannelMap &decision_channels, const ChannelMap &current) const
    {
        const Schedule s = csi_schedule(decision_channels, env.codebook, config.clustering);
        acc.add(s, evaluate_schedule(s, current, env.codebook, config.radio),
                agreement(assign_beams_csi(decision_channels, env.codebook), assign_beams_csi(current, env.codebook)));
    }

    void vision(TrialAccumulator &acc, const BeamPredictor &predictor, SicOrdering ordering, const Scene &scene,
                const ChannelMap &current, std::uint64_t render_seed) const
    {
        const Stage2Result r =
            run_stage2(predictor, scene, env.codebook, config.clustering, ordering, render_seed, &current);
        acc.add(r.schedule, evaluate_schedule(r.schedule, current, env.codebook, config.radio),
                agreement(r.assignment, assign_beams_csi(current, env.codebook)));
    }
};

template <typename Fn>
std::vector<TrialResult> for_each_seed(std::span<const std::uint64_t> seeds, int jobs, Fn fn)
{
    std::vector<std::vector<TrialResult>> per_seed(seeds.size());
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    if (workers == 1 || seeds.size() < 2)
    {
        for (std::size_t i = 0; i < seeds.size(); ++i)
            per_seed[i] = fn(seeds[i]);
    }
    else
    {
        std::mutex mu;
        std::size_t next = 0;
        std::exception_ptr failure;
        auto worker = [&]() {
            for (;;)
            {
                std::size_t i;
                {
                    std::lock_guard lock(mu);
                    if (next >= seeds.size() || failure)
                        return;
                    i = next++;
                }
                try
                {
                    per_seed[i] = fn(seeds[i]);
                }
                catch (...)
                {
                    std::lock_guard lock(mu);
                    failure = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < std::min(workers, seeds.size()); ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }
    std::vector<TrialResult> out;
    for (auto &v : per_seed)
        out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    std::stable_sort(out.begin(), out.end(), result_order);
    return out;
}

bool has_scheme(std::span<const Scheme> schemes, Scheme s)
{
    return std::find(schemes.begin(), schemes.end(), s) != schemes.end();
}

} // namespace

std::vector<TrialResult> run_stale_csi_scenario(const SimulationConfig &config, const Environment &env,
                                                const MobilityModel &mobility, std::span<const Scheme> schemes,
                                                int frames, std::uint64_t seed,
                                                const ClassifierParameters *params, int n_train)
{
    if (frames < 1)
        throw std::domain_error("run_stale_csi_scenario: frames must be >= 1");
    mobility.validate();
    if (has_scheme(schemes, Scheme::vision) && params == nullptr)
        throw std::invalid_argument("run_stale_csi_scenario: vision scheme needs a trained model");

    // The trajectory depends only on the seed, never on the staleness.
    std::vector<Scene> trajectory;
    trajectory.reserve(static_cast<std::size_t>(frames));
    {
        Rng scene_rng(derive_seed(seed, stream::scene));
        trajectory.push_back(generate_scene(config.scene, scene_rng));
        Rng walk(derive_seed(seed, stream::mobility));
        std::normal_distribution<double> step(0.0, 1.0);
        for (int t = 1; t < frames; ++t)
        {
            Scene next = trajectory.back();
            for (auto &u : next.users)
            {
                const double dx = step(walk) * mobility.step_sigma;
                const double dy = step(walk) * mobility.step_sigma;
                u.position = reflect({u.position.x + dx, u.position.y + dy}, next.room_width, next.room_depth);
                if (u.position == next.bs_position)
                    u.position.y = std::min(next.room_depth, u.position.y + 1e-9);
            }
            trajectory.push_back(std::move(next));
        }
    }
    std::vector<ChannelMap> channels;
    channels.reserve(trajectory.size());
    for (std::size_t t = 0; t < trajectory.size(); ++t)
        channels.push_back(acquire_csi(trajectory[t], env, derive_seed(seed, stream::channel, t)));

    const SnapshotEvaluator eval{config, env};
    std::map<Scheme, TrialAccumulator> acc;
    for (std::size_t t = 0; t < trajectory.size(); ++t)
    {
        const ChannelMap &now = channels[t];
        const std::uint64_t render_seed = derive_seed(seed, stream::render, t);
        for (Scheme s : schemes)
        {
            switch (s)
            {
            case Scheme::csi_fresh:
                eval.csi(acc[s], now, now);
                break;
            case Scheme::csi_stale: {
                const std::size_t src = t >= static_cast<std::size_t>(mobility.staleness)
                                            ? t - static_cast<std::size_t>(mobility.staleness)
                                            : 0;
                eval.csi(acc[s], channels[src], now);
                break;
            }
            case Scheme::vision:
                eval.vision(acc[s], ClassifierPredictor(*params, config.render), config.vision_sic_ordering,
                            trajectory[t], now, render_seed);
                break;
            case Scheme::oracle_vision:
                eval.vision(acc[s], OraclePredictor(now, env.codebook), config.clustering.sic_ordering,
                            trajectory[t], now, render_seed);
                break;
            }
        }
    }

    std::vector<TrialResult> out;
    for (Scheme s : schemes)
        out.push_back(acc[s].finish(s, seed, "staleness", mobility.staleness, s == Scheme::vision ? n_train : 0));
    return out;
}

std::vector<TrialResult> run_stale_sweep(const SimulationConfig &config, std::span<const std::uint64_t> seeds,
                                         std::span<const int> staleness, int n_train,
                                         std::span<const Scheme> schemes, int jobs)
{
    config.validate();
    const Environment env = Environment::from_config(config);
    return for_each_seed(seeds, jobs, [&](std::uint64_t seed) {
        std::optional<ClassifierParameters> params;
        if (has_scheme(schemes, Scheme::vision))
            params = run_stage1(fresh_scene_stream(config.scene, derive_seed(seed, stream::dataset)), env, n_train,
                                config, seed)
                         .params;
        std::vector<TrialResult> out;
        for (int s : staleness)
        {
            MobilityModel m = config.mobility;
            m.staleness = s;
            auto r = run_stale_csi_scenario(config, env, m, schemes, config.frames, seed, params ? &*params : nullptr,
                                            n_train);
            out.insert(out.end(), r.begin(), r.end());
        }
        return out;
    });
}

std::vector<TrialResult> run_comparison(const SimulationConfig &config, std::span<const std::uint64_t> seeds,
                                        std::span<const int> user_counts, std::span<const int> n_trains,
                                        std::span<const Scheme> schemes, int eval_frames, int jobs)
{
    config.validate();
    if (seeds.empty())
        throw std::domain_error("run_comparison: at least one seed is required");
    if (eval_frames < 1)
        throw std::domain_error("run_comparison: eval_frames must be >= 1");
    const Environment env = Environment::from_config(config);
    const bool want_vision = has_scheme(schemes, Scheme::vision);

    return for_each_seed(seeds, jobs, [&](std::uint64_t seed) {
        std::vector<std::pair<int, ClassifierParameters>> models;
        if (want_vision)
            for (int n : n_trains)
                models.emplace_back(
                    n, run_stage1(fresh_scene_stream(config.scene, derive_seed(seed, stream::dataset)), env, n, config,
                                  seed)
                           .params);

        const SnapshotEvaluator eval{config, env};
        std::vector<TrialResult> out;
        for (int users : user_counts)
        {
            SceneSpec spec = config.scene;
            spec.user_count = users;
            std::map<Scheme, TrialAccumulator> acc;
            std::vector<TrialAccumulator> vision_acc(models.size());
            for (int e = 0; e < eval_frames; ++e)
            {
                const auto frame = static_cast<std::uint64_t>(e);
                Rng scene_rng(derive_seed(derive_seed(seed, stream::scene, frame), static_cast<std::uint64_t>(users)));
                const Scene scene = generate_scene(spec, scene_rng);
                const ChannelMap now = acquire_csi(scene, env, derive_seed(seed, stream::channel, frame));
                const std::uint64_t render_seed = derive_seed(seed, stream::render, frame);
                for (Scheme s : schemes)
                {
                    if (s == Scheme::csi_fresh || s == Scheme::csi_stale)
                        eval.csi(acc[s], now, now); // no motion between snapshots: stale == fresh
                    else if (s == Scheme::oracle_vision)
                        eval.vision(acc[s], OraclePredictor(now, env.codebook), config.clustering.sic_ordering, scene,
                                    now, render_seed);
                }
                for (std::size_t m = 0; m < models.size(); ++m)
                    eval.vision(vision_acc[m], ClassifierPredictor(models[m].second, config.render),
                                config.vision_sic_ordering, scene, now, render_seed);
            }
            for (Scheme s : schemes)
                if (s != Scheme::vision)
                    out.push_back(acc[s].finish(s, seed, "user_count", users, 0));
            for (std::size_t m = 0; m < models.size(); ++m)
                out.push_back(vision_acc[m].finish(Scheme::vision, seed, "user_count", users, models[m].first));
        }
        return out;
    });
}

std::vector<SchemeSummary> summarize(std::span<const TrialResult> results)
{
    using Key = std::tuple<Scheme, double, int>;
    std::map<Key, std::vector<const TrialResult *>> groups;
    for (const auto &r : results)
        groups[{r.scheme, r.sweep_value, r.n_train}].push_back(&r);

    auto mean_std = [](const std::vector<double> &v) {
        double m = 0.0;
        for (double x : v)
            m += x;
        m /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v)
            var += (x - m) * (x - m);
        const double sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
        return std::pair{m, sd};
    };

    std::map<double, double> csi_mean;
    std::vector<SchemeSummary> out;
    for (const auto &[key, rows] : groups)
    {
        std::vector<double> se, acc;
        for (const auto *r : rows)
        {
            se.push_back(r->avg_se);
            acc.push_back(r->beam_accuracy);
        }
        SchemeSummary s;
        std::tie(s.scheme, s.sweep_value, s.n_train) = key;
        s.trials = rows.size();
        std::tie(s.mean_se, s.std_se) = mean_std(se);
        std::tie(s.mean_accuracy, s.std_accuracy) = mean_std(acc);
        if (s.scheme == Scheme::csi_fresh)
            csi_mean[s.sweep_value] = s.mean_se;
        out.push_back(s);
    }
    for (auto &s : out)
    {
        const auto it = csi_mean.find(s.sweep_value);
        if (it != csi_mean.end() && it->second > 0.0)
            s.ratio_to_csi = s.mean_se / it->second;
    }
    return out;
}

} // namespace vanoma
