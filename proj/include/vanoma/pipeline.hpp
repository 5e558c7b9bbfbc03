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
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vanoma/channel.hpp"
#include "vanoma/clustering.hpp"
#include "vanoma/noma_phy.hpp"
#include "vanoma/predictor.hpp"
#include "vanoma/scene.hpp"

namespace vanoma {

struct ValidationConfig
{
    int sample_rate = 2; // users probed with CSI per slot
    int window = 50;     // probes in the sliding window
    double error_threshold = 0.1;

    void validate() const;
};

/// Isotropic Gaussian random walk reflected at the room walls.
struct MobilityModel
{
    double step_sigma = 0.1; // meters per frame
    int staleness = 0;       // frames between CSI acquisition and use

    void validate() const;
};

enum class Scheme
{
    csi_fresh,
    csi_stale,
    vision,
    oracle_vision
};

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string &s);

/// Every module setting a simulation needs.
struct SimulationConfig
{
    int num_antennas = 64;
    double element_spacing = 0.5;
    int beam_count = 64;
    GainModel gain;
    SceneSpec scene;
    RenderConfig render;
    std::vector<int> hidden_layers{128};
    TrainingConfig training;
    ClusteringConfig clustering;
    SicOrdering vision_sic_ordering = SicOrdering::arbitrary_by_id;
    RadioConfig radio;
    ValidationConfig validation;
    MobilityModel mobility;
    int frames = 20;

    void validate() const;
    Architecture architecture() const;
};

/// Array, gain model and codebook shared by every trial of a configuration.
struct Environment
{
    ArrayGeometry geometry;
    GainModel gain;
    Codebook codebook;

    static Environment from_config(const SimulationConfig &config);
};

/// True channels of every user in the scene. Each user's random stream is
/// derived from (seed, user_id).
ChannelMap acquire_csi(const Scene &scene, const Environment &env, std::uint64_t seed);

BeamAssignment assign_beams_csi(const ChannelMap &channels, const Codebook &codebook);

/// CSI-based NOMA-BB followed by SIC ordering with the configured mode.
Schedule csi_schedule(const ChannelMap &channels, const Codebook &codebook, const ClusteringConfig &config);

class BeamPredictor
{
public:
    virtual ~BeamPredictor() = default;
    virtual int predict(const Scene &scene, int user_id, Rng &render_rng) const = 0;
};

/// Renders the single-user image and applies the classifier argmax.
class ClassifierPredictor : public BeamPredictor
{
public:
    ClassifierPredictor(const ClassifierParameters &params, const RenderConfig &render)
        : params_(params), render_(render)
    {
    }
    int predict(const Scene &scene, int user_id, Rng &render_rng) const override;

private:
    const ClassifierParameters &params_;
    RenderConfig render_;
};

/// Diagnostic predictor returning the CSI best beam of the true channel.
class OraclePredictor : public BeamPredictor
{
public:
    OraclePredictor(const ChannelMap &channels, const Codebook &codebook) : channels_(channels), codebook_(codebook) {}
    int predict(const Scene &scene, int user_id, Rng &render_rng) const override;

private:
    const ChannelMap &channels_;
    const Codebook &codebook_;
};

/// Always answers the same beam.
class FixedBeamPredictor : public BeamPredictor
{
public:
    explicit FixedBeamPredictor(int beam) : beam_(beam) {}
    int predict(const Scene &, int, Rng &) const override { return beam_; }

private:
    int beam_;
};

// --- Stage 1 -----------------------------------------------------------------

using SceneStream = std::function<Scene()>;

struct Stage1Result
{
    ClassifierParameters params;
    std::vector<Schedule> schedules; // CSI-based clustering of every stage-1 frame
    std::vector<LabeledSample> samples;
    std::vector<double> epoch_losses;
};

/// Collects images and CSI labels of every user frame by frame until n_train
/// samples exist, clusters each frame from CSI, then trains the classifier.
Stage1Result run_stage1(const SceneStream &scenes, const Environment &env, int n_train,
                        const SimulationConfig &config, std::uint64_t seed);

/// Scene stream of fresh random populations drawn from config.scene.
SceneStream fresh_scene_stream(const SceneSpec &spec, std::uint64_t seed);

// --- Stage 2 -----------------------------------------------------------------

struct Stage2Result
{
    BeamAssignment assignment;
    Schedule schedule;
};

/// Vision clustering: predicts every user's beam (per-user render streams
/// derived from render_seed) and runs NOMA-BB. SIC ordering uses `ordering`;
/// gain ordering needs `gain_channels`, arbitrary ordering reads no CSI.
Stage2Result run_stage2(const BeamPredictor &predictor, const Scene &scene, const Codebook &codebook,
                        const ClusteringConfig &clustering, SicOrdering ordering, std::uint64_t render_seed,
                        const ChannelMap *gain_channels = nullptr);

// --- Stage 3 -----------------------------------------------------------------

/// Sliding window of CSI probe outcomes.
class StageValidator
{
public:
    explicit StageValidator(const ValidationConfig &config);

    void record(bool mismatch);
    double window_rate() const;
    bool window_full() const { return static_cast<int>(window_.size()) >= config_.window; }
    /// True iff the window is full and its mismatch rate exceeds the threshold.
    bool should_retrain() const;
    void reset();

    int probes() const { return probes_; }
    int mismatches() const { return mismatches_; }

private:
    ValidationConfig config_;
    std::deque<bool> window_;
    int probes_ = 0;
    int mismatches_ = 0;
};

/// Probes sample_rate distinct users of the scene with fresh CSI and records
/// whether their predicted beam differs from the CSI best beam.
void probe_slot(StageValidator &validator, const BeamAssignment &predicted, const Scene &scene,
                const Environment &env, const ValidationConfig &config, Rng &rng);

enum class ValidationDecision
{
    continue_execution,
    retrain
};

struct ValidationOutcome
{
    ValidationDecision decision = ValidationDecision::continue_execution;
    int probes = 0;
    int mismatches = 0;
    double window_rate = 0.0;
    int slots_run = 0;
};

/// Runs up to `slots` probe rounds; stops at the first retrain decision.
ValidationOutcome run_stage3_validate(const BeamAssignment &predicted, const Scene &scene, const Environment &env,
                                      const ValidationConfig &config, int slots, Rng &rng);

// --- Controller --------------------------------------------------------------

struct StageState
{
    bool training = true;
    bool execution = false;
    bool validation = false;

    bool valid() const { return training != execution && (!validation || execution); }
};

struct FrameReport
{
    StageState state; // state the frame was served in
    Schedule schedule;
    SystemMetrics metrics;
    bool clustered_from_csi = false;
    bool model_trained = false;     // stage 1 finished during this frame
    bool retrain_triggered = false; // stage 3 requested stage 1 during this frame
};

/// Drives the three stages over a sequence of frames.
class CbsController
{
public:
    CbsController(const SimulationConfig &config, const Environment &env, int n_train, std::uint64_t seed);

    FrameReport step(const Scene &frame);
    const StageState &state() const { return state_; }
    const std::optional<ClassifierParameters> &model() const { return model_; }
    const StageValidator &validator() const { return validator_; }

private:
    const SimulationConfig &config_;
    const Environment &env_;
    int n_train_;
    std::uint64_t seed_;
    std::uint64_t frame_index_ = 0;
    int trainings_ = 0;
    StageState state_;
    std::vector<LabeledSample> samples_;
    std::optional<ClassifierParameters> model_;
    StageValidator validator_;
    Rng probe_rng_;
};

// --- Experiments -------------------------------------------------------------

struct TrialResult
{
    Scheme scheme = Scheme::csi_fresh;
    std::uint64_t seed = 0;
    std::string sweep_var;
    double sweep_value = 0.0;
    int n_train = 0;
    double avg_se = 0.0;             // mean over frames of the schedule-average SE
    std::vector<double> slot_sum_se; // every slot of every frame, in order
    double beam_accuracy = 0.0;
    std::size_t clusters = 0;
    std::size_t slots = 0;

    bool operator==(const TrialResult &) const = default;
};

/// Result ordering used by every report: scheme, seed, sweep value, n_train.
bool result_order(const TrialResult &a, const TrialResult &b);

/// Users move for `frames` frames. csi_stale clusters from channels
/// `mobility.staleness` frames old and is scored on current channels.
/// `params` is required when vision is among the schemes.
std::vector<TrialResult> run_stale_csi_scenario(const SimulationConfig &config, const Environment &env,
                                                const MobilityModel &mobility, std::span<const Scheme> schemes,
                                                int frames, std::uint64_t seed,
                                                const ClassifierParameters *params, int n_train = 0);

/// Trains one classifier per seed (stage 1 on fresh scenes) and sweeps staleness.
std::vector<TrialResult> run_stale_sweep(const SimulationConfig &config, std::span<const std::uint64_t> seeds,
                                         std::span<const int> staleness, int n_train,
                                         std::span<const Scheme> schemes, int jobs = 1);

/// Per seed and n_train: stage 1 on fresh scenes, then every scheme on
/// `eval_frames` fresh snapshots for each user count. csi_fresh and
/// oracle_vision rows carry n_train = 0.
std::vector<TrialResult> run_comparison(const SimulationConfig &config, std::span<const std::uint64_t> seeds,
                                        std::span<const int> user_counts, std::span<const int> n_trains,
                                        std::span<const Scheme> schemes, int eval_frames = 1, int jobs = 1);

struct SchemeSummary
{
    Scheme scheme = Scheme::csi_fresh;
    int n_train = 0;
    double sweep_value = 0.0;
    std::size_t trials = 0;
    double mean_se = 0.0;
    double std_se = 0.0;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    double ratio_to_csi = 0.0; // mean_se / mean csi_fresh SE at the same sweep value, 0 if unavailable
};

std::vector<SchemeSummary> summarize(std::span<const TrialResult> results);

} // namespace vanoma
