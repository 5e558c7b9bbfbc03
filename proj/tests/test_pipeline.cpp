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
#include <map>

#include "vanoma/pipeline.hpp"

using namespace vanoma;
using Catch::Matchers::WithinAbs;

namespace {

// Small network and short training keep the suite fast.
SimulationConfig small_config()
{
    SimulationConfig c;
    c.hidden_layers = {16};
    c.training.epochs = 5;
    return c;
}

Scene make_scene(int users, std::uint64_t seed)
{
    SceneSpec spec;
    spec.user_count = users;
    Rng rng(seed);
    return generate_scene(spec, rng);
}

} // namespace

TEST_CASE("stage 2 with a perfect predictor reproduces CSI clustering")
{
    const SimulationConfig cfg = small_config();
    const Environment env = Environment::from_config(cfg);
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
        const Scene scene = make_scene(100, seed);
        const ChannelMap ch = acquire_csi(scene, env, seed);
        const Schedule csi = csi_schedule(ch, env.codebook, cfg.clustering);
        const Stage2Result s2 = run_stage2(OraclePredictor(ch, env.codebook), scene, env.codebook, cfg.clustering,
                                           cfg.clustering.sic_ordering, 7, &ch);
        CHECK(s2.assignment == assign_beams_csi(ch, env.codebook));
        CHECK(s2.schedule == csi);
        CHECK(evaluate_schedule(s2.schedule, ch, env.codebook, cfg.radio) ==
              evaluate_schedule(csi, ch, env.codebook, cfg.radio));
    }
}

TEST_CASE("stage 2 determinism and forced misprediction")
{
    const SimulationConfig cfg = small_config();
    const Environment env = Environment::from_config(cfg);
    const Scene scene = make_scene(60, 3);
    const ChannelMap ch = acquire_csi(scene, env, 3);
    const ClassifierParameters params = init_classifier(cfg.architecture(), 1.0, 11);
    const ClassifierPredictor vision(params, cfg.render);

    const auto a = run_stage2(vision, scene, env.codebook, cfg.clustering, SicOrdering::arbitrary_by_id, 42);
    const auto b = run_stage2(vision, scene, env.codebook, cfg.clustering, SicOrdering::arbitrary_by_id, 42);
    CHECK(a.assignment == b.assignment);
    CHECK(a.schedule == b.schedule);

    // Every user forced onto one beam: the diff against CSI is exactly the
    // users whose true best beam is elsewhere.
    const auto truth = assign_beams_csi(ch, env.codebook);
    const auto forced =
        run_stage2(FixedBeamPredictor(5), scene, env.codebook, cfg.clustering, SicOrdering::arbitrary_by_id, 42);
    int diff = 0, expected = 0;
    for (const auto &[u, beam] : truth)
    {
        diff += forced.assignment.at(u) != beam;
        expected += beam != 5;
    }
    CHECK(diff == expected);
    CHECK(forced.schedule.depth() == static_cast<std::size_t>((60 + cfg.clustering.n_max - 1) / cfg.clustering.n_max));

    CHECK_THROWS_AS(run_stage2(vision, scene, env.codebook, cfg.clustering, SicOrdering::by_channel_gain, 42),
                    std::invalid_argument);
}

TEST_CASE("stage 3 validation")
{
    const SimulationConfig cfg = small_config();
    const Environment env = Environment::from_config(cfg);
    const Scene scene = make_scene(100, 8);
    const ChannelMap ch = acquire_csi(scene, env, 8);
    const BeamAssignment truth = assign_beams_csi(ch, env.codebook);

    SECTION("validator window")
    {
        ValidationConfig v{1, 4, 0.25};
        StageValidator w(v);
        for (bool m : {true, false, false})
            w.record(m);
        CHECK(!w.window_full());
        CHECK(!w.should_retrain()); // 1/3 > 0.25, but the window is not yet full
        w.record(false);
        CHECK(w.window_rate() == 0.25);
        CHECK(!w.should_retrain()); // strictly greater is required
        w.record(true);             // oldest (true) falls out, window = F F F T
        CHECK(w.window_rate() == 0.25);
        w.record(true);
        CHECK(w.should_retrain());
        CHECK(w.probes() == 6);
        CHECK(w.mismatches() == 3);
        w.reset();
        CHECK(w.probes() == 0);
        CHECK(w.window_rate() == 0.0);
    }

    SECTION("correct predictions never trigger retraining")
    {
        Rng rng(1);
        const auto out = run_stage3_validate(truth, scene, env, cfg.validation, 200, rng);
        CHECK(out.decision == ValidationDecision::continue_execution);
        CHECK(out.mismatches == 0);
        CHECK(out.probes == 200 * cfg.validation.sample_rate);
        CHECK(out.slots_run == 200);
    }

    SECTION("all-wrong predictions trigger as soon as the window fills")
    {
        BeamAssignment wrong;
        for (const auto &[u, b] : truth)
            wrong[u] = (b + 1) % 64;
        Rng rng(2);
        const auto out = run_stage3_validate(wrong, scene, env, cfg.validation, 200, rng);
        CHECK(out.decision == ValidationDecision::retrain);
        CHECK(out.slots_run == cfg.validation.window / cfg.validation.sample_rate);
        CHECK(out.window_rate == 1.0);
    }

    SECTION("threshold 1.0 never triggers")
    {
        BeamAssignment wrong;
        for (const auto &[u, b] : truth)
            wrong[u] = (b + 1) % 64;
        ValidationConfig v = cfg.validation;
        v.error_threshold = 1.0;
        Rng rng(3);
        const auto out = run_stage3_validate(wrong, scene, env, v, 100, rng);
        CHECK(out.decision == ValidationDecision::continue_execution);
        CHECK(out.slots_run == 100);
    }

    SECTION("probe mismatch rate matches the beam histogram")
    {
        std::map<int, int> hist;
        for (const auto &[u, b] : truth)
            ++hist[b];
        const auto mode = std::max_element(hist.begin(), hist.end(),
                                           [](const auto &x, const auto &y) { return x.second < y.second; });
        BeamAssignment fixed;
        for (const auto &[u, b] : truth)
            fixed[u] = mode->first;
        const double expected = 1.0 - static_cast<double>(mode->second) / 100.0;

        ValidationConfig v = cfg.validation;
        v.error_threshold = 1.0;
        Rng rng(4);
        const auto out = run_stage3_validate(fixed, scene, env, v, 5000, rng);
        const double rate = static_cast<double>(out.mismatches) / out.probes;
        // 10000 Bernoulli draws: standard error below 0.005.
        CHECK_THAT(rate, WithinAbs(expected, 0.02));
    }
}

TEST_CASE("stage 1 data collection")
{
    SimulationConfig cfg = small_config();
    const Environment env = Environment::from_config(cfg);
    const auto r = run_stage1(fresh_scene_stream(cfg.scene, 5), env, 250, cfg, 5);
    CHECK(r.samples.size() == 250);
    CHECK(r.schedules.size() == 3);
    CHECK(r.epoch_losses.size() == static_cast<std::size_t>(cfg.training.epochs));
    CHECK(r.params.all_finite());
    for (const auto &s : r.samples)
        CHECK(s.label == best_beam_csi(steering_vector(env.geometry, angle_from_boresight(s.true_position, cfg.scene.bs_position)),
                                       env.codebook));

    const auto again = run_stage1(fresh_scene_stream(cfg.scene, 5), env, 250, cfg, 5);
    CHECK(again.params == r.params);
    CHECK_THROWS(run_stage1(fresh_scene_stream(cfg.scene, 5), env, 0, cfg, 5));
}

TEST_CASE("controller stage transitions")
{
    SimulationConfig cfg = small_config();
    cfg.scene.user_count = 100;
    const Environment env = Environment::from_config(cfg);
    CbsController ctl(cfg, env, 150, 9);
    auto stream = fresh_scene_stream(cfg.scene, 9);

    CHECK(ctl.state().training);
    CHECK(ctl.state().valid());

    const FrameReport f0 = ctl.step(stream());
    CHECK(f0.state.training);
    CHECK(f0.clustered_from_csi);
    CHECK(!f0.model_trained);
    CHECK(!ctl.model());

    const FrameReport f1 = ctl.step(stream());
    CHECK(f1.state.training);
    CHECK(f1.model_trained);
    CHECK(ctl.model());
    CHECK(ctl.state().execution);
    CHECK(ctl.state().validation);
    CHECK(!ctl.state().training);

    const FrameReport f2 = ctl.step(stream());
    CHECK(f2.state.execution);
    CHECK(!f2.clustered_from_csi);
    CHECK(ctl.validator().probes() == cfg.validation.sample_rate);
    CHECK(f2.metrics.average_se >= 0.0);

    // An untrained-quality model is mostly wrong, so probing must eventually
    // send the controller back to training.
    bool retrained = false;
    for (int i = 0; i < 40 && !retrained; ++i)
    {
        const FrameReport f = ctl.step(stream());
        CHECK(f.state.valid());
        retrained = f.retrain_triggered;
    }
    CHECK(retrained);
    CHECK(ctl.state().training);

    StageState bad{true, true, false};
    CHECK(!bad.valid());
}

TEST_CASE("stale CSI scenario")
{
    SimulationConfig cfg = small_config();
    const Environment env = Environment::from_config(cfg);
    const std::vector<Scheme> schemes{Scheme::csi_fresh, Scheme::csi_stale, Scheme::oracle_vision};

    SECTION("zero staleness equals fresh CSI")
    {
        MobilityModel m{0.1, 0};
        const auto r = run_stale_csi_scenario(cfg, env, m, schemes, 6, 4, nullptr);
        REQUIRE(r.size() == 3);
        CHECK(r[0].avg_se == r[1].avg_se);
        CHECK(r[0].slot_sum_se == r[1].slot_sum_se);
        CHECK(r[1].beam_accuracy == 1.0);
    }

    SECTION("static users make staleness irrelevant")
    {
        MobilityModel m{0.0, 4};
        const auto r = run_stale_csi_scenario(cfg, env, m, schemes, 6, 4, nullptr);
        CHECK(r[0].avg_se == r[1].avg_se);
    }

    SECTION("trajectory does not depend on staleness")
    {
        const auto a = run_stale_csi_scenario(cfg, env, {0.1, 0}, schemes, 6, 4, nullptr);
        const auto b = run_stale_csi_scenario(cfg, env, {0.1, 5}, schemes, 6, 4, nullptr);
        CHECK(a[0].avg_se == b[0].avg_se);
        CHECK(a[2].avg_se == b[2].avg_se);
        CHECK(a[0].avg_se == a[2].avg_se);
    }

    const std::vector<Scheme> with_vision{Scheme::vision};
    CHECK_THROWS_AS(run_stale_csi_scenario(cfg, env, {}, with_vision, 3, 1, nullptr), std::invalid_argument);
}

TEST_CASE("summaries")
{
    std::vector<TrialResult> rows(4);
    rows[0].scheme = Scheme::csi_fresh;
    rows[0].avg_se = 10.0;
    rows[1].scheme = Scheme::csi_fresh;
    rows[1].avg_se = 14.0;
    rows[2].scheme = Scheme::vision;
    rows[2].n_train = 100;
    rows[2].avg_se = 3.0;
    rows[3].scheme = Scheme::vision;
    rows[3].n_train = 100;
    rows[3].avg_se = 5.0;
    const auto s = summarize(rows);
    REQUIRE(s.size() == 2);
    CHECK(s[0].mean_se == 12.0);
    CHECK_THAT(s[0].std_se, WithinAbs(std::sqrt(8.0), 1e-12));
    CHECK(s[0].ratio_to_csi == 1.0);
    CHECK(s[1].ratio_to_csi == 4.0 / 12.0);
}
