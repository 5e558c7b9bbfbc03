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

// Command-line front end: dataset generation, training, evaluation and the
// CSI / vision / stale-CSI experiments.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vanoma/config.hpp"
#include "vanoma/persistence.hpp"
#include "vanoma/pipeline.hpp"
#include "vanoma/report.hpp"

namespace fs = std::filesystem;
using namespace vanoma;

namespace {

struct Options
{
    std::string config_path;
    std::string out_dir;
    std::string seeds;
    int jobs = 1;
    int samples = 500;
    std::string model_path;
    std::string data_path;
};

class CliError : public std::runtime_error
{
public:
    CliError(std::string kind, const std::string &msg) : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string &kind() const { return kind_; }

private:
    std::string kind_;
};

ExperimentConfig load_config(const Options &opt)
{
    ExperimentConfig cfg = opt.config_path.empty() ? parse_config_text("") : parse_config(opt.config_path);
    if (!opt.seeds.empty())
    {
        try
        {
            cfg.seeds = parse_seed_list(opt.seeds);
        }
        catch (const std::exception &e)
        {
            throw CliError("usage", std::string("--seeds: ") + e.what());
        }
    }
    if (!opt.out_dir.empty())
        cfg.output_dir = opt.out_dir;
    return cfg;
}

fs::path output_dir(const ExperimentConfig &cfg)
{
    fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    return dir;
}

std::string timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const fs::path &path, const std::string &command, const ExperimentConfig &cfg,
                    const std::vector<std::pair<std::string, std::string>> &extra)
{
    std::ofstream out(path);
    out << "# vanoma run manifest\n";
    out << "tool = vanoma " << VANOMA_VERSION << "\n";
    out << "command = " << command << "\n";
    out << "timestamp = " << timestamp() << "\n";
    for (const auto &[k, v] : extra)
        out << k << " = " << v << "\n";
    out << "\n# resolved configuration\n" << serialize_config(cfg);
    if (!out)
        throw CliError("io", "cannot write " + path.string());
}

template <typename Fn>
void write_file(const fs::path &path, Fn fn)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw CliError("io", "cannot open " + path.string() + " for writing");
    fn(out);
    if (!out)
        throw CliError("io", "write to " + path.string() + " failed");
}

std::string seed_text(const std::vector<std::uint64_t> &seeds)
{
    std::string s;
    for (std::size_t i = 0; i < seeds.size(); ++i)
        s += (i ? "," : "") + std::to_string(seeds[i]);
    return s;
}

int cmd_gen_data(const Options &opt)
{
    const ExperimentConfig cfg = load_config(opt);
    if (opt.samples < 1)
        throw CliError("usage", "--samples must be >= 1");
    const auto dir = output_dir(cfg);
    const Environment env = Environment::from_config(cfg.sim);
    const std::uint64_t seed = cfg.seeds.front();
    Rng rng(derive_seed(seed, stream::dataset));
    const auto samples =
        make_training_set(cfg.sim.scene, env.geometry, env.gain, env.codebook, opt.samples, cfg.sim.render, rng);
    const fs::path path = opt.data_path.empty() ? dir / "dataset.bin" : fs::path(opt.data_path);
    save_dataset(path, samples, cfg.sim.beam_count);
    write_manifest(dir / "dataset_manifest.txt", "gen-data", cfg,
                   {{"seed", std::to_string(seed)}, {"samples", std::to_string(opt.samples)}, {"dataset", path.string()}});
    std::cout << "wrote " << samples.size() << " samples to " << path.string() << "\n";
    return 0;
}

int cmd_train(const Options &opt)
{
    const ExperimentConfig cfg = load_config(opt);
    const auto dir = output_dir(cfg);
    const fs::path data = opt.data_path.empty() ? dir / "dataset.bin" : fs::path(opt.data_path);
    const fs::path model_path = opt.model_path.empty() ? dir / "model.bin" : fs::path(opt.model_path);
    const Dataset ds = load_dataset(data);
    Architecture arch = cfg.sim.architecture();
    if (ds.width * ds.height != arch.input_size || ds.beam_count != arch.output_size)
        throw CliError("data", "dataset shape (" + std::to_string(ds.width) + "x" + std::to_string(ds.height) + ", " +
                                   std::to_string(ds.beam_count) + " beams) does not match the configured model");

    TrainingConfig training = cfg.sim.training;
    training.seed = derive_seed(training.seed, stream::training, cfg.seeds.front());
    std::vector<double> losses;
    const auto params = train(init_classifier(arch, training.weight_init_scale, training.seed), ds.samples, training,
                              &losses);
    save_model(model_path, params);
    const double acc = top1_accuracy(params, ds.samples);
    write_manifest(dir / "train_manifest.txt", "train", cfg,
                   {{"seed", std::to_string(cfg.seeds.front())},
                    {"dataset", data.string()},
                    {"model", model_path.string()},
                    {"final_epoch_loss", format_number(losses.back())},
                    {"train_accuracy", format_number(acc)}});
    std::cout << "model=" << model_path.string() << " final_loss=" << format_number(losses.back())
              << " train_accuracy=" << format_number(acc) << "\n";
    return 0;
}

int cmd_evaluate(const Options &opt)
{
    if (opt.model_path.empty() || opt.data_path.empty())
        throw CliError("usage", "evaluate needs --model and --data");
    const ClassifierParameters params = load_model(opt.model_path);
    const Dataset ds = load_dataset(opt.data_path);
    if (ds.samples.empty())
        throw CliError("data", "dataset is empty");
    if (ds.width * ds.height != params.architecture().input_size)
        throw CliError("data", "dataset image size does not match the model input");
    std::cout << "accuracy=" << format_number(top1_accuracy(params, ds.samples)) << " samples=" << ds.samples.size()
              << "\n";
    return 0;
}

void write_experiment(const fs::path &dir, const std::string &stem, const std::string &command,
                      const ExperimentConfig &cfg, const Options &opt, const std::vector<TrialResult> &results,
                      const std::string &sweep_var)
{
    write_file(dir / (stem + ".csv"), [&](std::ostream &o) { write_results_csv(o, results); });
    write_file(dir / (stem + "_slots.csv"), [&](std::ostream &o) { write_slot_csv(o, results); });
    const auto summary = summarize(results);
    write_file(dir / (stem + "_summary.csv"), [&](std::ostream &o) { write_summary_csv(o, summary); });
    write_manifest(dir / (stem + "_manifest.txt"), command, cfg,
                   {{"seeds", seed_text(cfg.seeds)}, {"jobs", std::to_string(opt.jobs)}, {"sweep_var", sweep_var}});
    for (const auto &s : summary)
        std::cout << to_string(s.scheme) << " " << sweep_var << "=" << format_number(s.sweep_value)
                  << " n_train=" << s.n_train << " mean_se=" << format_number(s.mean_se)
                  << " mean_acc=" << format_number(s.mean_accuracy) << " ratio_to_csi=" << format_number(s.ratio_to_csi)
                  << "\n";
}

int cmd_compare(const Options &opt)
{
    const ExperimentConfig cfg = load_config(opt);
    const auto dir = output_dir(cfg);
    const auto results = run_comparison(cfg.sim, cfg.seeds, cfg.user_counts, cfg.n_train, cfg.compare_schemes,
                                        cfg.eval_frames, opt.jobs);
    write_experiment(dir, "compare", "compare", cfg, opt, results, "user_count");
    return 0;
}

int cmd_stale_sweep(const Options &opt)
{
    const ExperimentConfig cfg = load_config(opt);
    const auto dir = output_dir(cfg);
    const auto results =
        run_stale_sweep(cfg.sim, cfg.seeds, cfg.staleness_sweep, cfg.n_train.front(), cfg.stale_schemes, opt.jobs);
    write_experiment(dir, "stale_sweep", "stale-sweep", cfg, opt, results, "staleness");
    return 0;
}

int cmd_show_config(const Options &opt)
{
    std::cout << serialize_config(load_config(opt));
    return 0;
}

std::string one_line(std::string s)
{
    for (auto &c : s)
        if (c == '\n' || c == '\r')
            c = ' ';
    return s;
}

int fail(const std::string &kind, const std::string &msg, int code = 1)
{
    std::cerr << "vanoma: error: " << kind << ": " << one_line(msg) << "\n";
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"vanoma: vision-assisted user clustering for mmWave-NOMA"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("vanoma ") + VANOMA_VERSION);

    Options opt;
    auto common = [&](CLI::App *sub) {
        sub->add_option("--config", opt.config_path, "Experiment config (INI)")->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out_dir, "Output directory (overrides experiment.output_dir)");
        sub->add_option("--seeds", opt.seeds, "Seed list, e.g. 1,2,5-8");
        sub->add_option("--jobs", opt.jobs, "Worker threads for independent trials")->check(CLI::PositiveNumber);
    };

    auto *gen = app.add_subcommand("gen-data", "Generate a labelled dataset");
    common(gen);
    gen->add_option("--samples", opt.samples, "Number of samples")->check(CLI::PositiveNumber);
    gen->add_option("--data", opt.data_path, "Dataset output path (default OUT/dataset.bin)");

    auto *trn = app.add_subcommand("train", "Train the beam classifier on a dataset");
    common(trn);
    trn->add_option("--data", opt.data_path, "Dataset path (default OUT/dataset.bin)");
    trn->add_option("--model", opt.model_path, "Model output path (default OUT/model.bin)");

    auto *ev = app.add_subcommand("evaluate", "Top-1 accuracy of a model on a held-out dataset");
    common(ev);
    ev->add_option("--model", opt.model_path, "Model path")->required();
    ev->add_option("--data", opt.data_path, "Dataset path")->required();

    auto *cmp = app.add_subcommand("compare", "CSI vs vision vs oracle clustering comparison");
    common(cmp);

    auto *stale = app.add_subcommand("stale-sweep", "Spectral efficiency under stale CSI");
    common(stale);

    auto *show = app.add_subcommand("show-config", "Print the resolved configuration");
    common(show);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        return fail("usage", e.what(), 2);
    }

    try
    {
        if (gen->parsed())
            return cmd_gen_data(opt);
        if (trn->parsed())
            return cmd_train(opt);
        if (ev->parsed())
            return cmd_evaluate(opt);
        if (cmp->parsed())
            return cmd_compare(opt);
        if (stale->parsed())
            return cmd_stale_sweep(opt);
        if (show->parsed())
            return cmd_show_config(opt);
    }
    catch (const CliError &e)
    {
        return fail(e.kind(), e.what());
    }
    catch (const ConfigError &e)
    {
        return fail("config", e.what());
    }
    catch (const FormatError &e)
    {
        return fail("format", e.what());
    }
    catch (const TrainingError &e)
    {
        return fail("training", e.what());
    }
    catch (const std::exception &e)
    {
        return fail("runtime", e.what());
    }
    return fail("usage", "no subcommand");
}
