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
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "vanoma/scene.hpp"

namespace vanoma {

/// Fully connected classifier shape: input -> hidden (ReLU)... -> output (softmax).
struct Architecture
{
    int input_size = 32 * 32;
    std::vector<int> hidden{128};
    int output_size = 64;

    void validate() const;
    bool operator==(const Architecture &) const = default;
};

struct DenseLayer
{
    Eigen::MatrixXd weights; // out x in
    Eigen::VectorXd bias;    // out
};

class ClassifierParameters
{
public:
    ClassifierParameters() = default;
    explicit ClassifierParameters(const Architecture &arch); // all zeros

    const Architecture &architecture() const { return arch_; }
    std::vector<DenseLayer> &layers() { return layers_; }
    const std::vector<DenseLayer> &layers() const { return layers_; }

    // Flat view in layer order: weights row-major, then bias.
    std::size_t parameter_count() const;
    double get(std::size_t index) const;
    void set(std::size_t index, double value);

    bool all_finite() const;
    bool operator==(const ClassifierParameters &other) const;

private:
    double &ref(std::size_t index);

    Architecture arch_;
    std::vector<DenseLayer> layers_;
};

struct BeamProbabilities
{
    std::vector<double> probs;
};

struct TrainingConfig
{
    double learning_rate = 0.05;
    int epochs = 200;
    int batch_size = 16;
    std::uint64_t seed = 1;
    double weight_init_scale = 1.0;

    void validate() const;
};

class TrainingError : public std::runtime_error
{
public:
    TrainingError(int epoch, int batch, double loss);
    int epoch() const { return epoch_; }
    int batch() const { return batch_; }

private:
    int epoch_;
    int batch_;
};

/// Weights i.i.d. uniform in +-scale/sqrt(fan_in), biases zero.
ClassifierParameters init_classifier(const Architecture &arch, double weight_init_scale, std::uint64_t seed);

Eigen::VectorXd image_to_input(const SceneImage &image);

Eigen::VectorXd compute_logits(const ClassifierParameters &params, const Eigen::VectorXd &input);

/// Max-subtracted softmax.
BeamProbabilities softmax(const Eigen::VectorXd &logits);

BeamProbabilities forward(const ClassifierParameters &params, const SceneImage &image);

/// argmax_j p_j, lowest index on ties.
int predict_best_beam(const BeamProbabilities &probs);

struct LossGradient
{
    double loss = 0.0;
    ClassifierParameters gradient;
};

/// Mean cross-entropy over the batch and its gradient by backpropagation.
LossGradient loss_and_gradient(const ClassifierParameters &params, std::span<const LabeledSample> batch);

/// Same as above on pre-packed inputs (one column per sample).
LossGradient loss_and_gradient(const ClassifierParameters &params, const Eigen::MatrixXd &inputs,
                               std::span<const int> labels);

/// Mini-batch SGD with per-epoch shuffling. If epoch_losses is given it
/// receives the mean batch loss of every epoch.
ClassifierParameters train(ClassifierParameters params, std::span<const LabeledSample> samples,
                           const TrainingConfig &config, std::vector<double> *epoch_losses = nullptr);

double top1_accuracy(const ClassifierParameters &params, std::span<const LabeledSample> samples);

} // namespace vanoma
