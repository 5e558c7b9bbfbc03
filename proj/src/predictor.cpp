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

#include "vanoma/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vanoma/rng.hpp"

namespace vanoma {

void Architecture::validate() const
{
    if (input_size < 1 || output_size < 1)
        throw std::domain_error("Architecture: input and output sizes must be >= 1");
    for (int h : hidden)
        if (h < 1)
            throw std::domain_error("Architecture: hidden layer sizes must be >= 1");
}

ClassifierParameters::ClassifierParameters(const Architecture &arch) : arch_(arch)
{
    arch_.validate();
    int fan_in = arch_.input_size;
    auto add = [&](int out) {
        layers_.push_back({Eigen::MatrixXd::Zero(out, fan_in), Eigen::VectorXd::Zero(out)});
        fan_in = out;
    };
    for (int h : arch_.hidden)
        add(h);
    add(arch_.output_size);
}

std::size_t ClassifierParameters::parameter_count() const
{
    std::size_t n = 0;
    for (const auto &l : layers_)
        n += static_cast<std::size_t>(l.weights.size() + l.bias.size());
    return n;
}

double &ClassifierParameters::ref(std::size_t index)
{
    for (auto &l : layers_)
    {
        const auto nw = static_cast<std::size_t>(l.weights.size());
        if (index < nw)
        {
            const auto cols = static_cast<std::size_t>(l.weights.cols());
            return l.weights(static_cast<Eigen::Index>(index / cols), static_cast<Eigen::Index>(index % cols));
        }
        index -= nw;
        const auto nb = static_cast<std::size_t>(l.bias.size());
        if (index < nb)
            return l.bias(static_cast<Eigen::Index>(index));
        index -= nb;
    }
    throw std::out_of_range("ClassifierParameters: flat index out of range");
}

double ClassifierParameters::get(std::size_t index) const
{
    return const_cast<ClassifierParameters *>(this)->ref(index);
}

void ClassifierParameters::set(std::size_t index, double value)
{
    ref(index) = value;
}

bool ClassifierParameters::all_finite() const
{
    return std::all_of(layers_.begin(), layers_.end(),
                       [](const DenseLayer &l) { return l.weights.allFinite() && l.bias.allFinite(); });
}

bool ClassifierParameters::operator==(const ClassifierParameters &other) const
{
    if (!(arch_ == other.arch_) || layers_.size() != other.layers_.size())
        return false;
    for (std::size_t i = 0; i < layers_.size(); ++i)
        if (layers_[i].weights != other.layers_[i].weights || layers_[i].bias != other.layers_[i].bias)
            return false;
    return true;
}

void TrainingConfig::validate() const
{
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
        throw std::domain_error("TrainingConfig: learning_rate must be finite and >= 0");
    if (epochs < 1)
        throw std::domain_error("TrainingConfig: epochs must be >= 1");
    if (batch_size < 1)
        throw std::domain_error("TrainingConfig: batch_size must be >= 1");
    if (!(weight_init_scale >= 0.0))
        throw std::domain_error("TrainingConfig: weight_init_scale must be >= 0");
}

TrainingError::TrainingError(int epoch, int batch, double loss)
    : std::runtime_error("training diverged at epoch " + std::to_string(epoch) + ", batch " +
                         std::to_string(batch) + " (loss " + std::to_string(loss) + ")"),
      epoch_(epoch), batch_(batch)
{
}

ClassifierParameters init_classifier(const Architecture &arch, double weight_init_scale, std::uint64_t seed)
{
    if (!(weight_init_scale >= 0.0))
        throw std::domain_error("init_classifier: weight_init_scale must be >= 0");
    ClassifierParameters params(arch);
    Rng rng(derive_seed(seed, stream::init));
    for (auto &l : params.layers())
    {
        const double bound = weight_init_scale / std::sqrt(static_cast<double>(l.weights.cols()));
        std::uniform_real_distribution<double> u(-bound, bound);
        // Row-major fill so the draw order matches the flat parameter order.
        for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
            for (Eigen::Index c = 0; c < l.weights.cols(); ++c)
                l.weights(r, c) = bound > 0.0 ? u(rng) : 0.0;
    }
    return params;
}

Eigen::VectorXd image_to_input(const SceneImage &image)
{
    Eigen::VectorXd x(static_cast<Eigen::Index>(image.pixels.size()));
    for (std::size_t i = 0; i < image.pixels.size(); ++i)
        x(static_cast<Eigen::Index>(i)) = image.pixels[i];
    return x;
}

Eigen::VectorXd compute_logits(const ClassifierParameters &params, const Eigen::VectorXd &input)
{
    if (input.size() != params.architecture().input_size)
        throw std::domain_error("forward: input has " + std::to_string(input.size()) + " values, model expects " +
                                std::to_string(params.architecture().input_size));
    Eigen::VectorXd a = input;
    const auto &layers = params.layers();
    for (std::size_t i = 0; i < layers.size(); ++i)
    {
        Eigen::VectorXd z = layers[i].weights * a + layers[i].bias;
        if (i + 1 < layers.size())
            a = z.cwiseMax(0.0);
        else
            a = std::move(z);
    }
    return a;
}

BeamProbabilities softmax(const Eigen::VectorXd &logits)
{
    const double m = logits.maxCoeff();
    Eigen::VectorXd e = (logits.array() - m).exp();
    e /= e.sum();
    return {std::vector<double>(e.data(), e.data() + e.size())};
}

BeamProbabilities forward(const ClassifierParameters &params, const SceneImage &image)
{
    return softmax(compute_logits(params, image_to_input(image)));
}

int predict_best_beam(const BeamProbabilities &probs)
{
    if (probs.probs.empty())
        throw std::domain_error("predict_best_beam: empty distribution");
    const auto it = std::max_element(probs.probs.begin(), probs.probs.end());
    return static_cast<int>(std::distance(probs.probs.begin(), it));
}

LossGradient loss_and_gradient(const ClassifierParameters &params, const Eigen::MatrixXd &inputs,
                               std::span<const int> labels)
{
    const auto n = inputs.cols();
    if (n == 0 || static_cast<std::size_t>(n) != labels.size())
        throw std::domain_error("loss_and_gradient: batch must be nonempty with one label per sample");
    if (inputs.rows() != params.architecture().input_size)
        throw std::domain_error("loss_and_gradient: input dimension mismatch");

    const auto &layers = params.layers();
    const std::size_t depth = layers.size();

    // activations[0] = inputs, activations[i] = output of layer i-1 (post-ReLU for hidden layers)
    std::vector<Eigen::MatrixXd> activations;
    activations.reserve(depth + 1);
    activations.push_back(inputs);
    Eigen::MatrixXd z;
    for (std::size_t i = 0; i < depth; ++i)
    {
        z = layers[i].weights * activations.back();
        z.colwise() += layers[i].bias;
        if (i + 1 < depth)
            activations.push_back(z.cwiseMax(0.0));
    }

    // Log-sum-exp per column; delta = softmax - onehot.
    const int classes = params.architecture().output_size;
    double loss = 0.0;
    Eigen::MatrixXd delta(classes, n);
    for (Eigen::Index c = 0; c < n; ++c)
    {
        const int label = labels[static_cast<std::size_t>(c)];
        if (label < 0 || label >= classes)
            throw std::domain_error("loss_and_gradient: label out of range");
        const double m = z.col(c).maxCoeff();
        Eigen::ArrayXd e = (z.col(c).array() - m).exp();
        const double s = e.sum();
        loss += m + std::log(s) - z(label, c);
        delta.col(c) = (e / s).matrix();
        delta(label, c) -= 1.0;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    loss *= inv_n;
    delta *= inv_n;

    LossGradient out{loss, ClassifierParameters(params.architecture())};
    auto &grad = out.gradient.layers();
    for (std::size_t i = depth; i-- > 0;)
    {
        grad[i].weights.noalias() = delta * activations[i].transpose();
        grad[i].bias = delta.rowwise().sum();
        if (i > 0)
        {
            Eigen::MatrixXd back = layers[i].weights.transpose() * delta;
            delta = (activations[i].array() > 0.0).select(back, 0.0);
        }
    }
    return out;
}

namespace {

Eigen::MatrixXd pack_inputs(std::span<const LabeledSample> samples, int input_size)
{
    Eigen::MatrixXd x(input_size, static_cast<Eigen::Index>(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const auto &px = samples[i].image.pixels;
        if (static_cast<int>(px.size()) != input_size)
            throw std::domain_error("classifier: image size does not match the model input");
        for (std::size_t k = 0; k < px.size(); ++k)
            x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = px[k];
    }
    return x;
}

} // namespace

LossGradient loss_and_gradient(const ClassifierParameters &params, std::span<const LabeledSample> batch)
{
    if (batch.empty())
        throw std::domain_error("loss_and_gradient: empty batch");
    const Eigen::MatrixXd x = pack_inputs(batch, params.architecture().input_size);
    std::vector<int> labels;
    labels.reserve(batch.size());
    for (const auto &s : batch)
        labels.push_back(s.label);
    return loss_and_gradient(params, x, labels);
}

ClassifierParameters train(ClassifierParameters params, std::span<const LabeledSample> samples,
                           const TrainingConfig &config, std::vector<double> *epoch_losses)
{
    config.validate();
    if (samples.empty())
        throw std::domain_error("train: no samples");

    const Eigen::MatrixXd all_inputs = pack_inputs(samples, params.architecture().input_size);
    std::vector<int> all_labels;
    all_labels.reserve(samples.size());
    for (const auto &s : samples)
        all_labels.push_back(s.label);

    const auto n = samples.size();
    const auto bs = static_cast<std::size_t>(config.batch_size);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(config.seed, stream::training));

    Eigen::MatrixXd batch_inputs;
    std::vector<int> batch_labels;
    for (int epoch = 0; epoch < config.epochs; ++epoch)
    {
        std::shuffle(order.begin(), order.end(), rng);
        double epoch_loss = 0.0;
        int batch_index = 0;
        for (std::size_t start = 0; start < n; start += bs, ++batch_index)
        {
            const std::size_t count = std::min(bs, n - start);
            batch_inputs.resize(all_inputs.rows(), static_cast<Eigen::Index>(count));
            batch_labels.resize(count);
            for (std::size_t k = 0; k < count; ++k)
            {
                batch_inputs.col(static_cast<Eigen::Index>(k)) = all_inputs.col(static_cast<Eigen::Index>(order[start + k]));
                batch_labels[k] = all_labels[order[start + k]];
            }
            const LossGradient lg = loss_and_gradient(params, batch_inputs, batch_labels);
            if (!std::isfinite(lg.loss))
                throw TrainingError(epoch, batch_index, lg.loss);
            epoch_loss += lg.loss;
            auto &layers = params.layers();
            const auto &grad = lg.gradient.layers();
            for (std::size_t i = 0; i < layers.size(); ++i)
            {
                layers[i].weights -= config.learning_rate * grad[i].weights;
                layers[i].bias -= config.learning_rate * grad[i].bias;
            }
            if (!params.all_finite())
                throw TrainingError(epoch, batch_index, lg.loss);
        }
        if (epoch_losses)
            epoch_losses->push_back(epoch_loss / batch_index);
    }
    return params;
}

double top1_accuracy(const ClassifierParameters &params, std::span<const LabeledSample> samples)
{
    if (samples.empty())
        throw std::domain_error("top1_accuracy: no samples");
    std::size_t hits = 0;
    for (const auto &s : samples)
        if (predict_best_beam(forward(params, s.image)) == s.label)
            ++hits;
    return static_cast<double>(hits) / static_cast<double>(samples.size());
}

} // namespace vanoma
