// Copyright 2026 The HQ-PINN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Hybrid encoder: quantum layer -> dense layer -> sigmoid -> range rescale,
 * together with its backward pass and the Adam optimizer.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hqpinn/qgrad.hpp"
#include "hqpinn/qnode.hpp"

namespace hqpinn {

/// Fully connected layer, weights row-major (n_out x n_in).
struct DenseLayer {
    std::size_t n_out = 0;
    std::size_t n_in = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    DenseLayer() = default;
    DenseLayer(std::size_t outputs, std::size_t inputs)
        : n_out(outputs), n_in(inputs), weights(outputs * inputs, 0.0), bias(outputs, 0.0) {}

    double &w(std::size_t o, std::size_t i) { return weights[o * n_in + i]; }
    [[nodiscard]] double w(std::size_t o, std::size_t i) const { return weights[o * n_in + i]; }

    bool operator==(const DenseLayer &) const = default;
};

struct ParameterRange {
    double min = 0.0;
    double max = 1.0;
};

/// Per-output (min, max) ranges, usually broadcast from one range per property.
class ElasticBounds {
  public:
    ElasticBounds() = default;
    ElasticBounds(std::vector<double> lo, std::vector<double> hi);

    /// Output o takes ranges[property_of_output[o]].
    static ElasticBounds broadcast(std::span<const ParameterRange> ranges,
                                   std::span<const std::size_t> property_of_output);

    [[nodiscard]] std::size_t size() const noexcept { return lo_.size(); }
    [[nodiscard]] double lo(std::size_t i) const { return lo_[i]; }
    [[nodiscard]] double hi(std::size_t i) const { return hi_[i]; }
    [[nodiscard]] double span(std::size_t i) const { return hi_[i] - lo_[i]; }
    /// Maps a value in [lo, hi] onto [0, 1].
    [[nodiscard]] double normalize(std::size_t i, double v) const { return (v - lo_[i]) / span(i); }

  private:
    std::vector<double> lo_;
    std::vector<double> hi_;
};

[[nodiscard]] double sigmoid(double a) noexcept;

/// Intermediate values of one encoder evaluation.
struct EncoderPass {
    std::vector<double> expectations; ///< <Z_k>
    std::vector<double> activation;   ///< sigmoid(W z + b)
    std::vector<double> elastic;      ///< min + activation * (max - min)
};

/// Classical half of the encoder applied to given expectations.
[[nodiscard]] EncoderPass dense_forward(const DenseLayer &dense, const ElasticBounds &bounds,
                                        std::vector<double> expectations);

[[nodiscard]] EncoderPass encoder_pass(const QNodeSpec &spec, const ThetaTensor &theta,
                                       const DenseLayer &dense, const ElasticBounds &bounds,
                                       const StateVector &embedded);

/// Elastic parameters (km/s * g/cc) predicted from an embedded input.
[[nodiscard]] std::vector<double> encoder_forward(const QNodeSpec &spec, const ThetaTensor &theta,
                                                  const DenseLayer &dense, const ElasticBounds &bounds,
                                                  const StateVector &embedded);

struct DenseGradients {
    std::vector<double> weights;
    std::vector<double> bias;
    std::vector<double> expectations; ///< dL/d<Z_k>, to be chained into theta.
};

/// Analytic backward through rescale, sigmoid and the affine map.
[[nodiscard]] DenseGradients dense_backward(const DenseLayer &dense, const ElasticBounds &bounds,
                                            const EncoderPass &pass, std::span<const double> dL_dm);

struct EncoderGradients {
    std::vector<double> theta;
    std::vector<double> weights;
    std::vector<double> bias;
    EvalStats stats;
};

/// Full encoder gradient; theta entries are (dL/d<Z>)^T J for the configured
/// Jacobian method. SPSA raises ContractError.
[[nodiscard]] EncoderGradients encoder_backward(const QNodeSpec &spec, const ThetaTensor &theta,
                                                const DenseLayer &dense, const ElasticBounds &bounds,
                                                const StateVector &embedded, std::span<const double> dL_dm,
                                                const GradConfig &cfg);

struct AdamMoments {
    std::vector<double> first;
    std::vector<double> second;
};

struct TrainState {
    ThetaTensor theta;
    DenseLayer dense;
    AdamMoments theta_moments;
    AdamMoments weight_moments;
    AdamMoments bias_moments;
    std::size_t step = 0;
    std::vector<double> loss_history;
};

/// Zero moments shaped after the parameters.
[[nodiscard]] TrainState make_train_state(ThetaTensor theta, DenseLayer dense);

struct AdamHyper {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// One bias-corrected Adam update of every trainable parameter.
[[nodiscard]] TrainState adam_step(TrainState state, const EncoderGradients &grads, double lr = 0.1,
                                   const AdamHyper &hyper = {});

/// theta ~ U[0, 2 pi), weights ~ U(+-sqrt(6 / (n_qubits + n_outputs))), bias = 0.
[[nodiscard]] std::pair<ThetaTensor, DenseLayer> init_parameters(const QNodeSpec &spec,
                                                                 std::size_t n_outputs,
                                                                 std::uint64_t seed);

} // namespace hqpinn
