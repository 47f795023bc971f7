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
#include "hqpinn/hybridnet.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "hqpinn/errors.hpp"

namespace hqpinn {

namespace {

void adam_update(std::span<double> params, std::span<const double> grads, AdamMoments &mom,
                 std::size_t step, double lr, const AdamHyper &h) {
    if (params.size() != grads.size() || mom.first.size() != params.size() ||
        mom.second.size() != params.size()) {
        throw DomainError("adam_step: gradient shape " + std::to_string(grads.size()) +
                          " does not match parameter shape " + std::to_string(params.size()));
    }
    const double t = static_cast<double>(step);
    const double c1 = 1.0 - std::pow(h.beta1, t);
    const double c2 = 1.0 - std::pow(h.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        mom.first[i] = h.beta1 * mom.first[i] + (1.0 - h.beta1) * g;
        mom.second[i] = h.beta2 * mom.second[i] + (1.0 - h.beta2) * g * g;
        const double m_hat = mom.first[i] / c1;
        const double v_hat = mom.second[i] / c2;
        params[i] -= lr * m_hat / (std::sqrt(v_hat) + h.epsilon);
    }
}

AdamMoments zero_moments(std::size_t n) { return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)}; }

} // namespace

ElasticBounds::ElasticBounds(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) {
        throw DomainError("ElasticBounds: lo/hi length mismatch");
    }
    for (std::size_t i = 0; i < lo_.size(); ++i) {
        if (!(lo_[i] < hi_[i]) || !std::isfinite(lo_[i]) || !std::isfinite(hi_[i])) {
            throw DomainError("ElasticBounds: need finite min < max at output " + std::to_string(i));
        }
    }
}

ElasticBounds ElasticBounds::broadcast(std::span<const ParameterRange> ranges,
                                       std::span<const std::size_t> property_of_output) {
    std::vector<double> lo;
    std::vector<double> hi;
    lo.reserve(property_of_output.size());
    hi.reserve(property_of_output.size());
    for (const auto p : property_of_output) {
        if (p >= ranges.size()) {
            throw DomainError("ElasticBounds: property index out of range");
        }
        lo.push_back(ranges[p].min);
        hi.push_back(ranges[p].max);
    }
    return {std::move(lo), std::move(hi)};
}

double sigmoid(double a) noexcept {
    if (a >= 0.0) {
        return 1.0 / (1.0 + std::exp(-a));
    }
    const double e = std::exp(a);
    return e / (1.0 + e);
}

EncoderPass dense_forward(const DenseLayer &dense, const ElasticBounds &bounds, std::vector<double> expectations) {
    if (expectations.size() != dense.n_in || bounds.size() != dense.n_out) {
        throw DomainError("encoder: dense layer is " + std::to_string(dense.n_out) + " x " +
                          std::to_string(dense.n_in) + " but got " + std::to_string(expectations.size()) +
                          " inputs and " + std::to_string(bounds.size()) + " bounds");
    }
    EncoderPass pass;
    pass.expectations = std::move(expectations);
    pass.activation.resize(dense.n_out);
    pass.elastic.resize(dense.n_out);
    for (std::size_t o = 0; o < dense.n_out; ++o) {
        double a = dense.bias[o];
        for (std::size_t i = 0; i < dense.n_in; ++i) {
            a += dense.w(o, i) * pass.expectations[i];
        }
        pass.activation[o] = sigmoid(a);
        pass.elastic[o] = bounds.lo(o) + pass.activation[o] * bounds.span(o);
    }
    return pass;
}

EncoderPass encoder_pass(const QNodeSpec &spec, const ThetaTensor &theta, const DenseLayer &dense,
                         const ElasticBounds &bounds, const StateVector &embedded) {
    return dense_forward(dense, bounds, qnode_forward(spec, theta, embedded));
}

std::vector<double> encoder_forward(const QNodeSpec &spec, const ThetaTensor &theta, const DenseLayer &dense,
                                    const ElasticBounds &bounds, const StateVector &embedded) {
    return encoder_pass(spec, theta, dense, bounds, embedded).elastic;
}

DenseGradients dense_backward(const DenseLayer &dense, const ElasticBounds &bounds, const EncoderPass &pass,
                              std::span<const double> dL_dm) {
    if (dL_dm.size() != dense.n_out) {
        throw DomainError("encoder_backward: upstream gradient has length " + std::to_string(dL_dm.size()) +
                          ", expected " + std::to_string(dense.n_out));
    }
    DenseGradients g;
    g.weights.assign(dense.weights.size(), 0.0);
    g.bias.assign(dense.n_out, 0.0);
    g.expectations.assign(dense.n_in, 0.0);
    for (std::size_t o = 0; o < dense.n_out; ++o) {
        const double s = pass.activation[o];
        const double da = dL_dm[o] * bounds.span(o) * s * (1.0 - s);
        g.bias[o] = da;
        for (std::size_t i = 0; i < dense.n_in; ++i) {
            g.weights[o * dense.n_in + i] = da * pass.expectations[i];
            g.expectations[i] += da * dense.w(o, i);
        }
    }
    return g;
}

EncoderGradients encoder_backward(const QNodeSpec &spec, const ThetaTensor &theta, const DenseLayer &dense,
                                  const ElasticBounds &bounds, const StateVector &embedded,
                                  std::span<const double> dL_dm, const GradConfig &cfg) {
    if (cfg.method == GradMethod::SPSA) {
        throw ContractError("encoder_backward: SPSA differentiates the whole loss, not the encoder");
    }
    const auto pass = encoder_pass(spec, theta, dense, bounds, embedded);
    auto dense_grads = dense_backward(dense, bounds, pass, dL_dm);
    const auto jac = jacobian(spec, theta, embedded, cfg);
    EncoderGradients out;
    out.theta = jac.jacobian.vjp(dense_grads.expectations);
    out.weights = std::move(dense_grads.weights);
    out.bias = std::move(dense_grads.bias);
    out.stats = jac.stats;
    return out;
}

TrainState make_train_state(ThetaTensor theta, DenseLayer dense) {
    TrainState s;
    s.theta_moments = zero_moments(theta.size());
    s.weight_moments = zero_moments(dense.weights.size());
    s.bias_moments = zero_moments(dense.bias.size());
    s.theta = std::move(theta);
    s.dense = std::move(dense);
    return s;
}

TrainState adam_step(TrainState state, const EncoderGradients &grads, double lr, const AdamHyper &hyper) {
    const std::size_t step = state.step + 1;
    adam_update(state.theta.flat(), grads.theta, state.theta_moments, step, lr, hyper);
    adam_update(state.dense.weights, grads.weights, state.weight_moments, step, lr, hyper);
    adam_update(state.dense.bias, grads.bias, state.bias_moments, step, lr, hyper);
    state.step = step;
    return state;
}

std::pair<ThetaTensor, DenseLayer> init_parameters(const QNodeSpec &spec, std::size_t n_outputs,
                                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ThetaTensor theta = ThetaTensor::for_spec(spec);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (auto &t : theta.flat()) {
        t = angle(rng);
    }
    DenseLayer dense(n_outputs, spec.n_qubits);
    const double limit = std::sqrt(6.0 / static_cast<double>(spec.n_qubits + n_outputs));
    std::uniform_real_distribution<double> weight(-limit, limit);
    for (auto &w : dense.weights) {
        w = weight(rng);
    }
    return {std::move(theta), std::move(dense)};
}

} // namespace hqpinn
