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
 * Physics-informed inversion: the encoder predicts impedances from the whole
 * embedded dataset, the convolutional decoder re-synthesizes the seismic, and
 * the data misfit plus a low-frequency prior penalty drives Adam.
 *
 * Layout conventions shared by every routine here:
 *  - Traces are ordered section-major, then trace within the section.
 *  - The network input concatenates, per trace, each angle column in order.
 *  - The network output holds, per trace, zp[0..N_T) then (elastic only)
 *    zs[0..N_T).
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hqpinn/geoforward.hpp"
#include "hqpinn/hybridnet.hpp"
#include "hqpinn/qembed.hpp"
#include "hqpinn/qgrad.hpp"
#include "hqpinn/qnode.hpp"

namespace hqpinn {

enum class InversionMode { PostStack1D, PreStack1D, PostStack2D, Simultaneous2D };

[[nodiscard]] std::string_view to_string(InversionMode m);
[[nodiscard]] InversionMode parse_inversion_mode(std::string_view s);

struct InversionConfig {
    Ansatz ansatz = Ansatz::BasicEntangler;
    Axis rotation_axis = Axis::X;
    std::size_t n_layers = 2;
    std::size_t n_qubits = 0; ///< 0 derives the count from the data.
    Preparation preparation = Preparation::Circuit;
    GradConfig grad;
    std::size_t epochs = 500;
    double learning_rate = 0.1;
    double reg_weight = 0.1;
    std::vector<double> angles{0.0};
    double peak_frequency = 40.0;
    double dt = 0.002;
    double gamma = 0.5;
    std::size_t prior_window = 15;
    double bounds_margin = 0.2;
    std::uint64_t seed = 0;
    std::size_t patience = 0; ///< Early-stopping patience in epochs; 0 disables.

    void validate() const;
};

struct InversionTask {
    InversionMode mode = InversionMode::PostStack1D;
    std::vector<std::vector<SeismicGather>> observed; ///< [section][trace]
    std::vector<std::vector<ImpedanceModel>> prior;   ///< [section][trace]

    [[nodiscard]] std::size_t n_sections() const noexcept { return observed.size(); }
    [[nodiscard]] std::size_t n_traces() const noexcept;
    [[nodiscard]] std::size_t n_samples() const;
    [[nodiscard]] const std::vector<double> &angles() const;
    /// True when any angle is non-zero, i.e. zs is inverted too.
    [[nodiscard]] bool elastic() const;
    [[nodiscard]] std::size_t n_outputs() const;

    void validate() const;
};

/// Concatenated observed data, padded and normalized for amplitude embedding.
[[nodiscard]] PaddedVector flatten_input(const InversionTask &task);

/// Impedance ranges from the prior, widened by margin * (max - min) per side.
[[nodiscard]] ElasticBounds derive_bounds(const InversionTask &task, double margin);

/// Per-trace models in network-output layout.
[[nodiscard]] std::vector<double> flatten_models(std::span<const ImpedanceModel> models);
[[nodiscard]] std::vector<ImpedanceModel> unflatten_models(std::span<const double> values,
                                                           std::size_t n_traces, std::size_t n_samples,
                                                           bool elastic);

[[nodiscard]] double rmse(std::span<const double> a, std::span<const double> b);

struct LossTerms {
    double total = 0.0;
    double data = 0.0;  ///< RMSE(observed, predicted)
    double prior = 0.0; ///< RMSE of bounds-normalized impedances vs prior
};

/// L = RMSE(obs, pred) + lambda * RMSE(norm(m_pred), norm(m_prior)).
[[nodiscard]] LossTerms loss(std::span<const double> observed, std::span<const double> predicted,
                             std::span<const double> m_pred, std::span<const double> m_prior,
                             const ElasticBounds &bounds, double lambda);

struct LossGradient {
    std::vector<double> predicted; ///< dL/d(predicted seismic)
    std::vector<double> model;     ///< dL/dm through the prior term only
};

/// Gradient of loss(); an exactly zero RMSE contributes a zero subgradient.
[[nodiscard]] LossGradient loss_gradient(std::span<const double> observed, std::span<const double> predicted,
                                         std::span<const double> m_pred, std::span<const double> m_prior,
                                         const ElasticBounds &bounds, double lambda);

/// Per-epoch cost of the quantum layer.
struct EpochCost {
    std::size_t circuit_evaluations = 0; ///< Full ansatz runs, primal included.
    std::size_t gate_applications = 0;

    /// gate_applications in units of one ansatz execution.
    [[nodiscard]] double circuit_equivalents(std::size_t gates_per_circuit) const;
};

struct TrainResult {
    QNodeSpec spec;
    ElasticBounds bounds;
    TrainState state;
    std::vector<std::vector<ImpedanceModel>> estimates; ///< [section][trace]
    std::vector<std::vector<SeismicGather>> predicted;  ///< [section][trace]
    std::vector<double> loss_history;                   ///< Loss before each epoch's update.
    std::vector<EpochCost> epoch_costs;
    LossTerms final_loss; ///< At the returned parameters.
};

/// The training loss of one task as a function of the network parameters.
/// train() drives Adam with exactly these values and gradients.
class InversionObjective {
public:
    /// Validates both arguments; throws ConfigError when config.n_qubits is too small.
    InversionObjective(const InversionTask &task, const InversionConfig &config);

    [[nodiscard]] const QNodeSpec &spec() const noexcept { return spec_; }
    [[nodiscard]] const ElasticBounds &bounds() const noexcept { return bounds_; }
    [[nodiscard]] const StateVector &embedded() const noexcept { return embedded_; }
    [[nodiscard]] std::size_t n_outputs() const noexcept { return bounds_.size(); }

    struct Evaluation {
        EncoderPass pass;
        std::vector<ImpedanceModel> models;  ///< Per trace.
        std::vector<SeismicGather> predicted; ///< Per trace.
        std::vector<double> predicted_flat;
        LossTerms terms;
    };

    struct Gradient {
        Evaluation evaluation; ///< At the given parameters.
        EncoderGradients grads;
        EpochCost cost;
    };

    [[nodiscard]] Evaluation evaluate(const ThetaTensor &theta, const DenseLayer &dense) const;

    /// Loss and its gradient with config.grad.method for the ansatz angles;
    /// `stream` selects the SPSA perturbation sequence.
    [[nodiscard]] Gradient gradient(const ThetaTensor &theta, const DenseLayer &dense,
                                    std::uint64_t stream = 1) const;

private:
    [[nodiscard]] Evaluation evaluate_from(const DenseLayer &dense, std::vector<double> expectations) const;

    InversionConfig config_;
    QNodeSpec spec_;
    ElasticBounds bounds_;
    StateVector embedded_{1};
    std::vector<SeismicGather> observed_;
    std::vector<double> observed_flat_;
    std::vector<double> prior_flat_;
    Wavelet wavelet_;
    std::vector<double> angles_;
    bool elastic_ = false;
    std::size_t n_traces_ = 0;
    std::size_t n_samples_ = 0;
};

/// Full-batch training; deterministic for a given (task, config).
[[nodiscard]] TrainResult train(const InversionTask &task, const InversionConfig &config);

/// Decoder applied to per-trace models.
[[nodiscard]] std::vector<SeismicGather> synthesize(std::span<const ImpedanceModel> models,
                                                    std::span<const double> angles_deg, const Wavelet &w,
                                                    double gamma);

struct MisfitReport {
    double zp_rmse = 0.0;
    std::optional<double> zs_rmse;
    std::vector<double> seismic_rmse_per_angle;
};

/// RMS misfits pooled over all traces; seismic per angle column.
[[nodiscard]] MisfitReport evaluate(std::span<const ImpedanceModel> estimate,
                                    std::span<const ImpedanceModel> truth,
                                    std::span<const SeismicGather> predicted,
                                    std::span<const SeismicGather> observed);

/// Flattens [section][trace] into trace order.
template <typename T>
[[nodiscard]] std::vector<T> flatten_sections(const std::vector<std::vector<T>> &sections) {
    std::vector<T> out;
    for (const auto &s : sections) {
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

} // namespace hqpinn
