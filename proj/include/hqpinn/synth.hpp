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
 * Layered / wedge synthetic impedance models and their seismic response.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hqpinn/geoforward.hpp"
#include "hqpinn/invert.hpp"

namespace hqpinn {

struct LayerProperties {
    double zp = 6.0; ///< km/s * g/cc
    double zs = 3.0;
};

struct SynthConfig {
    std::size_t n_samples = 64;
    std::size_t n_traces = 1;
    std::size_t n_sections = 1;
    /// Top to bottom. Interior interfaces are spaced evenly over the trace.
    std::vector<LayerProperties> layers{{6.0, 3.0}, {7.4, 3.8}, {6.6, 3.2}};
    /// Thin the second layer across traces into a wedge (2D only).
    bool wedge = true;
    /// Thinnest wedge as a fraction of the full layer thickness.
    double wedge_min_fraction = 0.25;
    std::vector<double> angles{0.0};
    double peak_frequency = 40.0;
    double dt = 0.002;
    double gamma = 0.5;
    std::size_t prior_window = 15;
    /// Gaussian noise standard deviation, relative to the clean RMS amplitude.
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SyntheticDataset {
    InversionTask task; ///< Observed data and priors.
    std::vector<std::vector<ImpedanceModel>> truth;
    std::vector<std::vector<SeismicGather>> clean;
    double clean_rms = 0.0;
    double noise_rms = 0.0; ///< Sample RMS of the added noise.
    double snr_db = 0.0;    ///< 20 log10(clean_rms / noise_rms); +inf when noiseless.
};

/// Section k mirrors the wedge direction on odd k so sections differ.
[[nodiscard]] SyntheticDataset make_synthetic(const SynthConfig &cfg);

/// Truth model of one trace.
[[nodiscard]] ImpedanceModel layered_model(const SynthConfig &cfg, std::size_t section, std::size_t trace);

} // namespace hqpinn
