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
#include "hqpinn/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hqpinn/errors.hpp"

namespace hqpinn {

void SynthConfig::validate() const {
    if (n_samples < 4) {
        throw ConfigError("n_samples", "must be >= 4");
    }
    if (n_traces < 1) {
        throw ConfigError("n_traces", "must be >= 1");
    }
    if (n_sections < 1) {
        throw ConfigError("n_sections", "must be >= 1");
    }
    if (layers.empty()) {
        throw ConfigError("model_zp", "needs at least one layer");
    }
    for (const auto &l : layers) {
        if (!(l.zp > 0.0) || !(l.zs > 0.0)) {
            throw ConfigError("model_zp", "layer impedances must be positive");
        }
    }
    if (!(wedge_min_fraction > 0.0) || wedge_min_fraction > 1.0) {
        throw ConfigError("wedge_min_fraction", "must lie in (0, 1]");
    }
    if (angles.empty()) {
        throw ConfigError("angles", "needs at least one angle");
    }
    for (const double a : angles) {
        if (a < 0.0 || a > kMaxAngleDeg) {
            throw ConfigError("angles", "each angle must lie in [0, 40] degrees");
        }
    }
    if (!(dt > 0.0)) {
        throw ConfigError("dt", "must be positive");
    }
    if (!(peak_frequency > 0.0) || peak_frequency >= 0.5 / dt) {
        throw ConfigError("freq", "must lie in (0, Nyquist)");
    }
    if (prior_window % 2 == 0) {
        throw ConfigError("prior_window", "must be odd");
    }
    if (noise_sigma < 0.0) {
        throw ConfigError("noise_sigma", "must be >= 0");
    }
}

ImpedanceModel layered_model(const SynthConfig &cfg, std::size_t section, std::size_t trace) {
    const std::size_t n = cfg.n_samples;
    const std::size_t n_layers = cfg.layers.size();
    const double thickness = static_cast<double>(n) / static_cast<double>(n_layers);

    // Fraction of the full second-layer thickness for this trace.
    double fraction = 1.0;
    if (cfg.wedge && cfg.n_traces > 1 && n_layers >= 3) {
        double u = static_cast<double>(trace) / static_cast<double>(cfg.n_traces - 1);
        if (section % 2 == 1) {
            u = 1.0 - u;
        }
        fraction = cfg.wedge_min_fraction + (1.0 - cfg.wedge_min_fraction) * u;
    }

    std::vector<double> interfaces;
    for (std::size_t k = 1; k < n_layers; ++k) {
        double depth = thickness * static_cast<double>(k);
        if (k == 2) {
            depth = thickness * (1.0 + fraction);
        }
        interfaces.push_back(depth);
    }

    ImpedanceModel m;
    m.zp.resize(n);
    std::vector<double> zs(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double depth = static_cast<double>(t) + 0.5;
        const auto layer = static_cast<std::size_t>(
            std::upper_bound(interfaces.begin(), interfaces.end(), depth) - interfaces.begin());
        m.zp[t] = cfg.layers[layer].zp;
        zs[t] = cfg.layers[layer].zs;
    }
    const bool elastic = std::any_of(cfg.angles.begin(), cfg.angles.end(), [](double a) { return a != 0.0; });
    if (elastic) {
        m.zs = std::move(zs);
    }
    return m;
}

SyntheticDataset make_synthetic(const SynthConfig &cfg) {
    cfg.validate();
    const Wavelet w = ricker(cfg.peak_frequency, cfg.dt);
    SyntheticDataset ds;
    ds.task.mode = cfg.n_sections > 1 ? InversionMode::Simultaneous2D
                   : cfg.n_traces > 1 ? InversionMode::PostStack2D
                   : ds.task.mode;
    double sq = 0.0;
    std::size_t count = 0;
    for (std::size_t s = 0; s < cfg.n_sections; ++s) {
        std::vector<ImpedanceModel> truth;
        std::vector<ImpedanceModel> prior;
        std::vector<SeismicGather> clean;
        for (std::size_t t = 0; t < cfg.n_traces; ++t) {
            truth.push_back(layered_model(cfg, s, t));
            prior.push_back(build_prior(truth.back(), cfg.prior_window));
            clean.push_back(forward_model(truth.back(), cfg.angles, w, cfg.gamma));
            for (const double v : clean.back().data) {
                sq += v * v;
            }
            count += clean.back().data.size();
        }
        ds.truth.push_back(std::move(truth));
        ds.task.prior.push_back(std::move(prior));
        ds.clean.push_back(std::move(clean));
    }
    if (ds.task.mode == InversionMode::PostStack1D && ds.truth.front().front().elastic()) {
        ds.task.mode = InversionMode::PreStack1D;
    }
    ds.clean_rms = std::sqrt(sq / static_cast<double>(count));

    ds.task.observed = ds.clean;
    if (cfg.noise_sigma > 0.0) {
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> noise(0.0, cfg.noise_sigma * ds.clean_rms);
        double nsq = 0.0;
        for (auto &section : ds.task.observed) {
            for (auto &g : section) {
                for (auto &v : g.data) {
                    const double e = noise(rng);
                    v += e;
                    nsq += e * e;
                }
            }
        }
        ds.noise_rms = std::sqrt(nsq / static_cast<double>(count));
        ds.snr_db = 20.0 * std::log10(ds.clean_rms / ds.noise_rms);
    } else {
        ds.snr_db = std::numeric_limits<double>::infinity();
    }
    return ds;
}

} // namespace hqpinn
