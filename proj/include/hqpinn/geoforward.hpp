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
 * Convolutional seismic forward model and its adjoint.
 *
 * Reflectivity is linear in the log-impedance contrast:
 *
 *   r_theta[t] = 0.5 (1 + tan^2 theta) dlnZp[t] - 4 gamma^2 sin^2 theta dlnZs[t]
 *
 * with dlnZ[t] = ln Z[t+1] - ln Z[t] and r[N_T - 1] = 0. At normal incidence
 * this reduces to 0.5 dlnZp. Traces are r convolved with a zero-phase wavelet
 * in "same" mode.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hqpinn {

/// Impedance trace in km/s * g/cc. `zs` is absent for acoustic models.
struct ImpedanceModel {
    std::vector<double> zp;
    std::optional<std::vector<double>> zs;

    [[nodiscard]] std::size_t samples() const noexcept { return zp.size(); }
    [[nodiscard]] bool elastic() const noexcept { return zs.has_value(); }
    bool operator==(const ImpedanceModel &) const = default;
};

struct Wavelet {
    std::vector<double> samples; ///< Odd length, peak at the center.
    double dt = 0.0;
    double peak_frequency = 0.0;

    [[nodiscard]] std::size_t center() const noexcept { return samples.size() / 2; }
};

/// Column-major N_T x N_theta amplitude matrix.
struct SeismicGather {
    std::size_t n_samples = 0;
    std::vector<double> angles; ///< degrees
    double dt = 0.0;
    std::vector<double> data;

    SeismicGather() = default;
    SeismicGather(std::size_t n_t, std::vector<double> angles_deg, double dt_s)
        : n_samples(n_t), angles(std::move(angles_deg)), dt(dt_s), data(n_samples * angles.size(), 0.0) {}

    [[nodiscard]] std::size_t n_angles() const noexcept { return angles.size(); }
    double &operator()(std::size_t t, std::size_t a) { return data[a * n_samples + t]; }
    [[nodiscard]] double operator()(std::size_t t, std::size_t a) const { return data[a * n_samples + t]; }
    [[nodiscard]] std::span<double> column(std::size_t a) { return {data.data() + a * n_samples, n_samples}; }
    [[nodiscard]] std::span<const double> column(std::size_t a) const {
        return {data.data() + a * n_samples, n_samples};
    }
};

/// Largest incidence angle accepted by the two-term reflectivity.
inline constexpr double kMaxAngleDeg = 40.0;

/**
 * Ricker wavelet (1 - 2 pi^2 f^2 t^2) exp(-pi^2 f^2 t^2) on a symmetric grid.
 *
 * The half-length is the smallest one past the side-lobe extremum whose
 * endpoint magnitude is at most 1e-3; beyond the side lobe the envelope
 * decays monotonically, so every truncated sample is below that level.
 */
[[nodiscard]] Wavelet ricker(double peak_frequency, double dt);

[[nodiscard]] std::vector<double> normal_incidence_reflectivity(std::span<const double> zp);

[[nodiscard]] std::vector<double> aki_richards_reflectivity(std::span<const double> zp,
                                                            std::span<const double> zs,
                                                            double angle_deg, double gamma);

/// out[t] = sum_k r[t - k + c] w[k], c = wavelet center, zero outside [0, N_T).
[[nodiscard]] std::vector<double> convolve_same(std::span<const double> r, const Wavelet &w);

/// Adjoint of convolve_same: g[s] = sum_t dout[t] w[t - s + c].
[[nodiscard]] std::vector<double> correlate_same(std::span<const double> dout, const Wavelet &w);

/// Angles of 0 use normal incidence and do not need zs; any other angle does.
[[nodiscard]] SeismicGather forward_model(const ImpedanceModel &m, std::span<const double> angles_deg,
                                          const Wavelet &w, double gamma);

struct ImpedanceGradient {
    std::vector<double> zp;
    std::optional<std::vector<double>> zs; ///< Present when the model is elastic.
};

/// Exact gradient of a scalar L through forward_model, given dL/d(gather).
[[nodiscard]] ImpedanceGradient forward_gradient(const ImpedanceModel &m, std::span<const double> angles_deg,
                                                 const Wavelet &w, double gamma,
                                                 const SeismicGather &dL_dseis);

/// Odd-window moving average of ln Z with mirrored ends, exponentiated back.
[[nodiscard]] ImpedanceModel build_prior(const ImpedanceModel &m, std::size_t window);

} // namespace hqpinn
