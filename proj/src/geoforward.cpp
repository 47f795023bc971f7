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
#include "hqpinn/geoforward.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hqpinn/errors.hpp"

namespace hqpinn {

namespace {

constexpr double kPi = std::numbers::pi;

void check_positive(std::span<const double> z, const char *name) {
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!(z[i] > 0.0) || !std::isfinite(z[i])) {
            throw DomainError(std::string(name) + " must be positive and finite (sample " +
                              std::to_string(i) + ")");
        }
    }
}

std::vector<double> log_contrast(std::span<const double> z) {
    std::vector<double> d(z.size(), 0.0);
    for (std::size_t t = 0; t + 1 < z.size(); ++t) {
        d[t] = std::log(z[t + 1]) - std::log(z[t]);
    }
    return d;
}

// Adjoint of log_contrast's differencing followed by d ln z / dz = 1 / z.
std::vector<double> log_contrast_adjoint(std::span<const double> g, std::span<const double> z) {
    const std::size_t n = z.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        const double from_left = (u >= 1) ? g[u - 1] : 0.0;
        const double from_right = (u + 1 < n) ? g[u] : 0.0;
        out[u] = (from_left - from_right) / z[u];
    }
    return out;
}

struct AngleCoefficients {
    double zp;
    double zs;
};

AngleCoefficients coefficients(double angle_deg, double gamma) {
    if (!(angle_deg >= 0.0) || angle_deg > kMaxAngleDeg) {
        throw DomainError("incidence angle " + std::to_string(angle_deg) + " outside [0, " +
                          std::to_string(kMaxAngleDeg) + "] degrees");
    }
    const double th = angle_deg * kPi / 180.0;
    const double tan_t = std::tan(th);
    const double sin_t = std::sin(th);
    return {0.5 * (1.0 + tan_t * tan_t), 4.0 * gamma * gamma * sin_t * sin_t};
}

void check_model(const ImpedanceModel &m, std::span<const double> angles_deg) {
    if (m.zp.empty()) {
        throw DomainError("impedance model is empty");
    }
    check_positive(m.zp, "zp");
    if (m.zs) {
        if (m.zs->size() != m.zp.size()) {
            throw DomainError("zs length differs from zp length");
        }
        check_positive(*m.zs, "zs");
    }
    for (const double a : angles_deg) {
        if (a != 0.0 && !m.zs) {
            throw DomainError("pre-stack angle " + std::to_string(a) + " requires zs");
        }
    }
}

} // namespace

Wavelet ricker(double peak_frequency, double dt) {
    if (!(dt > 0.0)) {
        throw DomainError("ricker: dt must be positive");
    }
    const double nyquist = 0.5 / dt;
    if (!(peak_frequency > 0.0) || peak_frequency >= nyquist) {
        throw DomainError("ricker: peak frequency must lie in (0, " + std::to_string(nyquist) + ") Hz");
    }
    const auto value = [&](double t) {
        const double a = kPi * kPi * peak_frequency * peak_frequency * t * t;
        return (1.0 - 2.0 * a) * std::exp(-a);
    };
    const double side_lobe = std::sqrt(1.5) / (kPi * peak_frequency);
    std::size_t half = 1;
    while (static_cast<double>(half) * dt < side_lobe ||
           std::abs(value(static_cast<double>(half) * dt)) > 1e-3) {
        ++half;
    }
    Wavelet w;
    w.dt = dt;
    w.peak_frequency = peak_frequency;
    w.samples.resize(2 * half + 1);
    for (std::size_t i = 0; i <= half; ++i) {
        const double v = value(static_cast<double>(i) * dt);
        w.samples[half + i] = v;
        w.samples[half - i] = v;
    }
    return w;
}

std::vector<double> normal_incidence_reflectivity(std::span<const double> zp) {
    check_positive(zp, "zp");
    auto r = log_contrast(zp);
    for (auto &v : r) {
        v *= 0.5;
    }
    return r;
}

std::vector<double> aki_richards_reflectivity(std::span<const double> zp, std::span<const double> zs,
                                              double angle_deg, double gamma) {
    check_positive(zp, "zp");
    check_positive(zs, "zs");
    if (zp.size() != zs.size()) {
        throw DomainError("zp and zs lengths differ");
    }
    const auto c = coefficients(angle_deg, gamma);
    const auto dp = log_contrast(zp);
    const auto ds = log_contrast(zs);
    std::vector<double> r(zp.size(), 0.0);
    for (std::size_t t = 0; t < r.size(); ++t) {
        r[t] = c.zp * dp[t] - c.zs * ds[t];
    }
    return r;
}

std::vector<double> convolve_same(std::span<const double> r, const Wavelet &w) {
    const auto n = static_cast<std::ptrdiff_t>(r.size());
    const auto len = static_cast<std::ptrdiff_t>(w.samples.size());
    if (len >= 2 * n) {
        throw DomainError("convolve_same: wavelet longer than twice the trace");
    }
    const auto c = static_cast<std::ptrdiff_t>(w.center());
    std::vector<double> out(r.size(), 0.0);
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (std::ptrdiff_t k = 0; k < len; ++k) {
            const std::ptrdiff_t s = t - k + c;
            if (s >= 0 && s < n) {
                acc += r[static_cast<std::size_t>(s)] * w.samples[static_cast<std::size_t>(k)];
            }
        }
        out[static_cast<std::size_t>(t)] = acc;
    }
    return out;
}

std::vector<double> correlate_same(std::span<const double> dout, const Wavelet &w) {
    const auto n = static_cast<std::ptrdiff_t>(dout.size());
    const auto len = static_cast<std::ptrdiff_t>(w.samples.size());
    const auto c = static_cast<std::ptrdiff_t>(w.center());
    std::vector<double> g(dout.size(), 0.0);
    for (std::ptrdiff_t s = 0; s < n; ++s) {
        double acc = 0.0;
        for (std::ptrdiff_t k = 0; k < len; ++k) {
            const std::ptrdiff_t t = s + k - c;
            if (t >= 0 && t < n) {
                acc += dout[static_cast<std::size_t>(t)] * w.samples[static_cast<std::size_t>(k)];
            }
        }
        g[static_cast<std::size_t>(s)] = acc;
    }
    return g;
}

SeismicGather forward_model(const ImpedanceModel &m, std::span<const double> angles_deg, const Wavelet &w,
                            double gamma) {
    check_model(m, angles_deg);
    if (angles_deg.empty()) {
        throw DomainError("forward_model: at least one angle is required");
    }
    SeismicGather g(m.samples(), {angles_deg.begin(), angles_deg.end()}, w.dt);
    const auto dp = log_contrast(m.zp);
    const auto ds = m.zs ? log_contrast(*m.zs) : std::vector<double>(m.samples(), 0.0);
    std::vector<double> r(m.samples());
    for (std::size_t a = 0; a < angles_deg.size(); ++a) {
        const auto c = coefficients(angles_deg[a], gamma);
        for (std::size_t t = 0; t < r.size(); ++t) {
            r[t] = c.zp * dp[t] - c.zs * ds[t];
        }
        const auto trace = convolve_same(r, w);
        std::copy(trace.begin(), trace.end(), g.column(a).begin());
    }
    return g;
}

ImpedanceGradient forward_gradient(const ImpedanceModel &m, std::span<const double> angles_deg,
                                   const Wavelet &w, double gamma, const SeismicGather &dL_dseis) {
    check_model(m, angles_deg);
    if (dL_dseis.n_samples != m.samples() || dL_dseis.n_angles() != angles_deg.size()) {
        throw DomainError("forward_gradient: upstream gradient shape mismatch");
    }
    const std::size_t n = m.samples();
    std::vector<double> gp(n, 0.0);
    std::vector<double> gs(n, 0.0);
    for (std::size_t a = 0; a < angles_deg.size(); ++a) {
        const auto c = coefficients(angles_deg[a], gamma);
        const auto dr = correlate_same(dL_dseis.column(a), w);
        // r[N_T - 1] is a constant pad.
        for (std::size_t t = 0; t + 1 < n; ++t) {
            gp[t] += c.zp * dr[t];
            gs[t] -= c.zs * dr[t];
        }
    }
    ImpedanceGradient out;
    out.zp = log_contrast_adjoint(gp, m.zp);
    if (m.zs) {
        out.zs = log_contrast_adjoint(gs, *m.zs);
    }
    return out;
}

ImpedanceModel build_prior(const ImpedanceModel &m, std::size_t window) {
    if (window == 0 || window % 2 == 0) {
        throw DomainError("build_prior: window must be odd and >= 1, got " + std::to_string(window));
    }
    const auto smooth = [window](const std::vector<double> &z) {
        check_positive(z, "impedance");
        const auto n = static_cast<std::ptrdiff_t>(z.size());
        std::vector<double> lz(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
            lz[i] = std::log(z[i]);
        }
        const auto mirror = [n](std::ptrdiff_t i) {
            if (n == 1) {
                return std::ptrdiff_t{0};
            }
            const std::ptrdiff_t period = 2 * (n - 1);
            i %= period;
            if (i < 0) {
                i += period;
            }
            return i < n ? i : period - i;
        };
        const auto half = static_cast<std::ptrdiff_t>(window / 2);
        std::vector<double> out(z.size());
        for (std::ptrdiff_t t = 0; t < n; ++t) {
            double acc = 0.0;
            for (std::ptrdiff_t k = -half; k <= half; ++k) {
                acc += lz[static_cast<std::size_t>(mirror(t + k))];
            }
            out[static_cast<std::size_t>(t)] = std::exp(acc / static_cast<double>(window));
        }
        return out;
    };
    ImpedanceModel prior;
    prior.zp = window == 1 ? m.zp : smooth(m.zp);
    if (m.zs) {
        prior.zs = window == 1 ? *m.zs : smooth(*m.zs);
    }
    return prior;
}

} // namespace hqpinn
