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
#include "hqpinn/qembed.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "hqpinn/errors.hpp"

namespace hqpinn {

namespace {

std::uint64_t gray(std::uint64_t i) { return i ^ (i >> 1); }

// Rotation angle sending (a, b) to cos(t/2), sin(t/2) proportions; 0 when
// both are zero so empty subtrees never rotate.
double split_angle(double a, double b) {
    if (a == 0.0 && b == 0.0) {
        return 0.0;
    }
    return 2.0 * std::atan2(b, a);
}

} // namespace

std::size_t qubits_for_length(std::size_t length) {
    std::size_t n = 1;
    while ((std::size_t{1} << n) < length) {
        ++n;
    }
    return n;
}

PaddedVector pad_and_normalize(std::span<const double> x) {
    if (x.empty()) {
        throw EmbeddingError("pad_and_normalize: empty input");
    }
    PaddedVector out;
    out.n_qubits = qubits_for_length(x.size());
    if (out.n_qubits > kMaxQubits) {
        throw EmbeddingError("pad_and_normalize: input too long");
    }
    out.values.assign(std::size_t{1} << out.n_qubits, 0.0);
    double sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) {
            throw EmbeddingError("pad_and_normalize: non-finite entry at " + std::to_string(i));
        }
        sq += x[i] * x[i];
    }
    if (sq == 0.0) {
        throw EmbeddingError("pad_and_normalize: all-zero input has no direction");
    }
    out.norm = std::sqrt(sq);
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.values[i] = x[i] / out.norm;
    }
    return out;
}

StateVector angle_embed(std::span<const double> x, std::size_t n_qubits, Axis axis) {
    if (x.size() > n_qubits) {
        throw DomainError("angle_embed: " + std::to_string(x.size()) + " features for " +
                          std::to_string(n_qubits) + " qubits");
    }
    StateVector s(n_qubits);
    for (std::size_t i = 0; i < x.size(); ++i) {
        switch (axis) {
        case Axis::X:
            apply_gate_inplace(s, GateOp::rx(i, x[i]));
            break;
        case Axis::Y:
            apply_gate_inplace(s, GateOp::ry(i, x[i]));
            break;
        case Axis::Z:
            apply_gate_inplace(s, GateOp::rz(i, x[i]));
            break;
        }
    }
    return s;
}

std::vector<std::vector<double>> amplitude_tree_angles(std::span<const double> unit_amplitudes) {
    const std::size_t size = unit_amplitudes.size();
    const std::size_t n = qubits_for_length(size);
    if ((std::size_t{1} << n) != size) {
        throw DomainError("amplitude_tree_angles: length must be a power of two");
    }
    // mass[k][p]: squared norm of the subtree under prefix p of length k.
    std::vector<std::vector<double>> mass(n + 1);
    mass[n].resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        mass[n][i] = unit_amplitudes[i] * unit_amplitudes[i];
    }
    for (std::size_t k = n; k-- > 0;) {
        mass[k].resize(std::size_t{1} << k);
        for (std::size_t p = 0; p < mass[k].size(); ++p) {
            mass[k][p] = mass[k + 1][2 * p] + mass[k + 1][2 * p + 1];
        }
    }
    std::vector<std::vector<double>> angles(n);
    for (std::size_t k = 0; k < n; ++k) {
        angles[k].resize(std::size_t{1} << k);
        for (std::size_t p = 0; p < angles[k].size(); ++p) {
            if (k + 1 == n) {
                // Leaves carry the sign.
                angles[k][p] = split_angle(unit_amplitudes[2 * p], unit_amplitudes[2 * p + 1]);
            } else {
                angles[k][p] = split_angle(std::sqrt(mass[k + 1][2 * p]),
                                           std::sqrt(mass[k + 1][2 * p + 1]));
            }
        }
    }
    return angles;
}

std::vector<double> uniform_rotation_angles(std::span<const double> alpha) {
    const std::size_t size = alpha.size();
    std::vector<double> theta(size, 0.0);
    for (std::size_t i = 0; i < size; ++i) {
        const std::uint64_t g = gray(i);
        double acc = 0.0;
        for (std::size_t p = 0; p < size; ++p) {
            acc += (std::popcount(p & g) & 1) ? -alpha[p] : alpha[p];
        }
        theta[i] = acc / static_cast<double>(size);
    }
    return theta;
}

Circuit amplitude_embedding_circuit(std::span<const double> x, std::size_t n_qubits) {
    const auto padded = pad_and_normalize(x);
    if (padded.n_qubits > n_qubits) {
        throw DomainError("amplitude_embed: " + std::to_string(x.size()) +
                          " values do not fit in " + std::to_string(n_qubits) + " qubits");
    }
    std::vector<double> unit = padded.values;
    unit.resize(std::size_t{1} << n_qubits, 0.0);

    const auto levels = amplitude_tree_angles(unit);
    Circuit c;
    for (std::size_t k = 0; k < n_qubits; ++k) {
        const auto theta = uniform_rotation_angles(levels[k]);
        if (k == 0) {
            c.push_back(GateOp::ry(0, theta[0]));
            continue;
        }
        // Prefix bit j belongs to wire k-1-j.
        const std::size_t count = theta.size();
        for (std::size_t i = 0; i < count; ++i) {
            c.push_back(GateOp::ry(k, theta[i]));
            const std::uint64_t flip = gray(i) ^ gray((i + 1) % count);
            const auto j = static_cast<std::size_t>(std::countr_zero(flip));
            c.push_back(GateOp::cnot(k - 1 - j, k));
        }
    }
    return c;
}

StateVector amplitude_embed(std::span<const double> x, std::size_t n_qubits, Preparation prep) {
    if (prep == Preparation::Circuit) {
        StateVector s(n_qubits);
        apply_circuit_inplace(s, amplitude_embedding_circuit(x, n_qubits));
        return s;
    }
    const auto padded = pad_and_normalize(x);
    if (padded.n_qubits > n_qubits) {
        throw DomainError("amplitude_embed: " + std::to_string(x.size()) +
                          " values do not fit in " + std::to_string(n_qubits) + " qubits");
    }
    std::vector<cplx> amps(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < padded.values.size(); ++i) {
        amps[i] = padded.values[i];
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector embed(const EmbeddingSpec &spec, std::span<const double> x, Preparation prep) {
    if (spec.kind == EmbeddingKind::Angle) {
        return angle_embed(x, spec.n_qubits, spec.rotation_axis);
    }
    return amplitude_embed(x, spec.n_qubits, prep);
}

} // namespace hqpinn
