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
 * Quantum layer: feature map, basic-entangler ansatz and Pauli-Z readout.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hqpinn/qembed.hpp"
#include "hqpinn/qstate.hpp"

namespace hqpinn {

enum class Ansatz { BasicEntangler, None };

struct QNodeSpec {
    std::size_t n_qubits = 1;
    EmbeddingSpec embedding{EmbeddingKind::Amplitude, Axis::Y, 1};
    std::size_t n_layers = 2;
    Axis rotation_axis = Axis::X;
    Ansatz ansatz = Ansatz::BasicEntangler;

    /// Trainable rotation count: n_layers * n_qubits, or 0 without ansatz.
    [[nodiscard]] std::size_t n_params() const noexcept;
    [[nodiscard]] std::size_t effective_layers() const noexcept;
};

/// Amplitude-embedding spec with the usual defaults.
[[nodiscard]] QNodeSpec make_qnode_spec(std::size_t n_qubits, Ansatz ansatz = Ansatz::BasicEntangler,
                                        Axis axis = Axis::X, std::size_t n_layers = 2);

/// Ansatz angles, row-major (layer, qubit), radians.
class ThetaTensor {
  public:
    ThetaTensor() = default;
    ThetaTensor(std::size_t layers, std::size_t qubits, double fill = 0.0)
        : layers_(layers), qubits_(qubits), values_(layers * qubits, fill) {}

    /// Zero-sized tensor when the spec has no ansatz.
    static ThetaTensor for_spec(const QNodeSpec &spec, double fill = 0.0);

    [[nodiscard]] std::size_t layers() const noexcept { return layers_; }
    [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    double &operator()(std::size_t layer, std::size_t qubit) { return values_[layer * qubits_ + qubit]; }
    [[nodiscard]] double operator()(std::size_t layer, std::size_t qubit) const {
        return values_[layer * qubits_ + qubit];
    }
    double &operator[](std::size_t i) { return values_[i]; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    [[nodiscard]] std::span<double> flat() noexcept { return values_; }
    [[nodiscard]] std::span<const double> flat() const noexcept { return values_; }

    bool operator==(const ThetaTensor &) const = default;

  private:
    std::size_t layers_ = 0;
    std::size_t qubits_ = 0;
    std::vector<double> values_;
};

/// Throws DomainError when the tensor shape does not match the spec.
void check_theta(const QNodeSpec &spec, const ThetaTensor &theta);

/**
 * Basic-entangler layers: R_axis(theta[l, q]) on every wire, then a CNOT ring
 * 0->1, 1->2, ..., n-2->n-1, n-1->0. Two wires use the pair (0->1, 1->0); a
 * single wire gets no CNOTs. Empty without ansatz.
 */
[[nodiscard]] Circuit build_ansatz_circuit(const QNodeSpec &spec, const ThetaTensor &theta);

/// Position in build_ansatz_circuit() of the gate driven by each flat theta index.
[[nodiscard]] std::vector<std::size_t> parameter_gate_positions(const QNodeSpec &spec);

/// Number of gates in the ansatz circuit.
[[nodiscard]] std::size_t ansatz_gate_count(const QNodeSpec &spec);

/// Embedded input state, prepared once and reused across evaluations.
[[nodiscard]] StateVector prepare_input(const QNodeSpec &spec, std::span<const double> x,
                                        Preparation prep = Preparation::Direct);

/// [<Z_0>, ..., <Z_{n-1}>] after running the ansatz on an embedded state.
[[nodiscard]] std::vector<double> qnode_forward(const QNodeSpec &spec, const ThetaTensor &theta,
                                                const StateVector &embedded);

[[nodiscard]] std::vector<double> qnode_forward(const QNodeSpec &spec, const ThetaTensor &theta,
                                                std::span<const double> x);

} // namespace hqpinn
