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
 * Classical-to-quantum feature maps: angle and amplitude embedding.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hqpinn/qstate.hpp"

namespace hqpinn {

enum class Axis { X, Y, Z };

enum class EmbeddingKind { Angle, Amplitude };

struct EmbeddingSpec {
    EmbeddingKind kind = EmbeddingKind::Amplitude;
    Axis rotation_axis = Axis::Y; ///< Angle embedding only.
    std::size_t n_qubits = 1;
};

struct PaddedVector {
    std::vector<double> values; ///< Unit norm, power-of-two length.
    double norm = 0.0;          ///< Euclidean norm of the raw input.
    std::size_t n_qubits = 0;
};

/// Zero-pads to the next power of two (minimum 2) and normalizes.
/// Throws EmbeddingError for empty or all-zero input.
[[nodiscard]] PaddedVector pad_and_normalize(std::span<const double> x);

/// Smallest qubit count whose register holds `length` amplitudes (>= 1).
[[nodiscard]] std::size_t qubits_for_length(std::size_t length);

/// Tensor product of R_axis(x_i)|0> on wires 0..len(x)-1; remaining wires stay |0>.
[[nodiscard]] StateVector angle_embed(std::span<const double> x, std::size_t n_qubits,
                                      Axis axis);

/**
 * Möttönen state-preparation circuit for a real amplitude vector.
 *
 * Each wire k receives a uniformly controlled RY conditioned on wires 0..k-1,
 * decomposed into 2^k RY rotations interleaved with 2^k CNOTs along a Gray
 * code. Applied to |0...0>, the circuit yields pad_and_normalize(x) exactly,
 * signs included. `x` may be shorter than 2^n_qubits (zero tail).
 */
[[nodiscard]] Circuit amplitude_embedding_circuit(std::span<const double> x,
                                                  std::size_t n_qubits);

/// Uniformly controlled rotation angles per level: result[k][p] is the RY
/// angle applied to wire k when wires 0..k-1 hold the prefix p.
[[nodiscard]] std::vector<std::vector<double>>
amplitude_tree_angles(std::span<const double> unit_amplitudes);

/// Gray-code angle transform for a uniformly controlled rotation with
/// log2(alpha.size()) controls.
[[nodiscard]] std::vector<double> uniform_rotation_angles(std::span<const double> alpha);

enum class Preparation {
    Circuit, ///< Run the Möttönen circuit gate by gate.
    Direct,  ///< Assign the normalized amplitudes directly.
};

/// Amplitude-embedded state. Both preparations agree within 1e-10.
[[nodiscard]] StateVector amplitude_embed(std::span<const double> x, std::size_t n_qubits,
                                          Preparation prep = Preparation::Circuit);

/// Dispatches on spec.kind.
[[nodiscard]] StateVector embed(const EmbeddingSpec &spec, std::span<const double> x,
                                Preparation prep = Preparation::Direct);

} // namespace hqpinn
