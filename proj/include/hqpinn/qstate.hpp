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
 * Statevector representation and exact gate application.
 *
 * Wire 0 is the most significant bit of the amplitude index, so the
 * two-qubit state |10> lives at index 2.
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hqpinn/kernels.hpp"

namespace hqpinn {

/// Largest register the simulator accepts.
inline constexpr std::size_t kMaxQubits = 26;

/**
 * Dense vector of 2^n complex amplitudes.
 *
 * Construction yields |0...0>. Mutating access is exposed for gate engines;
 * callers that write amplitudes directly are responsible for the norm.
 */
class StateVector {
  public:
    explicit StateVector(std::size_t n_qubits);

    /// Wraps externally computed amplitudes. Length must be a power of two
    /// and the norm must be 1 within 1e-10.
    static StateVector from_amplitudes(std::vector<cplx> amps);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const cplx> amps() const noexcept { return amps_; }
    [[nodiscard]] std::span<cplx> amps() noexcept { return amps_; }
    [[nodiscard]] const cplx &operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] double norm() const;

    /// Bit position in the amplitude index that encodes `wire`.
    [[nodiscard]] unsigned bit_of(std::size_t wire) const;

  private:
    std::size_t n_qubits_;
    std::vector<cplx> amps_;
};

[[nodiscard]] StateVector basis_state(std::size_t n_qubits, std::uint64_t index);

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
[[nodiscard]] StateVector bloch_state(double theta, double phi);

enum class GateKind {
    RX,
    RY,
    RZ,
    Rot,
    PauliX,
    PauliY,
    PauliZ,
    Hadamard,
    CNOT,
    CRX,
    CRY,
    CRZ,
};

enum class ControlState { OnOne, OnZero };

/// One unitary operation on named wires.
struct GateOp {
    GateKind kind = GateKind::PauliX;
    std::array<double, 3> params{};
    std::vector<std::size_t> targets;
    std::vector<std::size_t> controls;
    ControlState control_state = ControlState::OnOne;

    static GateOp rx(std::size_t wire, double angle);
    static GateOp ry(std::size_t wire, double angle);
    static GateOp rz(std::size_t wire, double angle);
    static GateOp rot(std::size_t wire, double theta, double phi, double lambda);
    static GateOp pauli_x(std::size_t wire);
    static GateOp pauli_y(std::size_t wire);
    static GateOp pauli_z(std::size_t wire);
    static GateOp hadamard(std::size_t wire);
    static GateOp cnot(std::size_t control, std::size_t target);
    static GateOp crx(std::size_t control, std::size_t target, double angle);
    static GateOp cry(std::size_t control, std::size_t target, double angle);
    static GateOp crz(std::size_t control, std::size_t target, double angle);

    /// True for the single-angle Pauli rotations (and their controlled forms).
    [[nodiscard]] bool is_pauli_rotation() const noexcept;
};

using Circuit = std::vector<GateOp>;

/// Square complex matrix, row-major, dimension 2 or 4.
struct GateMatrix {
    std::size_t dim = 2;
    std::array<cplx, 16> m{};

    [[nodiscard]] cplx operator()(std::size_t r, std::size_t c) const { return m[r * dim + c]; }
    cplx &operator()(std::size_t r, std::size_t c) { return m[r * dim + c]; }
};

/**
 * Defining unitary of a gate.
 *
 * Single-qubit kinds return their 2x2 matrix; extra controls attached to a
 * GateOp are ignored here. CNOT and the controlled rotations return the 4x4
 * form in the (control, target) basis with the control as the high bit.
 */
[[nodiscard]] GateMatrix gate_matrix(const GateOp &g);

/// 2x2 unitary acted on the target once all controls are satisfied.
[[nodiscard]] kernels::Mat2 target_matrix(const GateOp &g);

/// Conjugate transpose of the same gate.
[[nodiscard]] GateOp adjoint(const GateOp &g);

/// Throws DomainError when wires are out of range, repeated, or the
/// target/control arity does not fit the kind.
void validate_gate(const GateOp &g, std::size_t n_qubits);

/// Applies `g` in place via strided amplitude-pair updates.
void apply_gate_inplace(StateVector &s, const GateOp &g);

[[nodiscard]] StateVector apply_gate(StateVector s, const GateOp &g);

/// Applies every gate of `c` in order, in place.
void apply_circuit_inplace(StateVector &s, const Circuit &c);

/// <psi| Z_wire |psi>
[[nodiscard]] double expectation_z(const StateVector &s, std::size_t wire);

/// All single-wire Z expectations, wire order.
[[nodiscard]] std::vector<double> expectations_z(const StateVector &s);

/// <a|b>
[[nodiscard]] cplx inner_product(const StateVector &a, const StateVector &b);

} // namespace hqpinn
