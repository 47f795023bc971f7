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
#include "hqpinn/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hqpinn/errors.hpp"

namespace hqpinn {

namespace {

constexpr cplx kI{0.0, 1.0};

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

bool is_two_wire_kind(GateKind k) {
    return k == GateKind::CNOT || k == GateKind::CRX || k == GateKind::CRY ||
           k == GateKind::CRZ;
}

kernels::Mat2 rotation_x(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {c, -kI * s, -kI * s, c};
}

kernels::Mat2 rotation_y(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {c, -s, s, c};
}

kernels::Mat2 rotation_z(double theta) {
    return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
}

kernels::ControlMask control_mask(const StateVector &s, const GateOp &g) {
    kernels::ControlMask m;
    for (const auto w : g.controls) {
        m.mask |= std::uint64_t{1} << s.bit_of(w);
    }
    m.value = g.control_state == ControlState::OnOne ? m.mask : 0;
    return m;
}

} // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw DomainError("StateVector: qubit count must be in [1, " +
                          std::to_string(kMaxQubits) + "], got " + std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amps) {
    if (!is_power_of_two(amps.size()) || amps.size() < 2) {
        throw DomainError("StateVector: amplitude count must be a power of two >= 2");
    }
    StateVector s(log2_exact(amps.size()));
    s.amps_ = std::move(amps);
    if (std::abs(s.norm() - 1.0) > 1e-10) {
        throw DomainError("StateVector: amplitudes are not normalized");
    }
    return s;
}

double StateVector::norm() const { return std::sqrt(kernels::omp::norm_sq(amps_)); }

unsigned StateVector::bit_of(std::size_t wire) const {
    if (wire >= n_qubits_) {
        throw DomainError("wire " + std::to_string(wire) + " out of range for " +
                          std::to_string(n_qubits_) + " qubits");
    }
    return static_cast<unsigned>(n_qubits_ - 1 - wire);
}

StateVector basis_state(std::size_t n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.size()) {
        throw DomainError("basis_state: index " + std::to_string(index) + " out of range");
    }
    s.amps()[0] = 0.0;
    s.amps()[index] = 1.0;
    return s;
}

StateVector bloch_state(double theta, double phi) {
    return StateVector::from_amplitudes(
        {cplx{std::cos(theta / 2), 0.0}, std::polar(1.0, phi) * std::sin(theta / 2)});
}

// ---------------------------------------------------------------------------
// GateOp

GateOp GateOp::rx(std::size_t wire, double angle) { return {GateKind::RX, {angle, 0, 0}, {wire}, {}}; }
GateOp GateOp::ry(std::size_t wire, double angle) { return {GateKind::RY, {angle, 0, 0}, {wire}, {}}; }
GateOp GateOp::rz(std::size_t wire, double angle) { return {GateKind::RZ, {angle, 0, 0}, {wire}, {}}; }
GateOp GateOp::rot(std::size_t wire, double theta, double phi, double lambda) {
    return {GateKind::Rot, {theta, phi, lambda}, {wire}, {}};
}
GateOp GateOp::pauli_x(std::size_t wire) { return {GateKind::PauliX, {}, {wire}, {}}; }
GateOp GateOp::pauli_y(std::size_t wire) { return {GateKind::PauliY, {}, {wire}, {}}; }
GateOp GateOp::pauli_z(std::size_t wire) { return {GateKind::PauliZ, {}, {wire}, {}}; }
GateOp GateOp::hadamard(std::size_t wire) { return {GateKind::Hadamard, {}, {wire}, {}}; }
GateOp GateOp::cnot(std::size_t control, std::size_t target) {
    return {GateKind::CNOT, {}, {target}, {control}};
}
GateOp GateOp::crx(std::size_t control, std::size_t target, double angle) {
    return {GateKind::CRX, {angle, 0, 0}, {target}, {control}};
}
GateOp GateOp::cry(std::size_t control, std::size_t target, double angle) {
    return {GateKind::CRY, {angle, 0, 0}, {target}, {control}};
}
GateOp GateOp::crz(std::size_t control, std::size_t target, double angle) {
    return {GateKind::CRZ, {angle, 0, 0}, {target}, {control}};
}

bool GateOp::is_pauli_rotation() const noexcept {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::CRX:
    case GateKind::CRY:
    case GateKind::CRZ:
        return true;
    default:
        return false;
    }
}

kernels::Mat2 target_matrix(const GateOp &g) {
    const double theta = g.params[0];
    switch (g.kind) {
    case GateKind::RX:
    case GateKind::CRX:
        return rotation_x(theta);
    case GateKind::RY:
    case GateKind::CRY:
        return rotation_y(theta);
    case GateKind::RZ:
    case GateKind::CRZ:
        return rotation_z(theta);
    case GateKind::Rot: {
        const double phi = g.params[1];
        const double lambda = g.params[2];
        const double c = std::cos(theta / 2);
        const double s = std::sin(theta / 2);
        return {c, -std::polar(1.0, lambda) * s, std::polar(1.0, phi) * s,
                std::polar(1.0, phi + lambda) * c};
    }
    case GateKind::PauliX:
    case GateKind::CNOT:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::PauliY:
        return {0.0, -kI, kI, 0.0};
    case GateKind::PauliZ:
        return {1.0, 0.0, 0.0, -1.0};
    case GateKind::Hadamard: {
        const double r = 1.0 / std::sqrt(2.0);
        return {r, r, r, -r};
    }
    }
    throw DomainError("target_matrix: unknown gate kind");
}

GateMatrix gate_matrix(const GateOp &g) {
    const auto u = target_matrix(g);
    GateMatrix out;
    if (!is_two_wire_kind(g.kind)) {
        out.dim = 2;
        out(0, 0) = u.m00;
        out(0, 1) = u.m01;
        out(1, 0) = u.m10;
        out(1, 1) = u.m11;
        return out;
    }
    out.dim = 4;
    // Control block selected by the control state; the other block is identity.
    const std::size_t active = g.control_state == ControlState::OnOne ? 2 : 0;
    const std::size_t idle = 2 - active;
    out(idle, idle) = 1.0;
    out(idle + 1, idle + 1) = 1.0;
    out(active, active) = u.m00;
    out(active, active + 1) = u.m01;
    out(active + 1, active) = u.m10;
    out(active + 1, active + 1) = u.m11;
    return out;
}

GateOp adjoint(const GateOp &g) {
    GateOp a = g;
    switch (g.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::CRX:
    case GateKind::CRY:
    case GateKind::CRZ:
        a.params[0] = -g.params[0];
        break;
    case GateKind::Rot:
        a.params = {-g.params[0], -g.params[2], -g.params[1]};
        break;
    default:
        break;
    }
    return a;
}

void validate_gate(const GateOp &g, std::size_t n_qubits) {
    if (g.targets.size() != 1) {
        throw DomainError("gate must have exactly one target wire");
    }
    if (is_two_wire_kind(g.kind) && g.controls.empty()) {
        throw DomainError("controlled gate requires at least one control wire");
    }
    std::vector<std::size_t> wires = g.controls;
    wires.push_back(g.targets.front());
    for (const auto w : wires) {
        if (w >= n_qubits) {
            throw DomainError("wire " + std::to_string(w) + " out of range for " +
                              std::to_string(n_qubits) + " qubits");
        }
    }
    std::sort(wires.begin(), wires.end());
    if (std::adjacent_find(wires.begin(), wires.end()) != wires.end()) {
        throw DomainError("gate wires must be distinct");
    }
}

void apply_gate_inplace(StateVector &s, const GateOp &g) {
    validate_gate(g, s.n_qubits());
    const unsigned bit = s.bit_of(g.targets.front());
    const auto ctrl = control_mask(s, g);
    if (g.kind == GateKind::PauliX || g.kind == GateKind::CNOT) {
        kernels::omp::apply_x(s.amps(), bit, ctrl);
    } else {
        kernels::omp::apply_1q(s.amps(), bit, target_matrix(g), ctrl);
    }
}

StateVector apply_gate(StateVector s, const GateOp &g) {
    apply_gate_inplace(s, g);
    return s;
}

void apply_circuit_inplace(StateVector &s, const Circuit &c) {
    for (const auto &g : c) {
        apply_gate_inplace(s, g);
    }
}

double expectation_z(const StateVector &s, std::size_t wire) {
    return kernels::omp::expectation_z(s.amps(), s.bit_of(wire));
}

std::vector<double> expectations_z(const StateVector &s) {
    std::vector<double> out(s.n_qubits());
    for (std::size_t w = 0; w < s.n_qubits(); ++w) {
        out[w] = expectation_z(s, w);
    }
    return out;
}

cplx inner_product(const StateVector &a, const StateVector &b) {
    if (a.size() != b.size()) {
        throw DomainError("inner_product: size mismatch");
    }
    return kernels::omp::inner(a.amps(), b.amps());
}

} // namespace hqpinn
