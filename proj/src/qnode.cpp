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
#include "hqpinn/qnode.hpp"

#include <string>

#include "hqpinn/errors.hpp"

namespace hqpinn {

namespace {

GateOp rotation(Axis axis, std::size_t wire, double angle) {
    switch (axis) {
    case Axis::X:
        return GateOp::rx(wire, angle);
    case Axis::Y:
        return GateOp::ry(wire, angle);
    case Axis::Z:
        return GateOp::rz(wire, angle);
    }
    throw DomainError("unknown rotation axis");
}

std::size_t ring_size(std::size_t n) { return n >= 2 ? n : 0; }

} // namespace

std::size_t QNodeSpec::effective_layers() const noexcept {
    return ansatz == Ansatz::None ? 0 : n_layers;
}

std::size_t QNodeSpec::n_params() const noexcept { return effective_layers() * n_qubits; }

QNodeSpec make_qnode_spec(std::size_t n_qubits, Ansatz ansatz, Axis axis, std::size_t n_layers) {
    QNodeSpec spec;
    spec.n_qubits = n_qubits;
    spec.embedding = {EmbeddingKind::Amplitude, Axis::Y, n_qubits};
    spec.n_layers = n_layers;
    spec.rotation_axis = axis;
    spec.ansatz = ansatz;
    return spec;
}

ThetaTensor ThetaTensor::for_spec(const QNodeSpec &spec, double fill) {
    return {spec.effective_layers(), spec.effective_layers() == 0 ? 0 : spec.n_qubits, fill};
}

void check_theta(const QNodeSpec &spec, const ThetaTensor &theta) {
    // Without an ansatz there is nothing to parameterize; theta is ignored.
    if (spec.n_params() == 0) {
        return;
    }
    if (theta.layers() != spec.n_layers || theta.qubits() != spec.n_qubits) {
        throw DomainError("theta shape (" + std::to_string(theta.layers()) + " x " +
                          std::to_string(theta.qubits()) + ") does not match spec (" +
                          std::to_string(spec.effective_layers()) + " x " +
                          std::to_string(spec.n_qubits) + ")");
    }
}

Circuit build_ansatz_circuit(const QNodeSpec &spec, const ThetaTensor &theta) {
    check_theta(spec, theta);
    const std::size_t n = spec.n_qubits;
    Circuit c;
    c.reserve(ansatz_gate_count(spec));
    for (std::size_t l = 0; l < spec.effective_layers(); ++l) {
        for (std::size_t q = 0; q < n; ++q) {
            c.push_back(rotation(spec.rotation_axis, q, theta(l, q)));
        }
        for (std::size_t q = 0; q < ring_size(n); ++q) {
            c.push_back(GateOp::cnot(q, (q + 1) % n));
        }
    }
    return c;
}

std::vector<std::size_t> parameter_gate_positions(const QNodeSpec &spec) {
    const std::size_t n = spec.n_qubits;
    const std::size_t per_layer = n + ring_size(n);
    std::vector<std::size_t> pos;
    pos.reserve(spec.n_params());
    for (std::size_t l = 0; l < spec.effective_layers(); ++l) {
        for (std::size_t q = 0; q < n; ++q) {
            pos.push_back(l * per_layer + q);
        }
    }
    return pos;
}

std::size_t ansatz_gate_count(const QNodeSpec &spec) {
    return spec.effective_layers() * (spec.n_qubits + ring_size(spec.n_qubits));
}

StateVector prepare_input(const QNodeSpec &spec, std::span<const double> x, Preparation prep) {
    EmbeddingSpec e = spec.embedding;
    e.n_qubits = spec.n_qubits;
    return embed(e, x, prep);
}

std::vector<double> qnode_forward(const QNodeSpec &spec, const ThetaTensor &theta,
                                  const StateVector &embedded) {
    if (embedded.n_qubits() != spec.n_qubits) {
        throw DomainError("qnode_forward: embedded state has wrong qubit count");
    }
    StateVector s = embedded;
    apply_circuit_inplace(s, build_ansatz_circuit(spec, theta));
    return expectations_z(s);
}

std::vector<double> qnode_forward(const QNodeSpec &spec, const ThetaTensor &theta,
                                  std::span<const double> x) {
    return qnode_forward(spec, theta, prepare_input(spec, x));
}

} // namespace hqpinn
