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
#include "hqpinn/qgrad.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "hqpinn/errors.hpp"

namespace hqpinn {

namespace {

// Column j of the Jacobian from expectations at theta_j +/- step, scaled by
// `scale`. Columns are independent, so they are evaluated concurrently.
JacobianResult two_point_jacobian(const QNodeSpec &spec, const ThetaTensor &theta,
                                  const StateVector &embedded, double step, double scale) {
    check_theta(spec, theta);
    const std::size_t n = spec.n_qubits;
    const auto p = static_cast<std::int64_t>(spec.n_params());
    JacobianResult out{QuantumJacobian(n, spec.n_params()), {}};

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t j = 0; j < p; ++j) {
        ThetaTensor shifted = theta;
        shifted[static_cast<std::size_t>(j)] = theta[static_cast<std::size_t>(j)] + step;
        const auto plus = qnode_forward(spec, shifted, embedded);
        shifted[static_cast<std::size_t>(j)] = theta[static_cast<std::size_t>(j)] - step;
        const auto minus = qnode_forward(spec, shifted, embedded);
        for (std::size_t k = 0; k < n; ++k) {
            out.jacobian(k, static_cast<std::size_t>(j)) = scale * (plus[k] - minus[k]);
        }
    }
    out.stats.circuit_evaluations = 2 * spec.n_params();
    out.stats.gate_applications = 2 * spec.n_params() * ansatz_gate_count(spec);
    return out;
}

GateOp generator(const GateOp &g) {
    const std::size_t wire = g.targets.front();
    switch (g.kind) {
    case GateKind::RX:
        return GateOp::pauli_x(wire);
    case GateKind::RY:
        return GateOp::pauli_y(wire);
    case GateKind::RZ:
        return GateOp::pauli_z(wire);
    default:
        throw ContractError("adjoint differentiation supports uncontrolled Pauli rotations only");
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::string_view to_string(GradMethod m) {
    switch (m) {
    case GradMethod::ParameterShift:
        return "parameter-shift";
    case GradMethod::Adjoint:
        return "adjoint";
    case GradMethod::FiniteDifference:
        return "finite-difference";
    case GradMethod::SPSA:
        return "spsa";
    }
    return "unknown";
}

GradMethod parse_grad_method(std::string_view s) {
    for (auto m : {GradMethod::ParameterShift, GradMethod::Adjoint, GradMethod::FiniteDifference,
                   GradMethod::SPSA}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw DomainError("unknown gradient method '" + std::string(s) + "'");
}

void GradConfig::validate() const {
    if (!(fd_delta > 0.0)) {
        throw DomainError("fd_delta must be positive");
    }
    if (!(spsa_epsilon > 0.0)) {
        throw DomainError("spsa_epsilon must be positive");
    }
    if (spsa_num_samples == 0) {
        throw DomainError("spsa_num_samples must be at least 1");
    }
}

double QuantumJacobian::max_abs_diff(const QuantumJacobian &other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw DomainError("QuantumJacobian: shape mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        m = std::max(m, std::abs(values_[i] - other.values_[i]));
    }
    return m;
}

std::vector<double> QuantumJacobian::vjp(std::span<const double> v) const {
    if (v.size() != rows_) {
        throw DomainError("QuantumJacobian::vjp: vector length mismatch");
    }
    std::vector<double> out(cols_, 0.0);
    for (std::size_t k = 0; k < rows_; ++k) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out[j] += v[k] * (*this)(k, j);
        }
    }
    return out;
}

JacobianResult jacobian_parameter_shift(const QNodeSpec &spec, const ThetaTensor &theta,
                                        const StateVector &embedded) {
    return two_point_jacobian(spec, theta, embedded, std::numbers::pi / 2, 0.5);
}

JacobianResult jacobian_finite_difference(const QNodeSpec &spec, const ThetaTensor &theta,
                                          const StateVector &embedded, double delta) {
    if (!(delta > 0.0)) {
        throw DomainError("finite-difference delta must be positive");
    }
    return two_point_jacobian(spec, theta, embedded, delta, 0.5 / delta);
}

JacobianResult jacobian_adjoint(const QNodeSpec &spec, const ThetaTensor &theta,
                                const StateVector &embedded, std::vector<double> *expectations) {
    const Circuit circuit = build_ansatz_circuit(spec, theta);
    const std::size_t n = spec.n_qubits;
    const std::size_t gates = circuit.size();

    std::vector<std::ptrdiff_t> param_of(gates, -1);
    const auto positions = parameter_gate_positions(spec);
    for (std::size_t j = 0; j < positions.size(); ++j) {
        param_of[positions[j]] = static_cast<std::ptrdiff_t>(j);
    }

    JacobianResult out{QuantumJacobian(n, spec.n_params()), {}};
    std::size_t applied = 0;

    StateVector phi = embedded;
    apply_circuit_inplace(phi, circuit);
    applied += gates;
    if (expectations != nullptr) {
        *expectations = expectations_z(phi);
    }

    // lambda_k = Z_k |psi>, pulled back through the circuit alongside phi.
    std::vector<StateVector> lambda(n, phi);
    for (std::size_t k = 0; k < n; ++k) {
        apply_gate_inplace(lambda[k], GateOp::pauli_z(k));
    }
    applied += n;

    for (std::size_t i = gates; i-- > 0;) {
        const GateOp &g = circuit[i];
        if (param_of[i] >= 0) {
            // dU/dtheta = -i/2 G U, so d<Z_k>/dtheta = 2 Re <lambda_k| -i/2 G |phi>
            //                                        = Im <lambda_k| G |phi>.
            StateVector mu = phi;
            apply_gate_inplace(mu, generator(g));
            ++applied;
            const auto j = static_cast<std::size_t>(param_of[i]);
            for (std::size_t k = 0; k < n; ++k) {
                out.jacobian(k, j) = inner_product(lambda[k], mu).imag();
            }
        }
        if (i == 0) {
            break;
        }
        const GateOp inv = adjoint(g);
        apply_gate_inplace(phi, inv);
        for (auto &l : lambda) {
            apply_gate_inplace(l, inv);
        }
        applied += 1 + n;
    }
    out.stats.circuit_evaluations = 0;
    out.stats.gate_applications = applied;
    return out;
}

JacobianResult jacobian(const QNodeSpec &spec, const ThetaTensor &theta, const StateVector &embedded,
                        const GradConfig &cfg) {
    cfg.validate();
    switch (cfg.method) {
    case GradMethod::ParameterShift:
        return jacobian_parameter_shift(spec, theta, embedded);
    case GradMethod::Adjoint:
        return jacobian_adjoint(spec, theta, embedded);
    case GradMethod::FiniteDifference:
        return jacobian_finite_difference(spec, theta, embedded, cfg.fd_delta);
    case GradMethod::SPSA:
        break;
    }
    throw ContractError("SPSA estimates a loss gradient, not a Jacobian");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

SpsaResult spsa_loss_gradient(const LossFn &loss, std::span<const double> theta, double epsilon,
                              std::size_t num_samples, std::uint64_t seed) {
    if (!(epsilon > 0.0)) {
        throw DomainError("spsa epsilon must be positive");
    }
    if (num_samples == 0) {
        throw DomainError("spsa needs at least one sample");
    }
    const std::size_t p = theta.size();
    SpsaResult out{std::vector<double>(p, 0.0), 0};
    std::vector<double> delta(p);
    std::vector<double> probe(p);
    for (std::size_t s = 0; s < num_samples; ++s) {
        std::mt19937_64 rng(derive_seed(seed, s));
        for (auto &d : delta) {
            d = (rng() >> 63) ? 1.0 : -1.0;
        }
        for (std::size_t i = 0; i < p; ++i) {
            probe[i] = theta[i] + epsilon * delta[i];
        }
        const double up = loss(probe);
        for (std::size_t i = 0; i < p; ++i) {
            probe[i] = theta[i] - epsilon * delta[i];
        }
        const double down = loss(probe);
        out.loss_evaluations += 2;
        const double diff = (up - down) / (2.0 * epsilon);
        for (std::size_t i = 0; i < p; ++i) {
            out.gradient[i] += diff / delta[i];
        }
    }
    for (auto &g : out.gradient) {
        g /= static_cast<double>(num_samples);
    }
    return out;
}

} // namespace hqpinn
