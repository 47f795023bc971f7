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
 * Gradients of QNode expectations with respect to the ansatz angles.
 *
 * Parameter-shift, adjoint and finite-difference produce a full
 * QuantumJacobian. SPSA estimates the gradient of a scalar loss directly.
 *
 * Every engine reports its cost in EvalStats:
 *  - circuit_evaluations counts full ansatz executions *beyond* the primal
 *    pass (2 * n_params for shift and finite differences, 0 for adjoint,
 *    2 * num_samples for SPSA).
 *  - gate_applications counts every gate applied to a statevector, which
 *    puts the adjoint reverse sweep on the same scale as circuit runs.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "hqpinn/qnode.hpp"

namespace hqpinn {

enum class GradMethod { ParameterShift, Adjoint, FiniteDifference, SPSA };

[[nodiscard]] std::string_view to_string(GradMethod m);
/// Accepts the CLI spellings: parameter-shift, adjoint, finite-difference, spsa.
[[nodiscard]] GradMethod parse_grad_method(std::string_view s);

struct GradConfig {
    GradMethod method = GradMethod::Adjoint;
    double fd_delta = 1e-4;
    double spsa_epsilon = 0.01;
    std::size_t spsa_num_samples = 1;
    std::uint64_t rng_seed = 0;

    /// Throws DomainError on non-positive step sizes or zero samples.
    void validate() const;
};

struct EvalStats {
    std::size_t circuit_evaluations = 0;
    std::size_t gate_applications = 0;

    EvalStats &operator+=(const EvalStats &o) {
        circuit_evaluations += o.circuit_evaluations;
        gate_applications += o.gate_applications;
        return *this;
    }
};

/// d<Z_k>/d theta_j, shape (n_qubits, n_params), row-major.
class QuantumJacobian {
  public:
    QuantumJacobian() = default;
    QuantumJacobian(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    double &operator()(std::size_t k, std::size_t j) { return values_[k * cols_ + j]; }
    [[nodiscard]] double operator()(std::size_t k, std::size_t j) const { return values_[k * cols_ + j]; }
    [[nodiscard]] std::span<const double> flat() const noexcept { return values_; }

    /// Largest |a - b| over all entries; shapes must match.
    [[nodiscard]] double max_abs_diff(const QuantumJacobian &other) const;

    /// v^T J, length cols().
    [[nodiscard]] std::vector<double> vjp(std::span<const double> v) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

struct JacobianResult {
    QuantumJacobian jacobian;
    EvalStats stats;
};

[[nodiscard]] JacobianResult jacobian_parameter_shift(const QNodeSpec &spec, const ThetaTensor &theta,
                                                      const StateVector &embedded);

/// Also returns the primal expectations through `expectations` when non-null;
/// the forward sweep it needs is the primal pass.
[[nodiscard]] JacobianResult jacobian_adjoint(const QNodeSpec &spec, const ThetaTensor &theta,
                                              const StateVector &embedded,
                                              std::vector<double> *expectations = nullptr);

[[nodiscard]] JacobianResult jacobian_finite_difference(const QNodeSpec &spec, const ThetaTensor &theta,
                                                        const StateVector &embedded, double delta);

/// Dispatches on cfg.method. SPSA has no Jacobian and raises ContractError.
[[nodiscard]] JacobianResult jacobian(const QNodeSpec &spec, const ThetaTensor &theta,
                                      const StateVector &embedded, const GradConfig &cfg);

using LossFn = std::function<double(std::span<const double>)>;

struct SpsaResult {
    std::vector<double> gradient;
    std::size_t loss_evaluations = 0;
};

/**
 * Averages num_samples two-sided simultaneous-perturbation estimates
 *
 *     g_i = [L(theta + eps * D) - L(theta - eps * D)] / (2 * eps * D_i)
 *
 * with Rademacher D. Sample s draws D from its own generator seeded by
 * (seed, s), so results do not depend on evaluation order. Exactly
 * 2 * num_samples loss evaluations.
 */
[[nodiscard]] SpsaResult spsa_loss_gradient(const LossFn &loss, std::span<const double> theta,
                                            double epsilon, std::size_t num_samples,
                                            std::uint64_t seed);

/// Deterministic 64-bit mix for deriving child seeds.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace hqpinn
