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
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hqpinn/errors.hpp"
#include "hqpinn/qgrad.hpp"

using namespace hqpinn;

namespace {

struct Instance {
    QNodeSpec spec;
    ThetaTensor theta;
    StateVector embedded{1};
};

Instance random_instance(std::mt19937_64 &rng, std::size_t max_qubits = 5, std::size_t max_layers = 3) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_qubits)(rng);
    const std::size_t layers = std::uniform_int_distribution<std::size_t>(1, max_layers)(rng);
    const Axis axis = static_cast<Axis>(std::uniform_int_distribution<int>(0, 2)(rng));
    Instance in{make_qnode_spec(n, Ansatz::BasicEntangler, axis, layers), {}, StateVector(n)};
    in.theta = ThetaTensor::for_spec(in.spec);
    std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
    for (auto &t : in.theta.flat()) {
        t = u(rng);
    }
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> x(std::size_t{1} << n);
    for (auto &v : x) {
        v = g(rng);
    }
    in.embedded = prepare_input(in.spec, x);
    return in;
}

StateVector ket0() { return StateVector(1); }

} // namespace

TEST(ParameterShift, AnalyticSingleQubit) {
    const auto spec = make_qnode_spec(1, Ansatz::BasicEntangler, Axis::X, 1);
    EXPECT_NEAR(jacobian_parameter_shift(spec, ThetaTensor(1, 1, 0.0), ket0()).jacobian(0, 0), 0.0, 1e-15);
    EXPECT_NEAR(jacobian_parameter_shift(spec, ThetaTensor(1, 1, M_PI / 2), ket0()).jacobian(0, 0), -1.0, 1e-15);
}

TEST(Adjoint, AnalyticSingleQubit) {
    const auto spec = make_qnode_spec(1, Ansatz::BasicEntangler, Axis::X, 1);
    EXPECT_NEAR(jacobian_adjoint(spec, ThetaTensor(1, 1, M_PI / 2), ket0()).jacobian(0, 0), -1.0, 1e-15);
    for (const double t : {0.1, 1.3, 4.0}) {
        EXPECT_NEAR(jacobian_adjoint(spec, ThetaTensor(1, 1, t), ket0()).jacobian(0, 0), -std::sin(t), 1e-14);
    }
}

TEST(Adjoint, NoAnsatzGivesEmptyJacobian) {
    const auto spec = make_qnode_spec(3, Ansatz::None);
    const auto r = jacobian_adjoint(spec, ThetaTensor::for_spec(spec), StateVector(3));
    EXPECT_EQ(r.jacobian.rows(), 3U);
    EXPECT_EQ(r.jacobian.cols(), 0U);
}

TEST(Adjoint, ReturnsForwardExpectations) {
    std::mt19937_64 rng(4);
    const auto in = random_instance(rng);
    std::vector<double> e;
    (void)jacobian_adjoint(in.spec, in.theta, in.embedded, &e);
    EXPECT_EQ(e, qnode_forward(in.spec, in.theta, in.embedded));
}

TEST(FiniteDifference, AnalyticSingleQubit) {
    const auto spec = make_qnode_spec(1, Ansatz::BasicEntangler, Axis::X, 1);
    EXPECT_NEAR(jacobian_finite_difference(spec, ThetaTensor(1, 1, M_PI / 2), ket0(), 1e-4).jacobian(0, 0), -1.0,
                1e-7);
    EXPECT_NEAR(jacobian_finite_difference(spec, ThetaTensor(1, 1, 0.0), ket0(), 1e-4).jacobian(0, 0), 0.0, 1e-8);
}

TEST(CrossMethod, HundredRandomQNodes) {
    std::mt19937_64 rng(20260101);
    for (int rep = 0; rep < 100; ++rep) {
        const auto in = random_instance(rng);
        const auto ps = jacobian_parameter_shift(in.spec, in.theta, in.embedded);
        const auto adj = jacobian_adjoint(in.spec, in.theta, in.embedded);
        const auto fd = jacobian_finite_difference(in.spec, in.theta, in.embedded, 1e-4);
        ASSERT_EQ(ps.jacobian.rows(), in.spec.n_qubits);
        ASSERT_EQ(ps.jacobian.cols(), in.spec.n_params());
        EXPECT_LT(ps.jacobian.max_abs_diff(adj.jacobian), 1e-10) << "rep=" << rep;
        EXPECT_LT(ps.jacobian.max_abs_diff(fd.jacobian), 1e-5) << "rep=" << rep;
        EXPECT_LT(adj.jacobian.max_abs_diff(fd.jacobian), 1e-5) << "rep=" << rep;
    }
}

TEST(CrossMethod, ThreeQubitsTwoLayersTight) {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 10; ++rep) {
        auto in = random_instance(rng, 3, 2);
        const auto ps = jacobian_parameter_shift(in.spec, in.theta, in.embedded);
        const auto fd = jacobian_finite_difference(in.spec, in.theta, in.embedded, 1e-4);
        EXPECT_LT(ps.jacobian.max_abs_diff(fd.jacobian), 1e-6);
    }
}

TEST(EvalStats, CountsPerMethod) {
    std::mt19937_64 rng(5);
    const auto spec = make_qnode_spec(4, Ansatz::BasicEntangler, Axis::X, 2);
    auto theta = ThetaTensor::for_spec(spec, 0.3);
    const StateVector s(4);
    const std::size_t p = spec.n_params();
    const std::size_t gates = ansatz_gate_count(spec);

    const auto ps = jacobian_parameter_shift(spec, theta, s);
    EXPECT_EQ(ps.stats.circuit_evaluations, 2 * p);
    EXPECT_EQ(ps.stats.gate_applications, 2 * p * gates);
    const auto fd = jacobian_finite_difference(spec, theta, s, 1e-4);
    EXPECT_EQ(fd.stats.circuit_evaluations, 2 * p);
    EXPECT_EQ(fd.stats.gate_applications, 2 * p * gates);

    const auto adj = jacobian_adjoint(spec, theta, s);
    EXPECT_EQ(adj.stats.circuit_evaluations, 0U);
    EXPECT_GT(adj.stats.gate_applications, gates);
    EXPECT_LT(adj.stats.gate_applications, 2 * p * gates);

    GradConfig cfg;
    cfg.method = GradMethod::SPSA;
    EXPECT_THROW((void)jacobian(spec, theta, s, cfg), ContractError);
}

TEST(GradConfig, Validation) {
    GradConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.fd_delta = 0.0;
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg = {};
    cfg.spsa_epsilon = -1.0;
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg = {};
    cfg.spsa_num_samples = 0;
    EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(GradMethodNames, RoundTrip) {
    for (const auto m : {GradMethod::ParameterShift, GradMethod::Adjoint, GradMethod::FiniteDifference,
                         GradMethod::SPSA}) {
        EXPECT_EQ(parse_grad_method(to_string(m)), m);
    }
    EXPECT_THROW((void)parse_grad_method("backprop"), DomainError);
}

TEST(Spsa, QuadraticAtOriginIsExactlyZero) {
    const LossFn quad = [](std::span<const double> t) {
        double s = 0.0;
        for (const double v : t) {
            s += v * v;
        }
        return s;
    };
    const std::vector<double> theta(6, 0.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = spsa_loss_gradient(quad, theta, 0.01, 3, seed);
        EXPECT_EQ(r.loss_evaluations, 6U);
        for (const double g : r.gradient) {
            EXPECT_EQ(g, 0.0);
        }
    }
}

TEST(Spsa, LinearInFirstParameter) {
    const LossFn first = [](std::span<const double> t) { return t[0]; };
    const std::vector<double> theta{0.4, -1.1};
    double mean2 = 0.0;
    const int n = 400;
    for (int seed = 0; seed < n; ++seed) {
        const auto r = spsa_loss_gradient(first, theta, 0.01, 1, static_cast<std::uint64_t>(seed));
        EXPECT_NEAR(r.gradient[0], 1.0, 1e-12);
        EXPECT_NEAR(std::abs(r.gradient[1]), 1.0, 1e-12);
        EXPECT_EQ(r.loss_evaluations, 2U);
        mean2 += r.gradient[1] / n;
    }
    EXPECT_LT(std::abs(mean2), 0.15);
}

TEST(Spsa, DeterministicPerSeed) {
    const LossFn f = [](std::span<const double> t) { return std::sin(t[0]) * std::cos(t[1]) + t[2]; };
    const std::vector<double> theta{0.1, 0.2, 0.3};
    const auto a = spsa_loss_gradient(f, theta, 0.01, 10, 42);
    const auto b = spsa_loss_gradient(f, theta, 0.01, 10, 42);
    const auto c = spsa_loss_gradient(f, theta, 0.01, 10, 43);
    EXPECT_EQ(a.gradient, b.gradient);
    EXPECT_NE(a.gradient, c.gradient);
}

namespace {

// Scalar loss on a random two-qubit QNode: a weighted sum of expectations.
struct TwoQubitLoss {
    QNodeSpec spec = make_qnode_spec(2, Ansatz::BasicEntangler, Axis::X, 2);
    StateVector embedded{2};
    std::vector<double> weights{0.8, -1.3};

    double operator()(std::span<const double> t) const {
        ThetaTensor theta = ThetaTensor::for_spec(spec);
        for (std::size_t i = 0; i < t.size(); ++i) {
            theta[i] = t[i];
        }
        const auto e = qnode_forward(spec, theta, embedded);
        return weights[0] * e[0] + weights[1] * e[1];
    }

    std::vector<double> true_gradient(std::span<const double> t) const {
        ThetaTensor theta = ThetaTensor::for_spec(spec);
        for (std::size_t i = 0; i < t.size(); ++i) {
            theta[i] = t[i];
        }
        return jacobian_adjoint(spec, theta, embedded).jacobian.vjp(weights);
    }
};

} // namespace

TEST(Spsa, ConvergesToAdjointGradient) {
    TwoQubitLoss f;
    const std::vector<double> x{0.5, -0.3, 0.7, 0.2};
    f.embedded = prepare_input(f.spec, x);
    const std::vector<double> theta{0.3, 1.7, 2.9, 4.4};
    const auto truth = f.true_gradient(theta);
    const LossFn fn = [&](std::span<const double> t) { return f(t); };

    const auto big = spsa_loss_gradient(fn, theta, 0.01, 2000, 7);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (std::abs(truth[i]) > 0.1) {
            EXPECT_LT(std::abs(big.gradient[i] - truth[i]) / std::abs(truth[i]), 0.10) << "i=" << i;
            ++checked;
        }
    }
    EXPECT_GT(checked, 0U);

    // More samples land closer, measured over a family of seeds.
    double err_small = 0.0;
    double err_big = 0.0;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const auto s = spsa_loss_gradient(fn, theta, 0.01, 20, seed);
        const auto b = spsa_loss_gradient(fn, theta, 0.01, 2000, seed);
        for (std::size_t i = 0; i < theta.size(); ++i) {
            err_small += std::pow(s.gradient[i] - truth[i], 2);
            err_big += std::pow(b.gradient[i] - truth[i], 2);
        }
    }
    EXPECT_LT(err_big, err_small);
}

TEST(DeriveSeed, DistinctStreams) {
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(9, 4), derive_seed(9, 4));
}

TEST(QuantumJacobian, VjpAndDiff) {
    QuantumJacobian j(2, 3);
    j(0, 0) = 1.0;
    j(0, 2) = 2.0;
    j(1, 1) = -1.0;
    const std::vector<double> v{3.0, 4.0};
    EXPECT_EQ(j.vjp(v), (std::vector<double>{3.0, -4.0, 6.0}));
    QuantumJacobian k = j;
    k(1, 2) = 0.5;
    EXPECT_EQ(j.max_abs_diff(k), 0.5);
    EXPECT_THROW((void)j.max_abs_diff(QuantumJacobian(3, 2)), DomainError);
}
