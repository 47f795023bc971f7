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

// Serial reference vs OpenMP kernels, plus whole-node gradient costs.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "hqpinn/qgrad.hpp"

using namespace hqpinn;

namespace {

std::vector<cplx> random_amps(std::size_t n_qubits) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> v(std::size_t{1} << n_qubits);
    double nn = 0.0;
    for (auto &x : v) {
        x = {g(rng), g(rng)};
        nn += std::norm(x);
    }
    for (auto &x : v) {
        x /= std::sqrt(nn);
    }
    return v;
}

const kernels::Mat2 kRx{std::cos(0.3), {0.0, -std::sin(0.3)}, {0.0, -std::sin(0.3)}, std::cos(0.3)};

template <void (*Apply)(std::span<cplx>, unsigned, const kernels::Mat2 &, kernels::ControlMask)>
void BM_Apply1q(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto amps = random_amps(n);
    unsigned bit = 0;
    for (auto _ : state) {
        Apply(amps, bit, kRx, {});
        bit = (bit + 1) % static_cast<unsigned>(n);
        benchmark::ClobberMemory();
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * amps.size() * sizeof(cplx)));
}

template <double (*Expect)(std::span<const cplx>, unsigned)>
void BM_ExpectationZ(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto amps = random_amps(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Expect(amps, 0));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * amps.size() * sizeof(cplx)));
}

void BM_Jacobian(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto method = static_cast<GradMethod>(state.range(1));
    const QNodeSpec spec = make_qnode_spec(n, Ansatz::BasicEntangler, Axis::X, 2);
    const ThetaTensor theta = ThetaTensor::for_spec(spec, 0.7);
    const StateVector emb = StateVector::from_amplitudes(random_amps(n));
    GradConfig cfg;
    cfg.method = method;
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobian(spec, theta, emb, cfg));
    }
    state.SetLabel(std::string(to_string(method)));
}

} // namespace

BENCHMARK(BM_Apply1q<kernels::serial::apply_1q>)->Name("apply_1q/serial")->DenseRange(10, 22, 4);
BENCHMARK(BM_Apply1q<kernels::omp::apply_1q>)->Name("apply_1q/omp")->DenseRange(10, 22, 4)->UseRealTime();
BENCHMARK(BM_ExpectationZ<kernels::serial::expectation_z>)->Name("expectation_z/serial")->DenseRange(10, 22, 4);
BENCHMARK(BM_ExpectationZ<kernels::omp::expectation_z>)
    ->Name("expectation_z/omp")
    ->DenseRange(10, 22, 4)
    ->UseRealTime();
BENCHMARK(BM_Jacobian)
    ->ArgsProduct({{6, 10, 14},
                   {static_cast<long>(GradMethod::Adjoint), static_cast<long>(GradMethod::ParameterShift)}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
