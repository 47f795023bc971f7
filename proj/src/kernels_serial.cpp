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
#include "hqpinn/kernels.hpp"

namespace hqpinn::kernels::serial {

void apply_1q(std::span<cplx> amps, unsigned bit, const Mat2 &u, ControlMask ctrl) {
    const std::uint64_t half = amps.size() / 2;
    const std::uint64_t stride = std::uint64_t{1} << bit;
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(k, bit);
        if ((i0 & ctrl.mask) != ctrl.value) {
            continue;
        }
        const std::uint64_t i1 = i0 | stride;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = u.m00 * a0 + u.m01 * a1;
        amps[i1] = u.m10 * a0 + u.m11 * a1;
    }
}

void apply_x(std::span<cplx> amps, unsigned bit, ControlMask ctrl) {
    const std::uint64_t half = amps.size() / 2;
    const std::uint64_t stride = std::uint64_t{1} << bit;
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(k, bit);
        if ((i0 & ctrl.mask) != ctrl.value) {
            continue;
        }
        std::swap(amps[i0], amps[i0 | stride]);
    }
}

void scale(std::span<cplx> amps, cplx factor) {
    for (auto &a : amps) {
        a *= factor;
    }
}

double expectation_z(std::span<const cplx> amps, unsigned bit) {
    const std::uint64_t stride = std::uint64_t{1} << bit;
    double acc = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        acc += (i & stride) ? -p : p;
    }
    return acc;
}

double norm_sq(std::span<const cplx> amps) {
    double acc = 0.0;
    for (const auto &a : amps) {
        acc += std::norm(a);
    }
    return acc;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

} // namespace hqpinn::kernels::serial
