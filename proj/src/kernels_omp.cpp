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

#include <omp.h>

#include <vector>

namespace hqpinn {

void set_num_threads(int n) {
    if (n > 0) {
        omp_set_num_threads(n);
    }
}

int num_threads() { return omp_get_max_threads(); }

namespace kernels::omp {

namespace {

// Sums `block_sum(begin, end)` over fixed blocks, then folds the partials in
// block order.
template <typename T, typename BlockSum>
T blocked_reduce(std::size_t n, BlockSum block_sum) {
    const std::int64_t blocks =
        static_cast<std::int64_t>((n + kReductionBlock - 1) / kReductionBlock);
    if (blocks <= 1) {
        return block_sum(std::size_t{0}, n);
    }
    std::vector<T> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::int64_t b = 0; b < blocks; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
        const std::size_t end = std::min(n, begin + kReductionBlock);
        partial[static_cast<std::size_t>(b)] = block_sum(begin, end);
    }
    T acc{};
    for (const auto &p : partial) {
        acc += p;
    }
    return acc;
}

} // namespace

void apply_1q(std::span<cplx> amps, unsigned bit, const Mat2 &u, ControlMask ctrl) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::uint64_t stride = std::uint64_t{1} << bit;
    cplx *data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), bit);
        if ((i0 & ctrl.mask) != ctrl.value) {
            continue;
        }
        const std::uint64_t i1 = i0 | stride;
        const cplx a0 = data[i0];
        const cplx a1 = data[i1];
        data[i0] = u.m00 * a0 + u.m01 * a1;
        data[i1] = u.m10 * a0 + u.m11 * a1;
    }
}

void apply_x(std::span<cplx> amps, unsigned bit, ControlMask ctrl) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::uint64_t stride = std::uint64_t{1} << bit;
    cplx *data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(static_cast<std::uint64_t>(k), bit);
        if ((i0 & ctrl.mask) != ctrl.value) {
            continue;
        }
        std::swap(data[i0], data[i0 | stride]);
    }
}

void scale(std::span<cplx> amps, cplx factor) {
    const auto n = static_cast<std::int64_t>(amps.size());
    cplx *data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        data[i] *= factor;
    }
}

double expectation_z(std::span<const cplx> amps, unsigned bit) {
    const std::uint64_t stride = std::uint64_t{1} << bit;
    return blocked_reduce<double>(amps.size(), [&](std::size_t begin, std::size_t end) {
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const double p = std::norm(amps[i]);
            acc += (i & stride) ? -p : p;
        }
        return acc;
    });
}

double norm_sq(std::span<const cplx> amps) {
    return blocked_reduce<double>(amps.size(), [&](std::size_t begin, std::size_t end) {
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            acc += std::norm(amps[i]);
        }
        return acc;
    });
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    return blocked_reduce<cplx>(a.size(), [&](std::size_t begin, std::size_t end) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = begin; i < end; ++i) {
            acc += std::conj(a[i]) * b[i];
        }
        return acc;
    });
}

} // namespace kernels::omp
} // namespace hqpinn
