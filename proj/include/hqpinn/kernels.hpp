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
 * Low-level amplitude kernels operating on raw statevector storage.
 *
 * Two implementations are provided with identical signatures:
 *  - kernels::serial is the plain sequential reference, kept for testing.
 *  - kernels::omp is OpenMP-parallel and used by the library.
 *
 * Kernels address qubits by *bit position* in the amplitude index (bit 0 is
 * the least significant). Mapping wires to bits is the caller's job.
 *
 * Element-wise kernels produce bit-identical results in both namespaces.
 * Reductions in kernels::omp sum fixed-size blocks sequentially and then
 * combine the block partials in order, so the result never depends on the
 * thread count, and equals the serial result whenever the state fits in one
 * block.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace hqpinn {

using cplx = std::complex<double>;

namespace kernels {

/// Row-major 2x2 complex matrix.
struct Mat2 {
    cplx m00, m01, m10, m11;
};

/// Restricts an update to indices where `(index & mask) == value`.
struct ControlMask {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;
};

/// Amplitude count below which the OpenMP kernels stay single-threaded.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

/// Reduction block size; determines the summation order of kernels::omp.
inline constexpr std::size_t kReductionBlock = std::size_t{1} << 12;

/// Inserts a zero at bit position `bit` of `k`, shifting higher bits up.
constexpr std::uint64_t insert_zero_bit(std::uint64_t k, unsigned bit) noexcept {
    const std::uint64_t low = k & ((std::uint64_t{1} << bit) - 1);
    return ((k >> bit) << (bit + 1)) | low;
}

namespace serial {
void apply_1q(std::span<cplx> amps, unsigned bit, const Mat2 &u, ControlMask ctrl = {});
void apply_x(std::span<cplx> amps, unsigned bit, ControlMask ctrl = {});
void scale(std::span<cplx> amps, cplx factor);
[[nodiscard]] double expectation_z(std::span<const cplx> amps, unsigned bit);
[[nodiscard]] double norm_sq(std::span<const cplx> amps);
/// <a|b>
[[nodiscard]] cplx inner(std::span<const cplx> a, std::span<const cplx> b);
} // namespace serial

namespace omp {
void apply_1q(std::span<cplx> amps, unsigned bit, const Mat2 &u, ControlMask ctrl = {});
void apply_x(std::span<cplx> amps, unsigned bit, ControlMask ctrl = {});
void scale(std::span<cplx> amps, cplx factor);
[[nodiscard]] double expectation_z(std::span<const cplx> amps, unsigned bit);
[[nodiscard]] double norm_sq(std::span<const cplx> amps);
[[nodiscard]] cplx inner(std::span<const cplx> a, std::span<const cplx> b);
} // namespace omp

} // namespace kernels

/// Caps the OpenMP thread count used by the kernels and gradient engines.
/// A value of 0 leaves the runtime default untouched.
void set_num_threads(int n);

/// Current OpenMP thread cap.
[[nodiscard]] int num_threads();

} // namespace hqpinn
