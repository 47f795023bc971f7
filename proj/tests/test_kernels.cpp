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

#include <random>
#include <vector>

#include "hqpinn/kernels.hpp"
#include "support/oracle.hpp"

using namespace hqpinn;
namespace ks = hqpinn::kernels::serial;
namespace ko = hqpinn::kernels::omp;

namespace {

kernels::Mat2 random_unitary(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> a(-M_PI, M_PI);
    const double t = a(rng);
    const double p = a(rng);
    const double l = a(rng);
    const cplx i(0.0, 1.0);
    return {std::cos(t / 2), -std::exp(i * l) * std::sin(t / 2), std::exp(i * p) * std::sin(t / 2),
            std::exp(i * (p + l)) * std::cos(t / 2)};
}

} // namespace

TEST(Kernels, InsertZeroBit) {
    EXPECT_EQ(kernels::insert_zero_bit(0b111, 0), 0b1110U);
    EXPECT_EQ(kernels::insert_zero_bit(0b111, 1), 0b1101U);
    EXPECT_EQ(kernels::insert_zero_bit(0b111, 3), 0b0111U);
}

// Sizes straddle the parallel threshold so both code paths run.
class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {};

TEST_P(KernelEquivalence, ElementwiseBitIdentical) {
    const std::size_t n = GetParam();
    std::mt19937_64 rng(7 + n);
    auto a = oracle::random_state(n, rng);
    auto b = a;
    for (int rep = 0; rep < 6; ++rep) {
        const unsigned bit = std::uniform_int_distribution<unsigned>(0, n - 1)(rng);
        const unsigned xbit = (bit + 2) % n;
        const auto u = random_unitary(rng);
        kernels::ControlMask ctrl;
        if (n >= 3 && rep % 2 == 1) {
            const std::uint64_t cb = std::uint64_t{1} << ((bit + 1) % n);
            ctrl = {cb, rep % 4 == 1 ? cb : 0};
        }
        ks::apply_1q(a, bit, u, ctrl);
        ko::apply_1q(b, bit, u, ctrl);
        ks::apply_x(a, xbit, ctrl);
        ko::apply_x(b, xbit, ctrl);
    }
    ks::scale(a, cplx(0.6, -0.8));
    ko::scale(b, cplx(0.6, -0.8));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        ASSERT_EQ(a[k], b[k]) << "k=" << k;
    }
}

TEST_P(KernelEquivalence, ReductionsAgree) {
    const std::size_t n = GetParam();
    std::mt19937_64 rng(11 + n);
    const auto a = oracle::random_state(n, rng);
    const auto b = oracle::random_state(n, rng);
    for (unsigned bit = 0; bit < n; ++bit) {
        const double s = ks::expectation_z(a, bit);
        const double o = ko::expectation_z(a, bit);
        if (a.size() <= kernels::kReductionBlock) {
            EXPECT_EQ(s, o);
        } else {
            EXPECT_NEAR(s, o, 1e-12);
        }
    }
    EXPECT_NEAR(ks::norm_sq(a), 1.0, 1e-12);
    EXPECT_NEAR(ko::norm_sq(a), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(ks::inner(a, b) - ko::inner(a, b)), 0.0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Sizes, KernelEquivalence, ::testing::Values(1, 3, 8, 12, 15, 16));

TEST(Kernels, OmpReductionIndependentOfThreadCount) {
    std::mt19937_64 rng(3);
    const auto a = oracle::random_state(16, rng);
    set_num_threads(1);
    const double one = ko::expectation_z(a, 5);
    const cplx in1 = ko::inner(a, a);
    set_num_threads(4);
    const double four = ko::expectation_z(a, 5);
    const cplx in4 = ko::inner(a, a);
    set_num_threads(1);
    EXPECT_EQ(one, four);
    EXPECT_EQ(in1, in4);
}

TEST(Kernels, ExpectationMatchesDefinition) {
    // |psi> = |01>: bit 0 (LSB) is 1, bit 1 is 0.
    std::vector<cplx> v{0.0, 1.0, 0.0, 0.0};
    EXPECT_EQ(ks::expectation_z(v, 0), -1.0);
    EXPECT_EQ(ks::expectation_z(v, 1), 1.0);
}
