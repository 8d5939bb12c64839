// SPDX-License-Identifier: Apache-2.0
//
// coia-sim: downlink opportunistic interference alignment simulator
// Copyright (C) 2026 The coia-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coia/matkernel.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace coia;

namespace
{

// Random Hermitian positive-definite 2x2: G G^H + eps I
CMat random_hpd(Rng &rng, double eps = 0.1)
{
    const CMat g = draw_complex_gaussian_matrix(rng, 2, 2);
    CMat a = CMat::identity(2, eps);
    a.add_outer(CVec{g(0, 0), g(1, 0)}, 1.0);
    a.add_outer(CVec{g(0, 1), g(1, 1)}, 1.0);
    return a;
}

CVec random_vec(Rng &rng, std::size_t n)
{
    CVec v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = rng.complex_normal();
    return v;
}

} // namespace

TEST_CASE("complex gaussian draws are zero mean with unit variance")
{
    Rng rng(11);
    constexpr int n = 1000000;
    double re = 0.0, im = 0.0, pw = 0.0, pw2 = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const cplx z = draw_complex_gaussian_matrix(rng, 1, 1)(0, 0);
        re += z.real();
        im += z.imag();
        pw += std::norm(z);
        pw2 += std::norm(z) * std::norm(z);
    }
    CHECK(std::abs(re / n) < 4e-3);
    CHECK(std::abs(im / n) < 4e-3);
    CHECK(std::abs(pw / n - 1.0) < 0.01);
    // |z|^2 ~ Exp(1): second moment 2
    CHECK(std::abs(pw2 / n - 2.0) < 0.02);
}

TEST_CASE("sampling replays bit-identically from the same seed")
{
    Rng a(42), b(42);
    CHECK(draw_complex_gaussian_matrix(a, 2, 3) == draw_complex_gaussian_matrix(b, 2, 3));
    CHECK(draw_unit_vector(a, 2) == draw_unit_vector(b, 2));

    Rng s1 = Rng::substream(7, 3, 9), s2 = Rng::substream(7, 3, 9), s3 = Rng::substream(7, 3, 10);
    const auto x1 = s1.next_u64();
    CHECK(x1 == s2.next_u64());
    CHECK(x1 != s3.next_u64());

    // Pinned output so a platform or refactor change in the generator is caught
    Rng pinned(0);
    CHECK(pinned.next_u64() == 0x99EC5F36CB75F2B4ULL);
}

TEST_CASE("uniform_index covers the range and rejects empty ranges")
{
    Rng rng(5);
    std::array<int, 3> hits{};
    for (int i = 0; i < 3000; ++i)
        ++hits[rng.uniform_index(3)];
    for (int h : hits)
        CHECK(h > 900);
    CHECK_THROWS_AS(rng.uniform_index(0), std::invalid_argument);
}

TEST_CASE("draw_unit_vector is normalized and isotropic")
{
    Rng rng(3);
    constexpr int n = 100000;
    std::vector<double> first_power;
    double mean_re = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const CVec v = draw_unit_vector(rng, 2);
        REQUIRE(std::abs(v.norm2() - 1.0) < 1e-12);
        mean_re += v[0].real();
        first_power.push_back(std::norm(v[0]));
    }
    // Re(v_1) has variance 1/4 for an isotropic unit vector in C^2
    const double se = std::sqrt(0.25 / n);
    CHECK(std::abs(mean_re / n) < 3 * se);
    // |v_1|^2 is Uniform[0,1]
    CHECK(oracle::ks_statistic(first_power, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 0.01);
    CHECK_THROWS_AS(draw_unit_vector(rng, 0), std::invalid_argument);
}

TEST_CASE("rank1_gen_eig closed-form cases")
{
    SUBCASE("identity covariance")
    {
        const Rank1Eig e = rank1_gen_eig(CMat::identity(2), CVec{1.0, 0.0});
        CHECK(e.lambda == doctest::Approx(1.0));
        CHECK(std::abs(e.v[0] - cplx(1.0)) < 1e-15);
        CHECK(std::abs(e.v[1]) < 1e-15);
    }
    SUBCASE("scaled identity")
    {
        const Rank1Eig e = rank1_gen_eig(CMat::identity(2, 2.0), CVec{0.0, 1.0});
        CHECK(e.lambda == doctest::Approx(0.5));
        CHECK(std::abs(e.v[0]) < 1e-15);
        CHECK(std::abs(e.v[1] - cplx(1.0)) < 1e-15);
    }
    SUBCASE("singular covariance is rejected")
    {
        CMat a(2, 2, {1.0, 1.0, 1.0, 1.0});
        CHECK_THROWS_WITH_AS(rank1_gen_eig(a, CVec{1.0, 0.0}), "singular interference-plus-noise covariance",
                             std::domain_error);
        CHECK_THROWS_AS(rank1_gen_eig(CMat::identity(2, -1.0), CVec{1.0, 0.0}), std::domain_error);
    }
}

TEST_CASE("rank1_gen_eig matches a Rayleigh-quotient grid search")
{
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial)
    {
        const CMat a = random_hpd(rng);
        const CVec h = random_vec(rng, 2);
        const Rank1Eig e = rank1_gen_eig(a, h);
        auto quotient = [&](const CVec &u) { return std::norm(inner(u, h)) / inner(u, a.apply(u)).real(); };
        const double best = oracle::grid_max_unit2(quotient);
        CHECK(std::abs(e.lambda - best) < 1e-6 * std::max(1.0, best));
        CHECK(quotient(e.v) == doctest::Approx(e.lambda).epsilon(1e-12));
        CHECK(std::abs(e.v.norm2() - 1.0) < 1e-12);
    }
}

TEST_CASE("rank1_gen_eig upper-bounds every Rayleigh quotient and scales inversely")
{
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial)
    {
        const CMat a = random_hpd(rng, 0.05);
        const CVec h = random_vec(rng, 2);
        const Rank1Eig e = rank1_gen_eig(a, h);
        for (int probe = 0; probe < 50; ++probe)
        {
            const CVec u = draw_unit_vector(rng, 2);
            CHECK(std::norm(inner(u, h)) / inner(u, a.apply(u)).real() <= e.lambda + 1e-9);
        }
        const double c = 0.1 + 10.0 * rng.uniform();
        CHECK(rank1_gen_eig(a.scaled(c), h).lambda == doctest::Approx(e.lambda / c).epsilon(1e-12));
    }
}

TEST_CASE("larger systems go through the Cholesky path")
{
    Rng rng(9);
    const CMat g = draw_complex_gaussian_matrix(rng, 4, 4);
    CMat a = CMat::identity(4, 0.5);
    for (std::size_t c = 0; c < 4; ++c)
        a.add_outer(CVec{g(0, c), g(1, c), g(2, c), g(3, c)}, 1.0);
    const CVec h = random_vec(rng, 4);
    const CVec x = solve_hermitian_pd(a, h);
    const CVec back = a.apply(x);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(back[i] - h[i]) < 1e-12);
    const Rank1Eig e = rank1_gen_eig(a, h);
    for (int probe = 0; probe < 200; ++probe)
    {
        const CVec u = draw_unit_vector(rng, 4);
        CHECK(std::norm(inner(u, h)) / inner(u, a.apply(u)).real() <= e.lambda + 1e-9);
    }
}
