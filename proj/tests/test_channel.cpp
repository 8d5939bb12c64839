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

#include "coia/channel.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace coia;

namespace
{

SystemConfig unit_config()
{
    SystemConfig cfg;
    cfg.num_ues = 1;
    cfg.p_s = 1.0;
    cfg.p_i = 1.0;
    cfg.noise_var = 1.0;
    return cfg;
}

ChannelRealization identity_realization(std::size_t num_ues = 1)
{
    ChannelRealization real(num_ues, 2);
    for (std::size_t k = 0; k < num_ues; ++k)
        for (std::size_t i = 0; i < kCells; ++i)
            for (std::size_t j = 0; j < kCells; ++j)
                real.at(k, i, j) = CMat::identity(2);
    return real;
}

BeamSet random_beams(Rng &rng)
{
    return {draw_unit_vector(rng, 2), draw_unit_vector(rng, 2), draw_unit_vector(rng, 2)};
}

} // namespace

TEST_CASE("config validation")
{
    SystemConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.num_ues = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.noise_var = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.p_i = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.antennas = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    const SystemConfig snr = SystemConfig::from_snr_db(10, 4, 20.0, 0.5);
    CHECK(snr.p_s == doctest::Approx(100.0));
    CHECK(snr.p_i == doctest::Approx(50.0));
    CHECK(snr.noise_var == 1.0);
}

TEST_CASE("interferer indexing follows [2,3,1] / [3,1,2]")
{
    // 1-based (1,2,3) -> (1,2,3), (2,3,1), (3,1,2) in zero-based form
    CHECK(interferers(0) == CellTriple{0, 1, 2});
    CHECK(interferers(1) == CellTriple{1, 2, 0});
    CHECK(interferers(2) == CellTriple{2, 0, 1});
    CHECK_THROWS_AS(interferers(3), std::out_of_range);
}

TEST_CASE("draw_realization shape, statistics and determinism")
{
    SystemConfig cfg = unit_config();
    Rng rng(1);
    const ChannelRealization one = draw_realization(cfg, rng);
    CHECK(one.matrices().size() == 9);

    constexpr int n = 100000;
    double frob = 0.0;
    for (int t = 0; t < n; ++t)
        frob += draw_realization(cfg, rng).at(0, 1, 2).frobenius2();
    CHECK(std::abs(frob / n - 4.0) < 0.04);

    Rng a(99), b(99);
    cfg.num_ues = 3;
    const ChannelRealization ra = draw_realization(cfg, a);
    const ChannelRealization rb = draw_realization(cfg, b);
    CHECK(ra.matrices() == rb.matrices());

    // K-prefix nesting
    Rng c(99);
    cfg.num_ues = 5;
    const ChannelRealization rc = draw_realization(cfg, c);
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < kCells; ++i)
            for (std::size_t j = 0; j < kCells; ++j)
                CHECK(rc.at(k, i, j) == ra.at(k, i, j));
}

TEST_CASE("sinr closed-form cases")
{
    SUBCASE("interference orthogonal to the receiver")
    {
        const SystemConfig cfg = unit_config();
        const ChannelRealization real = identity_realization();
        const BeamSet w = {CVec{1.0, 0.0}, CVec{0.0, 1.0}, CVec{0.0, 1.0}};
        CHECK(sinr(cfg, real, 0, 0, w, CVec{1.0, 0.0}) == doctest::Approx(1.0));
    }
    SUBCASE("noise limited")
    {
        SystemConfig cfg = unit_config();
        cfg.p_i = 0.0;
        cfg.p_s = 2.0;
        const ChannelRealization real = identity_realization();
        const BeamSet w = {CVec{1.0, 0.0}, CVec{1.0, 0.0}, CVec{1.0, 0.0}};
        CHECK(sinr(cfg, real, 0, 0, w, CVec{1.0, 0.0}) == doctest::Approx(2.0));
    }
}

TEST_CASE("sinr agrees with an independent evaluator")
{
    Rng rng(4);
    SystemConfig cfg;
    cfg.num_ues = 3;
    for (int t = 0; t < 500; ++t)
    {
        cfg.p_s = 0.1 + 10 * rng.uniform();
        cfg.p_i = 10 * rng.uniform();
        cfg.noise_var = 0.01 + rng.uniform();
        const ChannelRealization real = draw_realization(cfg, rng);
        const BeamSet w = random_beams(rng);
        const CVec v = draw_unit_vector(rng, 2);
        const std::size_t cell = rng.uniform_index(3), ue = rng.uniform_index(3);
        const double got = sinr(cfg, real, cell, ue, w, v);
        const double want = oracle::sinr_reference(cfg.p_s, cfg.p_i, cfg.noise_var, real, cell, ue, w, v);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, want));
    }
}

TEST_CASE("sinr monotonicity and phase invariance")
{
    Rng rng(8);
    SystemConfig cfg;
    for (int t = 0; t < 300; ++t)
    {
        const ChannelRealization real = draw_realization(cfg, rng);
        const BeamSet w = random_beams(rng);
        const CVec v = draw_unit_vector(rng, 2);
        const double base = sinr(cfg, real, 1, 0, w, v);

        SystemConfig more = cfg;
        more.p_i *= 1.5;
        CHECK(sinr(more, real, 1, 0, w, v) <= base);
        more = cfg;
        more.noise_var *= 1.5;
        CHECK(sinr(more, real, 1, 0, w, v) <= base);
        more = cfg;
        more.p_s *= 1.5;
        CHECK(sinr(more, real, 1, 0, w, v) >= base);

        BeamSet rotated = w;
        for (auto &x : rotated)
            x = x.scaled(std::polar(1.0, 2 * M_PI * rng.uniform()));
        const CVec vr = v.scaled(std::polar(1.0, 2 * M_PI * rng.uniform()));
        CHECK(sinr(cfg, real, 1, 0, rotated, vr) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("sum_rate")
{
    CHECK(sum_rate({1.0, 1.0, 1.0}) == doctest::Approx(3.0));
    CHECK(sum_rate({0.0, 0.0, 0.0}) == 0.0);
    CHECK(sum_rate({3.0, 1.0, 0.0}) == doctest::Approx(3.0));
}
