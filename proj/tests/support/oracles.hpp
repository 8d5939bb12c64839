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

// Test-only reference computations. Nothing here calls into the code path it is used to check.

#ifndef COIA_TESTS_ORACLES_HPP
#define COIA_TESTS_ORACLES_HPP

#include "coia/channel.hpp"
#include "coia/matkernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace coia::oracle
{

// Two-sided Kolmogorov-Smirnov statistic of samples against a continuous CDF
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)> &cdf)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
    }
    return d;
}

// Unit vector in C^2 parametrized by (t, phi): (cos t, e^{i phi} sin t). Every unit vector equals
// one of these up to a global phase.
inline CVec unit2(double t, double phi) { return CVec{std::cos(t), std::polar(std::sin(t), phi)}; }

// Maximizes f over unit vectors in C^2 by a zooming grid search on (t, phi).
inline double grid_max_unit2(const std::function<double(const CVec &)> &f, CVec *argmax = nullptr)
{
    constexpr int n = 48;
    double best = -1.0, bt = 0.0, bp = 0.0;
    double t_lo = 0.0, t_hi = std::numbers::pi / 2, p_lo = 0.0, p_hi = 2 * std::numbers::pi;
    for (int round = 0; round < 12; ++round)
    {
        for (int a = 0; a <= n; ++a)
            for (int b = 0; b <= n; ++b)
            {
                const double t = std::clamp(t_lo + (t_hi - t_lo) * a / n, 0.0, std::numbers::pi / 2);
                const double p = p_lo + (p_hi - p_lo) * b / n;
                const double v = f(unit2(t, p));
                if (v > best)
                {
                    best = v;
                    bt = t;
                    bp = p;
                }
            }
        const double dt = 3.0 * (t_hi - t_lo) / n;
        const double dp = 3.0 * (p_hi - p_lo) / n;
        t_lo = bt - dt;
        t_hi = bt + dt;
        p_lo = bp - dp;
        p_hi = bp + dp;
    }
    if (argmax)
        *argmax = unit2(bt, bp);
    return best;
}

// Independent SINR evaluator written out component-wise for N = 2
inline double sinr_reference(double p_s, double p_i, double noise, const ChannelRealization &real, std::size_t cell,
                             std::size_t ue, const BeamSet &w, const CVec &v)
{
    auto gain = [&](std::size_t bs) {
        const CMat &h = real.at(ue, cell, bs);
        const std::complex<double> y0 = h(0, 0) * w[bs][0] + h(0, 1) * w[bs][1];
        const std::complex<double> y1 = h(1, 0) * w[bs][0] + h(1, 1) * w[bs][1];
        const std::complex<double> z = std::conj(v[0]) * y0 + std::conj(v[1]) * y1;
        return z.real() * z.real() + z.imag() * z.imag();
    };
    double interference = 0.0;
    for (std::size_t j = 0; j < 3; ++j)
        if (j != cell)
            interference += gain(j);
    return p_s * gain(cell) / (noise + p_i * interference);
}

} // namespace coia::oracle

#endif
