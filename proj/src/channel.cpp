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

#include "coia/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace coia
{

void SystemConfig::validate() const
{
    if (num_ues < 1)
        throw std::invalid_argument("SystemConfig: K must be >= 1");
    if (codebook_size < 1)
        throw std::invalid_argument("SystemConfig: S must be >= 1");
    if (antennas < 2)
        throw std::invalid_argument("SystemConfig: N must be >= 2");
    if (!(p_s > 0.0) || !std::isfinite(p_s))
        throw std::invalid_argument("SystemConfig: p_s must be positive");
    if (!(p_i >= 0.0) || !std::isfinite(p_i))
        throw std::invalid_argument("SystemConfig: p_i must be non-negative");
    if (!(noise_var > 0.0) || !std::isfinite(noise_var))
        throw std::invalid_argument("SystemConfig: noise_var must be positive");
}

SystemConfig SystemConfig::from_snr_db(std::size_t num_ues, std::size_t codebook_size, double snr_db,
                                       double power_ratio, std::size_t antennas)
{
    SystemConfig cfg;
    cfg.num_ues = num_ues;
    cfg.codebook_size = codebook_size;
    cfg.antennas = antennas;
    cfg.noise_var = 1.0;
    cfg.p_s = std::pow(10.0, snr_db / 10.0);
    cfg.p_i = power_ratio * cfg.p_s;
    cfg.validate();
    return cfg;
}

CellTriple interferers(std::size_t cell)
{
    static constexpr std::size_t first[kCells] = {1, 2, 0};
    static constexpr std::size_t second[kCells] = {2, 0, 1};
    if (cell >= kCells)
        throw std::out_of_range("interferers: cell index out of range");
    return {cell, first[cell], second[cell]};
}

ChannelRealization::ChannelRealization(std::size_t num_ues, std::size_t antennas)
    : num_ues_(num_ues), antennas_(antennas), h_(num_ues * kCells * kCells, CMat(antennas, antennas))
{
}

std::size_t ChannelRealization::index(std::size_t ue, std::size_t cell, std::size_t bs) const
{
    if (ue >= num_ues_ || cell >= kCells || bs >= kCells)
        throw std::out_of_range("ChannelRealization: index out of range");
    return (ue * kCells + cell) * kCells + bs;
}

ChannelRealization draw_realization(const SystemConfig &cfg, Rng &rng)
{
    cfg.validate();
    ChannelRealization real(cfg.num_ues, cfg.antennas);
    for (std::size_t k = 0; k < cfg.num_ues; ++k)
        for (std::size_t i = 0; i < kCells; ++i)
            for (std::size_t j = 0; j < kCells; ++j)
                real.at(k, i, j) = draw_complex_gaussian_matrix(rng, cfg.antennas, cfg.antennas);
    return real;
}

double sinr(const SystemConfig &cfg, const ChannelRealization &real, std::size_t cell, std::size_t ue,
            const BeamSet &w, const CVec &v)
{
    const double signal = cfg.p_s * std::norm(inner(v, real.at(ue, cell, cell).apply(w[cell])));
    double interference = 0.0;
    for (std::size_t j = 0; j < kCells; ++j)
        if (j != cell)
            interference += std::norm(inner(v, real.at(ue, cell, j).apply(w[j])));
    return signal / (cfg.noise_var + cfg.p_i * interference);
}

double sum_rate(const std::array<double, kCells> &sinrs)
{
    double r = 0.0;
    for (double s : sinrs)
        r += std::log2(1.0 + s);
    return r;
}

} // namespace coia
