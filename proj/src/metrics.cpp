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

#include "coia/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coia
{

namespace
{
constexpr double kDegenerateNorm2 = 1e-24;
}

std::string_view to_string(MetricKind kind)
{
    switch (kind)
    {
    case MetricKind::gamma:
        return "gamma";
    case MetricKind::beta:
        return "beta";
    case MetricKind::alpha:
        return "alpha";
    case MetricKind::sinr:
        return "sinr";
    }
    return "unknown";
}

MetricTable::MetricTable(MetricKind kind, std::size_t num_ues, std::size_t codebook_size)
    : kind_(kind), num_ues_(num_ues), codebook_size_(codebook_size), values_(num_ues * codebook_size, 0.0)
{
}

Theta Theta::from_powers(double noise_var, double p_i)
{
    if (!(noise_var >= 0.0) || !(p_i >= 0.0))
        throw std::invalid_argument("Theta: powers must be non-negative");
    if (p_i == 0.0)
        return {std::numeric_limits<double>::infinity()};
    return {noise_var / p_i};
}

double effective_gain(const CMat &h_direct, const CVec &w) { return h_direct.apply(w).norm2(); }

double alignment_metric(const CMat &h1, const CVec &w1, const CMat &h2, const CVec &w2)
{
    const CVec u1 = h1.apply(w1);
    const CVec u2 = h2.apply(w2);
    const double n1 = u1.norm2();
    const double n2 = u2.norm2();
    if (n1 < kDegenerateNorm2 || n2 < kDegenerateNorm2)
        throw std::domain_error("degenerate interference direction");
    const double g = std::norm(inner(u1, u2)) / (n1 * n2);
    return std::clamp(g, 0.0, 1.0);
}

double hybrid_metric(double gamma, double beta, Theta theta)
{
    if (theta.infinite())
        return beta;
    return std::max(1.0 - theta.value, 0.0) * gamma + theta.value * beta;
}

CVec max_snr_receiver(const CMat &h_direct, const CVec &w)
{
    const CVec u = h_direct.apply(w);
    if (u.norm2() < kDegenerateNorm2)
        throw std::domain_error("zero effective channel");
    return u.normalized();
}

ReceiverResult max_sinr_receiver(const SystemConfig &cfg, const ChannelRealization &real, std::size_t cell,
                                 std::size_t ue, const BeamSet &w)
{
    CMat a = CMat::identity(cfg.antennas, cfg.noise_var);
    for (std::size_t j = 0; j < kCells; ++j)
        if (j != cell)
            a.add_outer(real.at(ue, cell, j).apply(w[j]), cfg.p_i);
    const CVec h = real.at(ue, cell, cell).apply(w[cell]).scaled(std::sqrt(cfg.p_s));
    Rank1Eig eig = rank1_gen_eig(a, h);
    return {std::move(eig.v), eig.lambda};
}

MetricTable gamma_table(const ChannelRealization &real, std::size_t cell, const Codebook &cb)
{
    const CellTriple t = interferers(cell);
    MetricTable table(MetricKind::gamma, real.num_ues(), cb.size());
    for (std::size_t k = 0; k < real.num_ues(); ++k)
        for (std::size_t s = 0; s < cb.size(); ++s)
        {
            const BeamSet &w = cb[s].w;
            table.at(k, s) = alignment_metric(real.at(k, cell, t.first), w[t.first], real.at(k, cell, t.second),
                                              w[t.second]);
        }
    return table;
}

MetricTable beta_table(const ChannelRealization &real, std::size_t cell, const Codebook &cb)
{
    MetricTable table(MetricKind::beta, real.num_ues(), cb.size());
    for (std::size_t k = 0; k < real.num_ues(); ++k)
        for (std::size_t s = 0; s < cb.size(); ++s)
            table.at(k, s) = effective_gain(real.at(k, cell, cell), cb[s].w[cell]);
    return table;
}

MetricTable alpha_table(const MetricTable &gamma, const MetricTable &beta, Theta theta)
{
    if (gamma.num_ues() != beta.num_ues() || gamma.codebook_size() != beta.codebook_size())
        throw std::invalid_argument("alpha_table: shape mismatch");
    MetricTable table(MetricKind::alpha, gamma.num_ues(), gamma.codebook_size());
    for (std::size_t k = 0; k < gamma.num_ues(); ++k)
        for (std::size_t s = 0; s < gamma.codebook_size(); ++s)
            table.at(k, s) = hybrid_metric(gamma.at(k, s), beta.at(k, s), theta);
    return table;
}

MetricTable sinr_table(const SystemConfig &cfg, const ChannelRealization &real, std::size_t cell, const Codebook &cb)
{
    MetricTable table(MetricKind::sinr, real.num_ues(), cb.size());
    for (std::size_t k = 0; k < real.num_ues(); ++k)
        for (std::size_t s = 0; s < cb.size(); ++s)
            table.at(k, s) = max_sinr_receiver(cfg, real, cell, k, cb[s].w).sinr;
    return table;
}

CellTables gamma_tables(const ChannelRealization &real, const Codebook &cb)
{
    return {gamma_table(real, 0, cb), gamma_table(real, 1, cb), gamma_table(real, 2, cb)};
}

CellTables beta_tables(const ChannelRealization &real, const Codebook &cb)
{
    return {beta_table(real, 0, cb), beta_table(real, 1, cb), beta_table(real, 2, cb)};
}

CellTables alpha_tables(const CellTables &gamma, const CellTables &beta, Theta theta)
{
    return {alpha_table(gamma[0], beta[0], theta), alpha_table(gamma[1], beta[1], theta),
            alpha_table(gamma[2], beta[2], theta)};
}

} // namespace coia
