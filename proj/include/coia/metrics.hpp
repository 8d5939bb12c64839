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

#ifndef COIA_METRICS_HPP
#define COIA_METRICS_HPP

#include "coia/channel.hpp"
#include "coia/codebook.hpp"

#include <limits>
#include <string_view>
#include <vector>

namespace coia
{

enum class MetricKind
{
    gamma,  // alignment metric
    beta,   // effective channel gain
    alpha,  // hybrid metric
    sinr,   // MAX-SINR output
};

std::string_view to_string(MetricKind kind);

// Per-UE, per-codeword selection metric of one cell
class MetricTable
{
public:
    MetricTable() = default;
    MetricTable(MetricKind kind, std::size_t num_ues, std::size_t codebook_size);

    MetricKind kind() const { return kind_; }
    std::size_t num_ues() const { return num_ues_; }
    std::size_t codebook_size() const { return codebook_size_; }

    double &at(std::size_t ue, std::size_t s) { return values_[ue * codebook_size_ + s]; }
    double at(std::size_t ue, std::size_t s) const { return values_[ue * codebook_size_ + s]; }
    const std::vector<double> &values() const { return values_; }

private:
    MetricKind kind_ = MetricKind::gamma;
    std::size_t num_ues_ = 0;
    std::size_t codebook_size_ = 0;
    std::vector<double> values_;
};

using CellTables = std::array<MetricTable, kCells>;

// theta = sigma_n^2 / P_I; infinite when P_I = 0
struct Theta
{
    double value = 0.0;

    static Theta from_powers(double noise_var, double p_i);
    static Theta of(const SystemConfig &cfg) { return from_powers(cfg.noise_var, cfg.p_i); }
    bool infinite() const { return value == std::numeric_limits<double>::infinity(); }
};

// |H w|^2
double effective_gain(const CMat &h_direct, const CVec &w);

// Squared cosine of the angle between the interference directions h1 w1 and h2 w2.
// Throws std::domain_error("degenerate interference direction") if either |h w|^2 < 1e-24.
double alignment_metric(const CMat &h1, const CVec &w1, const CMat &h2, const CVec &w2);

// max(1 - theta, 0) gamma + theta beta. With infinite theta the ranking-equivalent beta is returned.
double hybrid_metric(double gamma, double beta, Theta theta);

// Unit vector along H w
CVec max_snr_receiver(const CMat &h_direct, const CVec &w);

struct ReceiverResult
{
    CVec v;
    double sinr = 0.0;
};

// Receiver maximizing the SINR of UE `ue` in `cell` under transmit vectors w
ReceiverResult max_sinr_receiver(const SystemConfig &cfg, const ChannelRealization &real, std::size_t cell,
                                 std::size_t ue, const BeamSet &w);

// Alignment metrics gamma[k][s] for one cell over a whole codebook
MetricTable gamma_table(const ChannelRealization &real, std::size_t cell, const Codebook &cb);
// Effective gains beta[k][s]
MetricTable beta_table(const ChannelRealization &real, std::size_t cell, const Codebook &cb);
// Elementwise hybrid of two tables with matching shape
MetricTable alpha_table(const MetricTable &gamma, const MetricTable &beta, Theta theta);
// MAX-SINR values sinr[k][s]
MetricTable sinr_table(const SystemConfig &cfg, const ChannelRealization &real, std::size_t cell,
                       const Codebook &cb);

CellTables gamma_tables(const ChannelRealization &real, const Codebook &cb);
CellTables beta_tables(const ChannelRealization &real, const Codebook &cb);
CellTables alpha_tables(const CellTables &gamma, const CellTables &beta, Theta theta);

} // namespace coia

#endif
