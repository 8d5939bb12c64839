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

#ifndef COIA_SELECTION_HPP
#define COIA_SELECTION_HPP

#include "coia/metrics.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace coia
{

struct SelectionOutcome
{
    std::size_t codeword = 0;                 // s*
    std::array<std::size_t, kCells> ue{};     // selected UE per cell
    std::array<CVec, kCells> rx;              // MAX-SINR receive vectors of the selected UEs
    std::array<double, kCells> sinr{};
    std::size_t feedback_count = 0;           // metric values reported over all three cells
    std::array<bool, kCells> fallback_used{}; // cell served a random UE for lack of feedback
    double score = 0.0;                       // average over cells of the winning per-cell metric

    double sum_rate() const { return coia::sum_rate(sinr); }
};

// Which metric values a cell's UEs report for a threshold
struct FeedbackReport
{
    std::size_t num_ues = 0;
    std::size_t codebook_size = 0;
    std::vector<std::uint8_t> sent;  // sent[k * S + s]
    std::size_t count = 0;
    double load = 0.0;               // count / (K S)

    bool was_sent(std::size_t ue, std::size_t s) const { return sent[ue * codebook_size + s] != 0; }
};

// How codewords are ranked when only some cells reported for them
enum class PartialFeedbackPolicy
{
    most_cells_first,    // codewords reported in more cells win; ties compared on their average
    average_available,   // compare averages over the reporting cells only
    all_cells_required,  // only codewords reported by all three cells are eligible
};

// Conventional single-codeword schemes; receive vectors are MAX-SINR in every case.
SelectionOutcome select_max_sinr(const SystemConfig &cfg, const ChannelRealization &real, const BeamSet &w);
SelectionOutcome select_max_snr(const SystemConfig &cfg, const ChannelRealization &real, const BeamSet &w);
SelectionOutcome select_oia(const SystemConfig &cfg, const ChannelRealization &real, const BeamSet &w);

// Codebook selection with full feedback. kind is gamma, beta or alpha (theta is only read for alpha).
SelectionOutcome select_coia_full(const SystemConfig &cfg, const ChannelRealization &real, const Codebook &cb,
                                  MetricKind kind, Theta theta);

// Same rule on precomputed tables (one per cell, all over the same codebook)
SelectionOutcome select_coia_full(const SystemConfig &cfg, const ChannelRealization &real, const Codebook &cb,
                                  const CellTables &tables);

FeedbackReport apply_threshold(const MetricTable &table, double threshold);

// Threshold-based feedback: only values >= threshold are reported. rng is drawn from only when a
// random fallback is needed.
SelectionOutcome select_coia_threshold(const SystemConfig &cfg, const ChannelRealization &real, const Codebook &cb,
                                       MetricKind kind, Theta theta, double threshold, Rng &rng,
                                       PartialFeedbackPolicy policy = PartialFeedbackPolicy::most_cells_first);

SelectionOutcome select_coia_threshold(const SystemConfig &cfg, const ChannelRealization &real, const Codebook &cb,
                                       const CellTables &tables, double threshold, Rng &rng,
                                       PartialFeedbackPolicy policy = PartialFeedbackPolicy::most_cells_first);

// Mean of per-report loads. Throws std::invalid_argument on an empty list.
double measured_feedback_load(const std::vector<FeedbackReport> &reports);

// Metric tables for kind over cb
CellTables metric_tables(const SystemConfig &cfg, const ChannelRealization &real, const Codebook &cb,
                         MetricKind kind, Theta theta);

// Fills rx and sinr of an outcome whose codeword and UEs are already chosen
void apply_max_sinr_receivers(const SystemConfig &cfg, const ChannelRealization &real, const BeamSet &w,
                              SelectionOutcome &out);

} // namespace coia

#endif
