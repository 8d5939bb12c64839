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

#include "coia/selection.hpp"

#include <cassert>
#include <stdexcept>

namespace coia
{

namespace
{

// Best UE of one cell for codeword s, restricted to reported entries when `report` is given.
// Returns false when nothing is eligible.
bool best_ue(const MetricTable &table, std::size_t s, const FeedbackReport *report, std::size_t &ue, double &value)
{
    bool found = false;
    for (std::size_t k = 0; k < table.num_ues(); ++k)
    {
        if (report != nullptr && !report->was_sent(k, s))
            continue;
        const double x = table.at(k, s);
        if (!found || x > value)
        {
            ue = k;
            value = x;
            found = true;
        }
    }
    return found;
}

void check_tables(const CellTables &tables, const Codebook &cb)
{
    for (const auto &t : tables)
        if (t.codebook_size() != cb.size() || t.num_ues() != tables[0].num_ues())
            throw std::invalid_argument("selection: metric tables do not match the codebook");
}

SelectionOutcome select_single(const SystemConfig &cfg, const ChannelRealization &real, const BeamSet &w,
                               MetricKind kind)
{
    const Codebook cb({Codeword{w}});
    SelectionOutcome out = select_coia_full(cfg, real, cb, metric_tables(cfg, real, cb, kind, Theta::of(cfg)));
    return out;
}

} // namespace

CellTables metric_tables(const SystemConfig &cfg, const ChannelRealization &real, const Codebook &cb,
                         MetricKind kind, Theta theta)
{
    switch (kind)
    {
    case MetricKind::gamma:
        return gamma_tables(real, cb);
    case MetricKind::beta:
        return beta_tables(real, cb);
    case MetricKind::alpha:
        return alpha_tables(gamma_tables(real, cb), beta_tables(real, cb), theta);
    case MetricKind::sinr:
        return {sinr_table(cfg, real, 0, cb), sinr_table(cfg, real, 1, cb), sinr_table(cfg, real, 2, cb)};
    }
    throw std::invalid_argument("metric_tables: unknown metric kind");
}

void apply_max_sinr_receivers(const SystemConfig &cfg, const ChannelRealization &real, const BeamSet &w,
                              SelectionOutcome &out)
{
    for (std::size_t i = 0; i < kCells; ++i)
    {
        ReceiverResult r = max_sinr_receiver(cfg, real, i, out.ue[i], w);
        out.rx[i] = std::move(r.v);
        out.sinr[i] = r.sinr;
    }
}

SelectionOutcome select_max_sinr(const SystemConfig &cfg, const ChannelRealization &real, const BeamSet &w)
{
    return select_single(cfg, real, w, MetricKind::sinr);
}

SelectionOutcome select_max_snr(const SystemConfig &cfg, const ChannelRealization &real, const BeamSet &w)
{
    return select_single(cfg, real, w, MetricKind::beta);
}

SelectionOutcome select_oia(const SystemConfig &cfg, const ChannelRealization &real, const BeamSet &w)
{
    return select_single(cfg, real, w, MetricKind::gamma);
}

SelectionOutcome select_coia_full(const SystemConfig &cfg, const ChannelRealization &real, const Codebook &cb,
                                  MetricKind kind, Theta theta)
{
    return select_coia_full(cfg, real, cb, metric_tables(cfg, real, cb, kind, theta));
}

SelectionOutcome select_coia_full(const SystemConfig &cfg, const ChannelRealization &real, const Codebook &cb,
                                  const CellTables &tables)
{
    check_tables(tables, cb);
    const std::size_t num_ues = tables[0].num_ues();

    SelectionOutcome out;
    double best_avg = 0.0;
    std::vector<double> averages(cb.size());
    for (std::size_t s = 0; s < cb.size(); ++s)
    {
        std::array<std::size_t, kCells> ues{};
        double sum = 0.0;
        for (std::size_t i = 0; i < kCells; ++i)
        {
            double v = 0.0;
            best_ue(tables[i], s, nullptr, ues[i], v);
            sum += v;
        }
        averages[s] = sum / static_cast<double>(kCells);
        if (s == 0 || averages[s] > best_avg)
        {
            best_avg = averages[s];
            out.codeword = s;
            out.ue = ues;
        }
    }
    for ([[maybe_unused]] double a : averages)
        assert(best_avg >= a);

    out.score = best_avg;
    out.feedback_count = kCells * num_ues * cb.size();
    apply_max_sinr_receivers(cfg, real, cb[out.codeword].w, out);
    return out;
}

FeedbackReport apply_threshold(const MetricTable &table, double threshold)
{
    if (!(threshold >= 0.0))
        throw std::invalid_argument("apply_threshold: threshold must be >= 0");
    FeedbackReport r;
    r.num_ues = table.num_ues();
    r.codebook_size = table.codebook_size();
    r.sent.resize(table.values().size());
    for (std::size_t n = 0; n < r.sent.size(); ++n)
    {
        r.sent[n] = table.values()[n] >= threshold ? 1 : 0;
        r.count += r.sent[n];
    }
    r.load = r.sent.empty() ? 0.0 : static_cast<double>(r.count) / static_cast<double>(r.sent.size());
    return r;
}

SelectionOutcome select_coia_threshold(const SystemConfig &cfg, const ChannelRealization &real, const Codebook &cb,
                                       MetricKind kind, Theta theta, double threshold, Rng &rng,
                                       PartialFeedbackPolicy policy)
{
    return select_coia_threshold(cfg, real, cb, metric_tables(cfg, real, cb, kind, theta), threshold, rng, policy);
}

SelectionOutcome select_coia_threshold(const SystemConfig &cfg, const ChannelRealization &real, const Codebook &cb,
                                       const CellTables &tables, double threshold, Rng &rng,
                                       PartialFeedbackPolicy policy)
{
    check_tables(tables, cb);
    const std::size_t num_ues = tables[0].num_ues();
    const std::array<FeedbackReport, kCells> reports = {apply_threshold(tables[0], threshold),
                                                        apply_threshold(tables[1], threshold),
                                                        apply_threshold(tables[2], threshold)};

    SelectionOutcome out;
    out.feedback_count = reports[0].count + reports[1].count + reports[2].count;

    bool have_choice = false;
    std::size_t best_cells = 0;
    double best_avg = 0.0;
    std::array<bool, kCells> best_has{};
    for (std::size_t s = 0; s < cb.size(); ++s)
    {
        std::array<std::size_t, kCells> ues{};
        std::array<bool, kCells> has{};
        std::size_t cells = 0;
        double sum = 0.0;
        for (std::size_t i = 0; i < kCells; ++i)
        {
            double v = 0.0;
            has[i] = best_ue(tables[i], s, &reports[i], ues[i], v);
            if (has[i])
            {
                ++cells;
                sum += v;
            }
        }
        if (cells == 0)
            continue;
        if (policy == PartialFeedbackPolicy::all_cells_required && cells < kCells)
            continue;
        const double avg = sum / static_cast<double>(cells);
        bool better = !have_choice;
        if (have_choice)
        {
            if (policy == PartialFeedbackPolicy::most_cells_first && cells != best_cells)
                better = cells > best_cells;
            else
                better = avg > best_avg;
        }
        if (better)
        {
            have_choice = true;
            best_cells = cells;
            best_avg = avg;
            best_has = has;
            out.codeword = s;
            out.ue = ues;
        }
    }

    if (!have_choice)
    {
        // Nothing usable reported: random codeword, and within it the best reported UE if any.
        out.codeword = rng.uniform_index(cb.size());
        double sum = 0.0;
        std::size_t cells = 0;
        for (std::size_t i = 0; i < kCells; ++i)
        {
            double v = 0.0;
            best_has[i] = best_ue(tables[i], out.codeword, &reports[i], out.ue[i], v);
            if (best_has[i])
            {
                sum += v;
                ++cells;
            }
        }
        best_avg = cells > 0 ? sum / static_cast<double>(cells) : 0.0;
    }
    for (std::size_t i = 0; i < kCells; ++i)
        if (!best_has[i])
        {
            out.ue[i] = rng.uniform_index(num_ues);
            out.fallback_used[i] = true;
        }

    out.score = best_avg;
    apply_max_sinr_receivers(cfg, real, cb[out.codeword].w, out);
    return out;
}

double measured_feedback_load(const std::vector<FeedbackReport> &reports)
{
    if (reports.empty())
        throw std::invalid_argument("measured_feedback_load: no reports");
    double sum = 0.0;
    for (const auto &r : reports)
        sum += r.load;
    return sum / static_cast<double>(reports.size());
}

} // namespace coia
