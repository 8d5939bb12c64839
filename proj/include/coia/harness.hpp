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

#ifndef COIA_HARNESS_HPP
#define COIA_HARNESS_HPP

#include "coia/analytic.hpp"
#include "coia/selection.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace coia
{

enum class Scheme
{
    max_sinr,
    max_snr,
    oia,
    coia,
};

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);
MetricKind parse_metric_kind(std::string_view name);
PartialFeedbackPolicy parse_partial_policy(std::string_view name);
std::string_view to_string(PartialFeedbackPolicy policy);

// "full" or "threshold:<load>"
struct FeedbackMode
{
    bool threshold = false;
    double target_load = 1.0;

    static FeedbackMode full() { return {}; }
    static FeedbackMode with_load(double load);
    static FeedbackMode parse(std::string_view text);
    std::string to_string() const;
};

// One scheme configuration evaluated by the harness
struct Variant
{
    Scheme scheme = Scheme::coia;
    std::size_t codebook_size = 1;
    MetricKind metric = MetricKind::gamma;  // selection metric; fixed by the scheme except for coia
    FeedbackMode feedback;

    // CSV scheme id, e.g. "oia", "max-snr-tfb0.25", "coia-alpha"
    std::string label() const;

    static Variant max_sinr();
    static Variant max_snr(FeedbackMode fb = {});
    static Variant oia(FeedbackMode fb = {});
    static Variant coia(std::size_t codebook_size, MetricKind metric, FeedbackMode fb = {});
};

// Settings shared by every variant of one run
struct RunSettings
{
    std::size_t num_ues = 10;
    std::vector<double> snr_db = {-10, -5, 0, 5, 10, 15, 20, 25, 30};  // P_S / sigma_n^2
    double power_ratio = 1.0;                                          // P_I / P_S
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    PartialFeedbackPolicy partial_policy = PartialFeedbackPolicy::most_cells_first;

    void validate() const;
};

struct ExperimentSpec
{
    std::vector<Scheme> schemes = {Scheme::coia};
    std::size_t codebook_size = 4;
    FeedbackMode feedback;                 // applies to max-snr, oia and coia
    MetricKind metric = MetricKind::gamma; // coia only: gamma or alpha
    RunSettings settings;

    void validate() const;
    std::vector<Variant> variants() const;
};

struct ResultRow
{
    std::string scheme;
    std::size_t k = 0;
    std::size_t s = 0;
    double snr_db = 0.0;
    double sum_rate_mean = 0.0;
    double sum_rate_se = 0.0;
    double feedback_load = 0.0;
    double selected_metric_mean = 0.0;  // mean alignment metric of the served UEs
    double selected_metric_se = 0.0;    // not part of the CSV contract
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

// Per-trial samples of a run, indexed [variant][snr][trial]
struct RunResult
{
    std::vector<Variant> variants;
    RunSettings settings;
    std::vector<double> sum_rate;
    std::vector<double> load;
    std::vector<double> metric;
    std::vector<std::uint64_t> channel_digest;  // per trial
    std::uint64_t codebook_digest = 0;
    std::vector<ResultRow> rows;

    std::size_t index(std::size_t variant, std::size_t snr, std::size_t trial) const;
    // Contiguous per-trial samples of one (variant, snr) cell
    std::vector<double> sum_rates(std::size_t variant, std::size_t snr) const;
    std::vector<double> metrics(std::size_t variant, std::size_t snr) const;
};

// Channel realization and codebook seen at a given trial; every variant of a run uses exactly these.
ChannelRealization trial_realization(std::uint64_t seed, std::size_t num_ues, std::size_t trial,
                                     std::size_t antennas = 2);
Codebook experiment_codebook(std::uint64_t seed, std::size_t codebook_size, std::size_t antennas = 2);

std::uint64_t digest(const ChannelRealization &real);
std::uint64_t digest(const Codebook &cb);

RunResult run_variants(const RunSettings &settings, const std::vector<Variant> &variants);
std::vector<ResultRow> run(const ExperimentSpec &spec);

// CSV with a "# key=value" provenance block ahead of the header row
void write_csv(std::ostream &os, const std::vector<ResultRow> &rows, const std::vector<std::string> &metadata);
std::vector<std::string> describe(const ExperimentSpec &spec);

struct Table1
{
    std::vector<std::size_t> ks;
    std::vector<std::size_t> ss;
    std::vector<double> values;  // row-major [k][s]

    double at(std::size_t ki, std::size_t si) const { return values[ki * ss.size() + si]; }
};

Table1 table1(const std::vector<std::size_t> &ks, const std::vector<std::size_t> &ss,
              const analytic::SeriesControl &ctrl = {});
void write_table1(std::ostream &os, const Table1 &t);

struct FigureOverrides
{
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<double>> snr_db;
    std::optional<std::size_t> threads;
};

struct FigureResult
{
    int id = 0;
    std::vector<ResultRow> rows;
    std::optional<Table1> expectation;  // figure 1 only
    std::vector<std::string> metadata;
};

// Preconfigured sweeps: 1 codebook size vs K, 2 threshold feedback for OIA and MAX-SNR,
// 3 all schemes at K = 10
FigureResult figure(int id, const FigureOverrides &overrides = {});
void write_figure_csv(std::ostream &os, const FigureResult &fig);

} // namespace coia

#endif
