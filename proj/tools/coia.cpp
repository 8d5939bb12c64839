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

// coia: command line driver.
//
//   coia simulate --k 10 --s 4 --scheme oia,coia --metric alpha --feedback threshold:0.25
//   coia simulate --config run.toml --trials 500
//   coia table1
//   coia figure --id 3 --out fig3.csv
//   coia analytic expectation --k 10 --s 4
//   coia analytic threshold --scheme coia --load 0.25 --theta 2
//   coia codebook --s 4 --seed 1

#include "coia/harness.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace
{

// Writes to --out when given, otherwise stdout
class Output
{
public:
    explicit Output(const std::string &path)
    {
        if (!path.empty())
        {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_)
                throw std::runtime_error("cannot open " + path + " for writing");
        }
    }
    std::ostream &stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct SimulateArgs
{
    std::size_t k = 10;
    std::size_t s = 4;
    std::vector<double> snr_db = {-10, -5, 0, 5, 10, 15, 20, 25, 30};
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::string feedback = "full";
    std::string metric = "gamma";
    double power_ratio = 1.0;
    std::vector<std::string> schemes = {"max-sinr", "max-snr", "oia", "coia"};
    std::size_t threads = 1;
    std::string partial_policy = "most-cells";
    std::string out;
};

void run_simulate(const SimulateArgs &a)
{
    coia::ExperimentSpec spec;
    spec.schemes.clear();
    for (const std::string &name : a.schemes)
        spec.schemes.push_back(coia::parse_scheme(name));
    spec.codebook_size = a.s;
    spec.feedback = coia::FeedbackMode::parse(a.feedback);
    spec.metric = coia::parse_metric_kind(a.metric);
    spec.settings.num_ues = a.k;
    spec.settings.snr_db = a.snr_db;
    spec.settings.power_ratio = a.power_ratio;
    spec.settings.trials = a.trials;
    spec.settings.seed = a.seed;
    spec.settings.threads = a.threads;
    spec.settings.partial_policy = coia::parse_partial_policy(a.partial_policy);
    const std::vector<coia::ResultRow> rows = coia::run(spec);
    Output out(a.out);
    coia::write_csv(out.stream(), rows, coia::describe(spec));
}

// Config files hold simulate settings as bare keys named like the flags; [simulate] sections work too
class SimulateConfig : public CLI::ConfigTOML
{
public:
    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override
    {
        std::vector<CLI::ConfigItem> items = CLI::ConfigTOML::from_config(input);
        for (CLI::ConfigItem &item : items)
            if (item.parents.empty())
                item.parents = {"simulate"};
        return items;
    }
};

void add_output_flag(CLI::App *app, std::string &out)
{
    app->add_option("--out", out, "output file (default: stdout)");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"coia: downlink opportunistic interference alignment simulator"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<SimulateConfig>());
    app.set_config("--config", "", "simulate settings file (TOML/INI, keys named like the flags); flags win");
    app.allow_config_extras(CLI::config_extras_mode::error);

    // ---- simulate ----
    SimulateArgs sim;
    CLI::App *simulate = app.add_subcommand("simulate", "Monte Carlo sum-rate sweep over the SNR grid");
    simulate->fallthrough();
    simulate->add_option("--k", sim.k, "UEs per cell")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--s", sim.s, "codebook size for coia")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--snr-db", sim.snr_db, "P_S / noise in dB, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    simulate->add_option("--trials", sim.trials, "channel realizations")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--seed", sim.seed, "experiment seed")->capture_default_str();
    simulate->add_option("--feedback", sim.feedback, "full | threshold:<load>")->capture_default_str();
    simulate->add_option("--metric", sim.metric, "coia selection metric")
        ->check(CLI::IsMember({"gamma", "alpha"}))
        ->capture_default_str();
    simulate->add_option("--power-ratio", sim.power_ratio, "P_I / P_S")->check(CLI::NonNegativeNumber)->capture_default_str();
    simulate->add_option("--scheme", sim.schemes, "schemes, comma separated")
        ->delimiter(',')
        ->check(CLI::IsMember({"max-sinr", "maxsinr", "max-snr", "maxsnr", "oia", "coia"}))
        ->capture_default_str();
    simulate->add_option("--threads", sim.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--partial-policy", sim.partial_policy, "threshold feedback with partial reports")
        ->check(CLI::IsMember({"most-cells", "average", "all-cells"}))
        ->capture_default_str();
    add_output_flag(simulate, sim.out);

    // ---- table1 ----
    std::vector<std::size_t> t1_k = {10, 15, 20}, t1_s = {1, 2, 3, 4};
    coia::analytic::SeriesControl t1_ctrl;
    std::string t1_out;
    CLI::App *table = app.add_subcommand("table1", "expected selected alignment metric over K and S");
    table->add_option("--k", t1_k, "UE counts")->delimiter(',')->check(CLI::PositiveNumber)->capture_default_str();
    table->add_option("--s", t1_s, "codebook sizes")->delimiter(',')->check(CLI::PositiveNumber)->capture_default_str();
    table->add_option("--term-tolerance", t1_ctrl.term_tolerance, "series truncation tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    table->add_option("--max-index", t1_ctrl.max_index, "series index cap")->check(CLI::PositiveNumber)->capture_default_str();
    add_output_flag(table, t1_out);

    // ---- figure ----
    int fig_id = 0;
    coia::FigureOverrides fig_over;
    std::string fig_out;
    CLI::App *fig = app.add_subcommand("figure", "preconfigured sweeps: 1 codebook sizes, 2 threshold feedback, 3 all schemes");
    fig->add_option("--id", fig_id, "figure id")->required()->check(CLI::IsMember({1, 2, 3}));
    fig->add_option("--trials", fig_over.trials, "override trial count");
    fig->add_option("--seed", fig_over.seed, "override seed");
    fig->add_option("--snr-db", fig_over.snr_db, "override SNR grid")->delimiter(',');
    fig->add_option("--threads", fig_over.threads, "worker threads");
    add_output_flag(fig, fig_out);

    // ---- analytic ----
    CLI::App *analytic = app.add_subcommand("analytic", "closed-form quantities");
    analytic->require_subcommand(1);
    std::size_t ex_k = 10, ex_s = 1;
    bool ex_quad = false;
    CLI::App *expectation = analytic->add_subcommand("expectation", "E[selected alignment metric]");
    expectation->add_option("--k", ex_k, "UEs per cell")->required()->check(CLI::PositiveNumber);
    expectation->add_option("--s", ex_s, "codebook size")->required()->check(CLI::PositiveNumber);
    expectation->add_flag("--quadrature", ex_quad, "integrate numerically instead of summing the series");

    std::string th_scheme;
    double th_load = 0.0;
    std::optional<double> th_theta;
    CLI::App *threshold = analytic->add_subcommand("threshold", "threshold giving a target feedback load");
    threshold->add_option("--scheme", th_scheme, "oia | maxsnr | coia")
        ->required()
        ->check(CLI::IsMember({"oia", "maxsnr", "coia"}));
    threshold->add_option("--load", th_load, "target load in (0, 1]")->required();
    threshold->add_option("--theta", th_theta, "noise / P_I, required for coia");

    // ---- codebook ----
    std::size_t cb_s = 4;
    std::uint64_t cb_seed = 1;
    std::string cb_out;
    CLI::App *codebook = app.add_subcommand("codebook", "export the codebook an experiment with this seed uses");
    codebook->add_option("--s", cb_s, "codebook size")->check(CLI::PositiveNumber)->capture_default_str();
    codebook->add_option("--seed", cb_seed, "experiment seed")->capture_default_str();
    add_output_flag(codebook, cb_out);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*simulate)
            run_simulate(sim);
        else if (*table)
        {
            Output out(t1_out);
            coia::write_table1(out.stream(), coia::table1(t1_k, t1_s, t1_ctrl));
        }
        else if (*fig)
        {
            Output out(fig_out);
            coia::write_figure_csv(out.stream(), coia::figure(fig_id, fig_over));
        }
        else if (*expectation)
        {
            const double v = ex_quad ? coia::analytic::expected_selected_metric_quadrature(ex_k, ex_s)
                                     : coia::analytic::expected_selected_metric(ex_k, ex_s);
            std::cout << std::setprecision(10) << v << '\n';
        }
        else if (*threshold)
        {
            const auto scheme = coia::analytic::parse_feedback_scheme(th_scheme);
            std::cout << std::setprecision(10) << coia::analytic::solve_threshold(scheme, th_load, th_theta) << '\n';
        }
        else if (*codebook)
        {
            Output out(cb_out);
            coia::write_codebook(out.stream(), coia::experiment_codebook(cb_seed, cb_s));
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "coia: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
