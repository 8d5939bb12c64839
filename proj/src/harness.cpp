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

#include "coia/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace coia
{

namespace
{

constexpr std::uint64_t kChannelStream = 0x0000C4A77E1ULL;
constexpr std::uint64_t kCodebookStream = 0x0000C0DEB00CULL;
constexpr std::uint64_t kFallbackStream = 0x00FA11BAC000ULL;

std::string format_number(double x)
{
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string join_numbers(const std::vector<double> &xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        if (i)
            out += ',';
        out += format_number(xs[i]);
    }
    return out;
}

struct Moments
{
    double mean = 0.0;
    double se = 0.0;
};

// Sequential two-pass mean and standard error; order fixed by trial index
Moments moments(const double *x, std::size_t n)
{
    Moments m;
    if (n == 0)
        return m;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sum += x[i];
    m.mean = sum / static_cast<double>(n);
    if (n > 1)
    {
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            ss += (x[i] - m.mean) * (x[i] - m.mean);
        m.se = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    }
    return m;
}

CellTables restrict_tables(const CellTables &tables, std::size_t codebook_size)
{
    CellTables out;
    for (std::size_t i = 0; i < kCells; ++i)
    {
        const MetricTable &src = tables[i];
        if (src.codebook_size() == codebook_size)
        {
            out[i] = src;
            continue;
        }
        MetricTable t(src.kind(), src.num_ues(), codebook_size);
        for (std::size_t k = 0; k < src.num_ues(); ++k)
            for (std::size_t s = 0; s < codebook_size; ++s)
                t.at(k, s) = src.at(k, s);
        out[i] = std::move(t);
    }
    return out;
}

void fnv1a(std::uint64_t &h, const void *data, std::size_t len)
{
    const auto *p = static_cast<const unsigned char *>(data);
    for (std::size_t i = 0; i < len; ++i)
    {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
}

void fnv1a(std::uint64_t &h, const CVec &v)
{
    for (const cplx &x : v.values())
    {
        const double parts[2] = {x.real(), x.imag()};
        fnv1a(h, parts, sizeof(parts));
    }
}

// Threshold applied to a variant at a given theta
double variant_threshold(const Variant &v, Theta theta)
{
    using analytic::FeedbackScheme;
    const double load = v.feedback.target_load;
    switch (v.metric)
    {
    case MetricKind::gamma:
        return analytic::solve_threshold(FeedbackScheme::oia, load);
    case MetricKind::beta:
        return analytic::solve_threshold(FeedbackScheme::maxsnr, load);
    case MetricKind::alpha:
        if (theta.infinite())
            return analytic::solve_threshold(FeedbackScheme::maxsnr, load);
        return analytic::solve_threshold(FeedbackScheme::coia, load, theta.value);
    case MetricKind::sinr:
        break;
    }
    throw std::invalid_argument("threshold feedback is not defined for MAX-SINR selection");
}

} // namespace

// ---- names ----

std::string_view to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::max_sinr:
        return "max-sinr";
    case Scheme::max_snr:
        return "max-snr";
    case Scheme::oia:
        return "oia";
    case Scheme::coia:
        return "coia";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    if (name == "max-sinr" || name == "maxsinr")
        return Scheme::max_sinr;
    if (name == "max-snr" || name == "maxsnr")
        return Scheme::max_snr;
    if (name == "oia")
        return Scheme::oia;
    if (name == "coia")
        return Scheme::coia;
    throw std::invalid_argument("unknown scheme: " + std::string(name));
}

MetricKind parse_metric_kind(std::string_view name)
{
    if (name == "gamma")
        return MetricKind::gamma;
    if (name == "alpha")
        return MetricKind::alpha;
    if (name == "beta")
        return MetricKind::beta;
    throw std::invalid_argument("unknown metric: " + std::string(name));
}

PartialFeedbackPolicy parse_partial_policy(std::string_view name)
{
    if (name == "most-cells")
        return PartialFeedbackPolicy::most_cells_first;
    if (name == "average")
        return PartialFeedbackPolicy::average_available;
    if (name == "all-cells")
        return PartialFeedbackPolicy::all_cells_required;
    throw std::invalid_argument("unknown partial-feedback policy: " + std::string(name));
}

std::string_view to_string(PartialFeedbackPolicy policy)
{
    switch (policy)
    {
    case PartialFeedbackPolicy::most_cells_first:
        return "most-cells";
    case PartialFeedbackPolicy::average_available:
        return "average";
    case PartialFeedbackPolicy::all_cells_required:
        return "all-cells";
    }
    return "unknown";
}

FeedbackMode FeedbackMode::with_load(double load)
{
    if (!(load > 0.0 && load <= 1.0))
        throw std::invalid_argument("feedback load must lie in (0, 1]");
    return {true, load};
}

FeedbackMode FeedbackMode::parse(std::string_view text)
{
    if (text == "full")
        return full();
    constexpr std::string_view prefix = "threshold:";
    if (text.substr(0, prefix.size()) == prefix)
    {
        const std::string value(text.substr(prefix.size()));
        std::size_t used = 0;
        double load = 0.0;
        try
        {
            load = std::stod(value, &used);
        }
        catch (const std::exception &)
        {
            used = 0;
        }
        if (used == 0 || used != value.size())
            throw std::invalid_argument("bad feedback load: " + value);
        return with_load(load);
    }
    throw std::invalid_argument("feedback must be 'full' or 'threshold:<load>'");
}

std::string FeedbackMode::to_string() const
{
    return threshold ? "threshold:" + format_number(target_load) : "full";
}

// ---- variants ----

std::string Variant::label() const
{
    std::string out(coia::to_string(scheme));
    if (scheme == Scheme::coia)
        out += "-" + std::string(coia::to_string(metric));
    if (feedback.threshold)
        out += "-tfb" + format_number(feedback.target_load);
    return out;
}

Variant Variant::max_sinr() { return {Scheme::max_sinr, 1, MetricKind::sinr, FeedbackMode::full()}; }
Variant Variant::max_snr(FeedbackMode fb) { return {Scheme::max_snr, 1, MetricKind::beta, fb}; }
Variant Variant::oia(FeedbackMode fb) { return {Scheme::oia, 1, MetricKind::gamma, fb}; }
Variant Variant::coia(std::size_t codebook_size, MetricKind metric, FeedbackMode fb)
{
    if (metric == MetricKind::sinr)
        throw std::invalid_argument("coia selects on gamma, beta or alpha");
    return {Scheme::coia, codebook_size, metric, fb};
}

void RunSettings::validate() const
{
    if (num_ues < 1)
        throw std::invalid_argument("k must be >= 1");
    if (snr_db.empty())
        throw std::invalid_argument("snr grid must not be empty");
    for (double x : snr_db)
        if (!std::isfinite(x))
            throw std::invalid_argument("snr values must be finite");
    if (!(power_ratio >= 0.0) || !std::isfinite(power_ratio))
        throw std::invalid_argument("power ratio must be >= 0");
    if (trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    if (threads < 1)
        throw std::invalid_argument("threads must be >= 1");
}

void ExperimentSpec::validate() const
{
    settings.validate();
    if (schemes.empty())
        throw std::invalid_argument("at least one scheme required");
    if (codebook_size < 1)
        throw std::invalid_argument("s must be >= 1");
    if (metric != MetricKind::gamma && metric != MetricKind::alpha)
        throw std::invalid_argument("metric must be gamma or alpha");
}

std::vector<Variant> ExperimentSpec::variants() const
{
    validate();
    std::vector<Variant> out;
    for (Scheme s : schemes)
    {
        switch (s)
        {
        case Scheme::max_sinr:
            out.push_back(Variant::max_sinr());
            break;
        case Scheme::max_snr:
            out.push_back(Variant::max_snr(feedback));
            break;
        case Scheme::oia:
            out.push_back(Variant::oia(feedback));
            break;
        case Scheme::coia:
            out.push_back(Variant::coia(codebook_size, metric, feedback));
            break;
        }
    }
    return out;
}

// ---- run ----

std::size_t RunResult::index(std::size_t variant, std::size_t snr, std::size_t trial) const
{
    return (variant * settings.snr_db.size() + snr) * settings.trials + trial;
}

std::vector<double> RunResult::sum_rates(std::size_t variant, std::size_t snr) const
{
    const auto first = sum_rate.begin() + static_cast<std::ptrdiff_t>(index(variant, snr, 0));
    return {first, first + static_cast<std::ptrdiff_t>(settings.trials)};
}

std::vector<double> RunResult::metrics(std::size_t variant, std::size_t snr) const
{
    const auto first = metric.begin() + static_cast<std::ptrdiff_t>(index(variant, snr, 0));
    return {first, first + static_cast<std::ptrdiff_t>(settings.trials)};
}

ChannelRealization trial_realization(std::uint64_t seed, std::size_t num_ues, std::size_t trial, std::size_t antennas)
{
    SystemConfig cfg;
    cfg.num_ues = num_ues;
    cfg.antennas = antennas;
    Rng rng = Rng::substream(seed, kChannelStream, trial);
    return draw_realization(cfg, rng);
}

Codebook experiment_codebook(std::uint64_t seed, std::size_t codebook_size, std::size_t antennas)
{
    SystemConfig cfg;
    cfg.codebook_size = codebook_size;
    cfg.antennas = antennas;
    Rng rng = Rng::substream(seed, kCodebookStream, 0);
    return generate_codebook(cfg, rng);
}

std::uint64_t digest(const ChannelRealization &real)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const CMat &m : real.matrices())
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
            {
                const double parts[2] = {m(r, c).real(), m(r, c).imag()};
                fnv1a(h, parts, sizeof(parts));
            }
    return h;
}

std::uint64_t digest(const Codebook &cb)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const Codeword &c : cb.codewords())
        for (const CVec &w : c.w)
            fnv1a(h, w);
    return h;
}

RunResult run_variants(const RunSettings &settings, const std::vector<Variant> &variants)
{
    settings.validate();
    if (variants.empty())
        throw std::invalid_argument("run_variants: no variants");

    std::size_t max_codebook = 1;
    for (const Variant &v : variants)
    {
        if (v.codebook_size < 1)
            throw std::invalid_argument("run_variants: codebook size must be >= 1");
        if (v.feedback.threshold && v.metric == MetricKind::sinr)
            throw std::invalid_argument("threshold feedback is not defined for MAX-SINR selection");
        max_codebook = std::max(max_codebook, v.codebook_size);
    }

    const std::size_t num_snr = settings.snr_db.size();
    const std::size_t num_trials = settings.trials;
    const std::size_t num_variants = variants.size();

    // Nested codebooks: a variant with S codewords uses the first S of the shared draw
    const Codebook cb_max = experiment_codebook(settings.seed, max_codebook);
    std::vector<Codebook> books;
    for (const Variant &v : variants)
        books.push_back(cb_max.prefix(v.codebook_size));

    std::vector<SystemConfig> configs;
    for (double snr : settings.snr_db)
        configs.push_back(SystemConfig::from_snr_db(settings.num_ues, max_codebook, snr, settings.power_ratio));

    std::vector<double> thresholds(num_variants * num_snr, 0.0);
    for (std::size_t v = 0; v < num_variants; ++v)
        if (variants[v].feedback.threshold)
            for (std::size_t n = 0; n < num_snr; ++n)
                thresholds[v * num_snr + n] = variant_threshold(variants[v], Theta::of(configs[n]));

    RunResult result;
    result.variants = variants;
    result.settings = settings;
    result.sum_rate.assign(num_variants * num_snr * num_trials, 0.0);
    result.load.assign(result.sum_rate.size(), 0.0);
    result.metric.assign(result.sum_rate.size(), 0.0);
    result.channel_digest.assign(num_trials, 0);
    result.codebook_digest = digest(cb_max);

    auto run_trial = [&](std::size_t t) {
        const ChannelRealization real = trial_realization(settings.seed, settings.num_ues, t);
        result.channel_digest[t] = digest(real);
        const CellTables gamma = gamma_tables(real, cb_max);
        const CellTables beta = beta_tables(real, cb_max);

        for (std::size_t n = 0; n < num_snr; ++n)
        {
            const SystemConfig &cfg = configs[n];
            const Theta theta = Theta::of(cfg);
            for (std::size_t v = 0; v < num_variants; ++v)
            {
                const Variant &var = variants[v];
                const Codebook &cb = books[v];
                CellTables tables;
                switch (var.metric)
                {
                case MetricKind::gamma:
                    tables = restrict_tables(gamma, cb.size());
                    break;
                case MetricKind::beta:
                    tables = restrict_tables(beta, cb.size());
                    break;
                case MetricKind::alpha:
                    tables = alpha_tables(restrict_tables(gamma, cb.size()), restrict_tables(beta, cb.size()), theta);
                    break;
                case MetricKind::sinr:
                    tables = metric_tables(cfg, real, cb, MetricKind::sinr, theta);
                    break;
                }

                SelectionOutcome out;
                if (var.feedback.threshold)
                {
                    Rng fallback = Rng::substream(settings.seed, kFallbackStream + v * 4096 + n, t);
                    out = select_coia_threshold(cfg, real, cb, tables, thresholds[v * num_snr + n], fallback,
                                                settings.partial_policy);
                }
                else
                {
                    out = select_coia_full(cfg, real, cb, tables);
                }

                double served = 0.0;
                for (std::size_t i = 0; i < kCells; ++i)
                    served += gamma[i].at(out.ue[i], out.codeword);

                const std::size_t idx = result.index(v, n, t);
                result.sum_rate[idx] = out.sum_rate();
                result.load[idx] = static_cast<double>(out.feedback_count) /
                                   static_cast<double>(kCells * settings.num_ues * cb.size());
                result.metric[idx] = served / static_cast<double>(kCells);
            }
        }
    };

    const std::size_t workers = std::min(settings.threads, num_trials);
    if (workers <= 1)
    {
        for (std::size_t t = 0; t < num_trials; ++t)
            run_trial(t);
    }
    else
    {
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
        {
            const std::size_t begin = num_trials * w / workers;
            const std::size_t end = num_trials * (w + 1) / workers;
            pool.emplace_back([&, begin, end] {
                try
                {
                    for (std::size_t t = begin; t < end; ++t)
                        run_trial(t);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            });
        }
        for (auto &th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    for (std::size_t v = 0; v < num_variants; ++v)
        for (std::size_t n = 0; n < num_snr; ++n)
        {
            const std::size_t first = result.index(v, n, 0);
            const Moments rate = moments(&result.sum_rate[first], num_trials);
            const Moments load = moments(&result.load[first], num_trials);
            const Moments metric = moments(&result.metric[first], num_trials);
            ResultRow row;
            row.scheme = variants[v].label();
            row.k = settings.num_ues;
            row.s = variants[v].codebook_size;
            row.snr_db = settings.snr_db[n];
            row.sum_rate_mean = rate.mean;
            row.sum_rate_se = rate.se;
            row.feedback_load = load.mean;
            row.selected_metric_mean = metric.mean;
            row.selected_metric_se = metric.se;
            row.trials = num_trials;
            row.seed = settings.seed;
            result.rows.push_back(std::move(row));
        }
    return result;
}

std::vector<ResultRow> run(const ExperimentSpec &spec) { return run_variants(spec.settings, spec.variants()).rows; }

// ---- output ----

void write_csv(std::ostream &os, const std::vector<ResultRow> &rows, const std::vector<std::string> &metadata)
{
    for (const std::string &line : metadata)
        os << "# " << line << '\n';
    os << "scheme,k,s,snr_db,sum_rate_mean,sum_rate_se,feedback_load,selected_metric_mean,trials,seed\n";
    for (const ResultRow &r : rows)
    {
        os << r.scheme << ',' << r.k << ',' << r.s << ',' << format_number(r.snr_db) << ','
           << format_number(r.sum_rate_mean) << ',' << format_number(r.sum_rate_se) << ','
           << format_number(r.feedback_load) << ',' << format_number(r.selected_metric_mean) << ',' << r.trials
           << ',' << r.seed << '\n';
    }
}

std::vector<std::string> describe(const ExperimentSpec &spec)
{
    std::string schemes;
    for (std::size_t i = 0; i < spec.schemes.size(); ++i)
        schemes += (i ? "," : "") + std::string(to_string(spec.schemes[i]));
    const RunSettings &st = spec.settings;
    return {
        "coia-sim simulate",
        "seed=" + std::to_string(st.seed),
        "schemes=" + schemes,
        "k=" + std::to_string(st.num_ues),
        "s=" + std::to_string(spec.codebook_size),
        "snr_db=" + join_numbers(st.snr_db),
        "power_ratio=" + format_number(st.power_ratio),
        "noise_var=1",
        "antennas=2",
        "feedback=" + spec.feedback.to_string(),
        "metric=" + std::string(to_string(spec.metric)),
        "partial_feedback=" + std::string(to_string(st.partial_policy)),
        "trials=" + std::to_string(st.trials),
        "codebook=one draw per experiment from the seed; smaller codebooks are its prefixes",
    };
}

// ---- expectation grid ----

Table1 table1(const std::vector<std::size_t> &ks, const std::vector<std::size_t> &ss, const analytic::SeriesControl &ctrl)
{
    if (ks.empty() || ss.empty())
        throw std::invalid_argument("table1: empty K or S list");
    Table1 t{ks, ss, {}};
    for (std::size_t k : ks)
        for (std::size_t s : ss)
            t.values.push_back(analytic::expected_selected_metric(k, s, ctrl));
    return t;
}

void write_table1(std::ostream &os, const Table1 &t)
{
    os << "k";
    for (std::size_t s : t.ss)
        os << ",s" << s;
    os << '\n';
    os << std::fixed << std::setprecision(4);
    for (std::size_t ki = 0; ki < t.ks.size(); ++ki)
    {
        os << t.ks[ki];
        for (std::size_t si = 0; si < t.ss.size(); ++si)
            os << ',' << t.at(ki, si);
        os << '\n';
    }
    os << std::defaultfloat;
}

// ---- figures ----

FigureResult figure(int id, const FigureOverrides &overrides)
{
    RunSettings base;
    base.num_ues = 10;
    if (overrides.trials)
        base.trials = *overrides.trials;
    if (overrides.seed)
        base.seed = *overrides.seed;
    if (overrides.snr_db)
        base.snr_db = *overrides.snr_db;
    if (overrides.threads)
        base.threads = *overrides.threads;

    FigureResult fig;
    fig.id = id;
    fig.metadata = {"coia-sim figure " + std::to_string(id), "seed=" + std::to_string(base.seed),
                    "snr_db=" + join_numbers(base.snr_db), "power_ratio=1", "noise_var=1", "antennas=2",
                    "trials=" + std::to_string(base.trials)};

    auto append = [&fig](const RunResult &r) { fig.rows.insert(fig.rows.end(), r.rows.begin(), r.rows.end()); };

    switch (id)
    {
    case 1: {
        const std::vector<std::size_t> ks = {10, 20};
        const std::vector<std::size_t> ss = {1, 2, 4};
        std::vector<Variant> variants;
        for (std::size_t s : ss)
            variants.push_back(Variant::coia(s, MetricKind::gamma));
        for (std::size_t k : ks)
        {
            RunSettings st = base;
            st.num_ues = k;
            append(run_variants(st, variants));
        }
        fig.expectation = table1(ks, ss);
        fig.metadata.push_back("k=10,20");
        fig.metadata.push_back("feedback=full");
        fig.metadata.push_back("metric=gamma");
        break;
    }
    case 2: {
        std::vector<Variant> variants = {Variant::oia(), Variant::max_snr()};
        for (double load : {0.5, 0.25, 0.125})
        {
            variants.push_back(Variant::oia(FeedbackMode::with_load(load)));
            variants.push_back(Variant::max_snr(FeedbackMode::with_load(load)));
        }
        append(run_variants(base, variants));
        fig.metadata.push_back("k=10");
        fig.metadata.push_back("feedback=full,threshold:0.5,threshold:0.25,threshold:0.125");
        break;
    }
    case 3: {
        const std::vector<Variant> variants = {
            Variant::max_snr(),
            Variant::oia(),
            Variant::coia(4, MetricKind::gamma),
            Variant::coia(4, MetricKind::alpha),
            Variant::coia(4, MetricKind::alpha, FeedbackMode::with_load(0.25)),
        };
        append(run_variants(base, variants));
        fig.metadata.push_back("k=10");
        fig.metadata.push_back("feedback=full; coia-alpha also threshold:0.25");
        break;
    }
    default:
        throw std::invalid_argument("unknown figure id " + std::to_string(id) + " (expected 1, 2 or 3)");
    }
    return fig;
}

void write_figure_csv(std::ostream &os, const FigureResult &fig)
{
    std::vector<std::string> meta = fig.metadata;
    if (fig.expectation)
    {
        const Table1 &t = *fig.expectation;
        for (std::size_t ki = 0; ki < t.ks.size(); ++ki)
            for (std::size_t si = 0; si < t.ss.size(); ++si)
                meta.push_back("expectation k=" + std::to_string(t.ks[ki]) + " s=" + std::to_string(t.ss[si]) + " " +
                               format_number(t.at(ki, si)));
    }
    write_csv(os, fig.rows, meta);
}

} // namespace coia
