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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace coia;

namespace
{

using carray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

CMat to_mat(const carray &a)
{
    if (a.ndim() != 2)
        throw std::invalid_argument("expected a 2-D complex array");
    CMat m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    auto v = a.unchecked<2>();
    for (py::ssize_t r = 0; r < a.shape(0); ++r)
        for (py::ssize_t c = 0; c < a.shape(1); ++c)
            m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = v(r, c);
    return m;
}

CVec to_vec(const carray &a)
{
    if (a.ndim() != 1)
        throw std::invalid_argument("expected a 1-D complex array");
    CVec x(static_cast<std::size_t>(a.shape(0)));
    auto v = a.unchecked<1>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        x[static_cast<std::size_t>(i)] = v(i);
    return x;
}

carray from_vec(const CVec &x)
{
    carray out(static_cast<py::ssize_t>(x.size()));
    auto v = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < x.size(); ++i)
        v(static_cast<py::ssize_t>(i)) = x[i];
    return out;
}

py::dict row_dict(const ResultRow &r)
{
    py::dict d;
    d["scheme"] = r.scheme;
    d["k"] = r.k;
    d["s"] = r.s;
    d["snr_db"] = r.snr_db;
    d["sum_rate_mean"] = r.sum_rate_mean;
    d["sum_rate_se"] = r.sum_rate_se;
    d["feedback_load"] = r.feedback_load;
    d["selected_metric_mean"] = r.selected_metric_mean;
    d["trials"] = r.trials;
    d["seed"] = r.seed;
    return d;
}

ExperimentSpec make_spec(const std::vector<std::string> &schemes, std::size_t k, std::size_t s,
                         const std::vector<double> &snr_db, std::size_t trials, std::uint64_t seed,
                         const std::string &feedback, const std::string &metric, double power_ratio,
                         std::size_t threads, const std::string &partial_policy)
{
    ExperimentSpec spec;
    spec.schemes.clear();
    for (const std::string &name : schemes)
        spec.schemes.push_back(parse_scheme(name));
    spec.codebook_size = s;
    spec.feedback = FeedbackMode::parse(feedback);
    spec.metric = parse_metric_kind(metric);
    spec.settings.num_ues = k;
    spec.settings.snr_db = snr_db;
    spec.settings.trials = trials;
    spec.settings.seed = seed;
    spec.settings.power_ratio = power_ratio;
    spec.settings.threads = threads;
    spec.settings.partial_policy = parse_partial_policy(partial_policy);
    return spec;
}

// (3, K, S) array of one metric for trial `trial` of an experiment
py::array_t<double> trial_tables(const std::string &metric, std::uint64_t seed, std::size_t k, std::size_t s,
                                 std::size_t trial, double snr_db, double power_ratio)
{
    const ChannelRealization real = trial_realization(seed, k, trial);
    const Codebook cb = experiment_codebook(seed, s);
    const SystemConfig cfg = SystemConfig::from_snr_db(k, s, snr_db, power_ratio);
    const MetricKind kind = metric == "sinr" ? MetricKind::sinr : parse_metric_kind(metric);
    const CellTables tables = metric_tables(cfg, real, cb, kind, Theta::of(cfg));
    py::array_t<double> out({static_cast<py::ssize_t>(kCells), static_cast<py::ssize_t>(k), static_cast<py::ssize_t>(s)});
    auto v = out.mutable_unchecked<3>();
    for (std::size_t i = 0; i < kCells; ++i)
        for (std::size_t u = 0; u < k; ++u)
            for (std::size_t c = 0; c < s; ++c)
                v(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(u), static_cast<py::ssize_t>(c)) =
                    tables[i].at(u, c);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Downlink opportunistic interference alignment simulator";

    py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

    // ---- kernels and metrics ----
    m.def(
        "rank1_gen_eig",
        [](const carray &a, const carray &h) {
            const Rank1Eig e = rank1_gen_eig(to_mat(a), to_vec(h));
            return py::make_tuple(e.lambda, from_vec(e.v));
        },
        py::arg("a"), py::arg("h"), "Largest generalized eigenpair of (h h^H, a): returns (lambda, unit v)");
    m.def(
        "effective_gain", [](const carray &h, const carray &w) { return effective_gain(to_mat(h), to_vec(w)); },
        py::arg("h"), py::arg("w"));
    m.def(
        "alignment_metric",
        [](const carray &h1, const carray &w1, const carray &h2, const carray &w2) {
            return alignment_metric(to_mat(h1), to_vec(w1), to_mat(h2), to_vec(w2));
        },
        py::arg("h1"), py::arg("w1"), py::arg("h2"), py::arg("w2"));
    m.def(
        "hybrid_metric", [](double gamma, double beta, double theta) { return hybrid_metric(gamma, beta, Theta{theta}); },
        py::arg("gamma"), py::arg("beta"), py::arg("theta"));
    m.def(
        "sum_rate", [](double a, double b, double c) { return sum_rate({a, b, c}); }, py::arg("sinr1"),
        py::arg("sinr2"), py::arg("sinr3"));

    m.def("trial_tables", &trial_tables, py::arg("metric"), py::arg("seed"), py::arg("k"), py::arg("s"),
          py::arg("trial"), py::arg("snr_db") = 20.0, py::arg("power_ratio") = 1.0,
          "Metric values (cell, UE, codeword) of one trial: gamma, beta, alpha or sinr");

    // ---- analytic ----
    m.def(
        "expected_selected_metric",
        [](std::size_t k, std::size_t s, bool quadrature) {
            return quadrature ? analytic::expected_selected_metric_quadrature(k, s)
                              : analytic::expected_selected_metric(k, s);
        },
        py::arg("k"), py::arg("s"), py::arg("quadrature") = false);
    m.def(
        "solve_threshold",
        [](const std::string &scheme, double load, std::optional<double> theta) {
            return analytic::solve_threshold(analytic::parse_feedback_scheme(scheme), load, theta);
        },
        py::arg("scheme"), py::arg("load"), py::arg("theta") = py::none());
    m.def(
        "load_curve",
        [](const std::string &scheme, double t, std::optional<double> theta) {
            return analytic::load_curve(analytic::parse_feedback_scheme(scheme), t, theta);
        },
        py::arg("scheme"), py::arg("t"), py::arg("theta") = py::none());
    m.def("cdf_gamma", &analytic::cdf_gamma, py::arg("x"));
    m.def("cdf_beta_gain", &analytic::cdf_beta_gain, py::arg("y"));
    m.def("cdf_alpha", &analytic::cdf_alpha, py::arg("z"), py::arg("theta"));
    m.def("pdf_alpha", &analytic::pdf_alpha, py::arg("z"), py::arg("theta"));
    m.def(
        "avg_params",
        [](std::size_t k) {
            const analytic::BetaParams p = analytic::avg_params(k);
            return py::make_tuple(p.a, p.b);
        },
        py::arg("k"));
    m.def(
        "table1",
        [](const std::vector<std::size_t> &ks, const std::vector<std::size_t> &ss) {
            const Table1 t = table1(ks, ss);
            std::vector<std::vector<double>> out(ks.size(), std::vector<double>(ss.size()));
            for (std::size_t i = 0; i < ks.size(); ++i)
                for (std::size_t j = 0; j < ss.size(); ++j)
                    out[i][j] = t.at(i, j);
            return out;
        },
        py::arg("ks") = std::vector<std::size_t>{10, 15, 20}, py::arg("ss") = std::vector<std::size_t>{1, 2, 3, 4});

    // ---- experiments ----
    const std::vector<std::string> all_schemes = {"max-sinr", "max-snr", "oia", "coia"};
    const std::vector<double> grid = RunSettings{}.snr_db;
    auto bind_run = [&](const char *name, auto fn, const char *doc) {
        m.def(name, fn, py::arg("schemes") = all_schemes, py::arg("k") = 10, py::arg("s") = 4,
              py::arg("snr_db") = grid, py::arg("trials") = 10000, py::arg("seed") = 1, py::arg("feedback") = "full",
              py::arg("metric") = "gamma", py::arg("power_ratio") = 1.0, py::arg("threads") = 1,
              py::arg("partial_policy") = "most-cells", doc);
    };
    bind_run(
        "simulate",
        [](const std::vector<std::string> &schemes, std::size_t k, std::size_t s, const std::vector<double> &snr_db,
           std::size_t trials, std::uint64_t seed, const std::string &feedback, const std::string &metric,
           double power_ratio, std::size_t threads, const std::string &policy) {
            const ExperimentSpec spec =
                make_spec(schemes, k, s, snr_db, trials, seed, feedback, metric, power_ratio, threads, policy);
            std::vector<ResultRow> rows;
            {
                py::gil_scoped_release release;
                rows = run(spec);
            }
            py::list out;
            for (const ResultRow &r : rows)
                out.append(row_dict(r));
            return out;
        },
        "Run a sweep; one dict per (scheme, SNR) with the CSV columns as keys");
    bind_run(
        "simulate_csv",
        [](const std::vector<std::string> &schemes, std::size_t k, std::size_t s, const std::vector<double> &snr_db,
           std::size_t trials, std::uint64_t seed, const std::string &feedback, const std::string &metric,
           double power_ratio, std::size_t threads, const std::string &policy) {
            const ExperimentSpec spec =
                make_spec(schemes, k, s, snr_db, trials, seed, feedback, metric, power_ratio, threads, policy);
            std::ostringstream os;
            {
                py::gil_scoped_release release;
                write_csv(os, run(spec), describe(spec));
            }
            return os.str();
        },
        "Same as simulate, rendered as the CSV the command line tool writes");

    m.def(
        "figure",
        [](int id, std::optional<std::size_t> trials, std::optional<std::uint64_t> seed,
           std::optional<std::vector<double>> snr_db, std::optional<std::size_t> threads) {
            FigureOverrides ov{trials, seed, snr_db, threads};
            FigureResult fig;
            {
                py::gil_scoped_release release;
                fig = figure(id, ov);
            }
            py::dict out;
            py::list rows;
            for (const ResultRow &r : fig.rows)
                rows.append(row_dict(r));
            out["id"] = fig.id;
            out["rows"] = rows;
            out["metadata"] = fig.metadata;
            if (fig.expectation)
            {
                py::dict e;
                for (std::size_t i = 0; i < fig.expectation->ks.size(); ++i)
                    for (std::size_t j = 0; j < fig.expectation->ss.size(); ++j)
                        e[py::make_tuple(fig.expectation->ks[i], fig.expectation->ss[j])] = fig.expectation->at(i, j);
                out["expectation"] = e;
            }
            return out;
        },
        py::arg("id"), py::arg("trials") = py::none(), py::arg("seed") = py::none(), py::arg("snr_db") = py::none(),
        py::arg("threads") = py::none());

    m.attr("__version__") = "0.1.0";
}
