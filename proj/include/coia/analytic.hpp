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

#ifndef COIA_ANALYTIC_HPP
#define COIA_ANALYTIC_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>

// Closed-form statistics of the selection metrics for two-antenna nodes, feedback-load curves and
// the expectation of the selected alignment metric. Everything here assumes N = 2: the effective
// gain is then Gamma(2, 1) distributed and the alignment metric is Uniform[0, 1]. Entry points that
// take an antenna count refuse anything else.
namespace coia::analytic
{

struct BetaParams
{
    double a = 1.0;
    double b = 1.0;

    double mean() const { return a / (a + b); }
    double variance() const { return a * b / ((a + b) * (a + b) * (a + b + 1.0)); }
};

struct SeriesControl
{
    double term_tolerance = 1e-12;  // per-index truncation: stop once |coefficient| drops below this
    std::size_t max_index = 2000;   // hard cap per summation index
};

void require_two_antennas(std::size_t antennas);

// ---- special functions ----

double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b) from the power series
//   I_x(a,b) = x^a / B(a,b) * sum_k (1-b)_k x^k / ((a+k) k!)
// Accurate for x not too close to 1; throws std::runtime_error if ctrl caps are hit.
double incomplete_beta_series(double x, double a, double b, const SeriesControl &ctrl = {});

// Regularized incomplete beta via the modified-Lentz continued fraction (with the symmetry
// I_x(a,b) = 1 - I_{1-x}(b,a) applied past the mean)
double incomplete_beta_cf(double x, double a, double b);

// Series where it converges quickly, continued fraction elsewhere
double regularized_incomplete_beta(double x, double a, double b);

// Adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi] to absolute tolerance tol
double integrate(const std::function<double(double)> &f, double lo, double hi, double tol = 1e-10);

// ---- metric distributions ----

double cdf_gamma(double x);
double pdf_gamma(double x);

double cdf_beta_gain(double y);
double pdf_beta_gain(double y);

// Hybrid metric alpha = max(1-theta,0) gamma + theta beta. theta <= 0 throws std::domain_error;
// infinite theta means the metric degenerates to beta.
double cdf_alpha(double z, double theta);
double pdf_alpha(double z, double theta);

// ---- feedback load ----

enum class FeedbackScheme
{
    oia,     // threshold on gamma
    maxsnr,  // threshold on beta
    coia,    // threshold on alpha, needs theta
};

std::string_view to_string(FeedbackScheme scheme);
FeedbackScheme parse_feedback_scheme(std::string_view name);

// Expected fraction of metric values at or above threshold t
double load_curve(FeedbackScheme scheme, double t, std::optional<double> theta = std::nullopt,
                  std::size_t antennas = 2);

// Threshold t >= 0 whose load_curve equals target_load in (0, 1]
double solve_threshold(FeedbackScheme scheme, double target_load, std::optional<double> theta = std::nullopt,
                       std::size_t antennas = 2);

// ---- selected alignment metric ----

// Law of the per-cell best alignment metric over K UEs: Beta(K, 1)
BetaParams percell_max_params(std::size_t num_ues);

// Moment-matched Beta(e, f) for a sum of independent beta variables with total mean `mean_sum`
// (< 1) and total variance `var_sum`: F = E/(1-E), f = F/(var (1+F)^3), e = F f.
BetaParams beta_sum_approximation(double mean_sum, double var_sum);

// Beta approximation of the three-cell average of per-cell best metrics
BetaParams avg_params(std::size_t num_ues);

// E[max of S i.i.d. Beta(a, b)] from the Pochhammer series, in extended precision
double expected_max_beta_series(const BetaParams &p, std::size_t count, const SeriesControl &ctrl = {});

// Same expectation by quadrature of S x f(x) I_x(a,b)^(S-1) over [0, 1]
double expected_max_beta_quadrature(const BetaParams &p, std::size_t count, double tol = 1e-9);

// Expected average alignment metric of the selected codeword for K UEs per cell and S codewords
double expected_selected_metric(std::size_t num_ues, std::size_t codebook_size, const SeriesControl &ctrl = {});
double expected_selected_metric_quadrature(std::size_t num_ues, std::size_t codebook_size, double tol = 1e-9);

} // namespace coia::analytic

#endif
