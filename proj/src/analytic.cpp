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

#include "coia/analytic.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace coia::analytic
{

namespace
{

// The Pochhammer series for E[max] cancels by up to ~14 decimal orders for K = 20, S = 4
// (1/B(a,b)^S ~ 1e21 against a sum of order 1e-14), so it is accumulated in 50 digits.
using wide = boost::multiprecision::cpp_bin_float_50;

void check_positive_shapes(double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::domain_error("beta shape parameters must be finite and positive");
}

} // namespace

void require_two_antennas(std::size_t antennas)
{
    if (antennas != 2)
        throw std::domain_error("analytic metric distributions are only valid for N = 2 antennas");
}

// ---- special functions ----

double log_beta(double a, double b)
{
    check_positive_shapes(a, b);
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double incomplete_beta_series(double x, double a, double b, const SeriesControl &ctrl)
{
    check_positive_shapes(a, b);
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    double sum = 0.0;
    double poch = 1.0;  // (1-b)_k / k!
    double xk = 1.0;
    std::size_t k = 0;
    for (; k <= ctrl.max_index; ++k)
    {
        const double term = poch * xk / (a + static_cast<double>(k));
        sum += term;
        if (std::abs(term) < ctrl.term_tolerance * std::abs(sum) || term == 0.0)
            break;
        poch *= (1.0 - b + static_cast<double>(k)) / static_cast<double>(k + 1);
        xk *= x;
    }
    if (k > ctrl.max_index)
        throw std::runtime_error("incomplete beta series did not converge");
    return std::exp(a * std::log(x) - log_beta(a, b)) * sum;
}

namespace
{

// Modified Lentz evaluation of the standard incomplete-beta continued fraction
double beta_continued_fraction(double x, double a, double b)
{
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny)
        d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 10000; ++m)
    {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

} // namespace

double incomplete_beta_cf(double x, double a, double b)
{
    check_positive_shapes(a, b);
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_continued_fraction(x, a, b) / a;
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double regularized_incomplete_beta(double x, double a, double b)
{
    check_positive_shapes(a, b);
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    if (x <= std::min(0.5, (a + 1.0) / (a + b + 2.0)))
        return incomplete_beta_series(x, a, b);
    return incomplete_beta_cf(x, a, b);
}

namespace
{

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (the 7-point Gauss rule)
constexpr std::array<double, 4> kGaussWeights = {0.129484966168869693270611432679082,
                                                 0.279705391489276667901467771423780,
                                                 0.381830050505118944950369775488975,
                                                 0.417959183673469387755102040816327};

void gauss_kronrod(const std::function<double(double)> &f, double lo, double hi, double &estimate, double &error)
{
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j)
    {
        const double dx = half * kKronrodNodes[j];
        const double fsum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * fsum;
        if (j % 2 == 1)
            gauss += kGaussWeights[j / 2] * fsum;
    }
    estimate = kronrod * half;
    error = std::abs((kronrod - gauss) * half);
}

double integrate_recursive(const std::function<double(double)> &f, double lo, double hi, double tol, int depth)
{
    double estimate = 0.0, error = 0.0;
    gauss_kronrod(f, lo, hi, estimate, error);
    if (error <= tol || depth >= 50)
        return estimate;
    const double mid = 0.5 * (lo + hi);
    return integrate_recursive(f, lo, mid, 0.5 * tol, depth + 1) + integrate_recursive(f, mid, hi, 0.5 * tol, depth + 1);
}

} // namespace

double integrate(const std::function<double(double)> &f, double lo, double hi, double tol)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("integrate: tolerance must be positive");
    return integrate_recursive(f, lo, hi, tol, 0);
}

// ---- metric distributions ----

double cdf_gamma(double x) { return std::clamp(x, 0.0, 1.0); }

double pdf_gamma(double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; }

double cdf_beta_gain(double y)
{
    if (!(y > 0.0))
        return 0.0;
    return -std::expm1(-y) - y * std::exp(-y);
}

double pdf_beta_gain(double y) { return y >= 0.0 ? y * std::exp(-y) : 0.0; }

double cdf_alpha(double z, double theta)
{
    if (!(theta > 0.0))
        throw std::domain_error("cdf_alpha: theta must be positive");
    if (!(z > 0.0))
        return 0.0;
    if (std::isinf(theta))
        return cdf_beta_gain(z);
    if (theta >= 1.0)
        return cdf_beta_gain(z / theta);

    // alpha = c gamma + theta beta with c = 1 - theta. Integrating the density piecewise gives
    // G(z) = (z + e^{-z/theta}(2 theta + z) - 2 theta) / c on [0, c), and
    // 1 + (e^{-z/theta}(2 theta + z) - e^{-(z-c)/theta}(2 theta + z - c)) / c beyond.
    const double c = 1.0 - theta;
    const double head = std::exp(-z / theta) * (2.0 * theta + z);
    if (z < c)
        return std::clamp((z - 2.0 * theta + head) / c, 0.0, 1.0);
    const double tail = std::exp(-(z - c) / theta) * (2.0 * theta + z - c);
    return std::clamp(1.0 + (head - tail) / c, 0.0, 1.0);
}

double pdf_alpha(double z, double theta)
{
    if (!(theta > 0.0))
        throw std::domain_error("pdf_alpha: theta must be positive");
    if (z < 0.0)
        return 0.0;
    if (std::isinf(theta))
        return pdf_beta_gain(z);
    if (theta >= 1.0)
        return pdf_beta_gain(z / theta) / theta;
    const double c = 1.0 - theta;
    const double e = std::exp(-z / theta);
    if (z < c)
        return 1.0 / c - e * (theta + z) / (c * theta);
    return -e * (theta + z - std::exp(c / theta) * (2.0 * theta - 1.0 + z)) / (c * theta);
}

// ---- feedback load ----

std::string_view to_string(FeedbackScheme scheme)
{
    switch (scheme)
    {
    case FeedbackScheme::oia:
        return "oia";
    case FeedbackScheme::maxsnr:
        return "maxsnr";
    case FeedbackScheme::coia:
        return "coia";
    }
    return "unknown";
}

FeedbackScheme parse_feedback_scheme(std::string_view name)
{
    if (name == "oia")
        return FeedbackScheme::oia;
    if (name == "maxsnr" || name == "max-snr")
        return FeedbackScheme::maxsnr;
    if (name == "coia")
        return FeedbackScheme::coia;
    throw std::invalid_argument("unknown feedback scheme: " + std::string(name));
}

double load_curve(FeedbackScheme scheme, double t, std::optional<double> theta, std::size_t antennas)
{
    require_two_antennas(antennas);
    if (!(t >= 0.0))
        throw std::domain_error("load_curve: threshold must be >= 0");
    switch (scheme)
    {
    case FeedbackScheme::oia:
        return 1.0 - cdf_gamma(t);
    case FeedbackScheme::maxsnr:
        return 1.0 - cdf_beta_gain(t);
    case FeedbackScheme::coia:
        if (!theta)
            throw std::invalid_argument("load_curve: coia needs theta");
        return 1.0 - cdf_alpha(t, *theta);
    }
    throw std::invalid_argument("load_curve: unknown scheme");
}

double solve_threshold(FeedbackScheme scheme, double target_load, std::optional<double> theta, std::size_t antennas)
{
    if (!(target_load > 0.0 && target_load <= 1.0))
        throw std::domain_error("solve_threshold: target load must lie in (0, 1]");
    auto load = [&](double t) { return load_curve(scheme, t, theta, antennas); };
    if (target_load == 1.0)
        return 0.0;

    double lo = 0.0;
    double hi = 1.0;
    while (load(hi) > target_load)
    {
        hi *= 2.0;
        if (hi > 1e12)
            throw std::domain_error("solve_threshold: unattainable target load");
    }
    for (int it = 0; it < 2000 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (load(mid) > target_load)
            lo = mid;
        else
            hi = mid;
    }
    const double t = std::abs(load(lo) - target_load) < std::abs(load(hi) - target_load) ? lo : hi;
    if (std::abs(load(t) - target_load) >= 1e-10)
        throw std::domain_error("solve_threshold: unattainable target load");
    return t;
}

// ---- selected alignment metric ----

BetaParams percell_max_params(std::size_t num_ues)
{
    if (num_ues < 1)
        throw std::invalid_argument("percell_max_params: K must be >= 1");
    return {static_cast<double>(num_ues), 1.0};
}

BetaParams beta_sum_approximation(double mean_sum, double var_sum)
{
    if (!(mean_sum > 0.0 && mean_sum < 1.0) || !(var_sum > 0.0))
        throw std::domain_error("beta_sum_approximation: need 0 < mean < 1 and positive variance");
    const double f_ratio = mean_sum / (1.0 - mean_sum);
    const double f = f_ratio / (var_sum * std::pow(1.0 + f_ratio, 3));
    return {f_ratio * f, f};
}

BetaParams avg_params(std::size_t num_ues)
{
    const BetaParams cell = percell_max_params(num_ues);
    // Average of kCells = 3 i.i.d. per-cell maxima: mean unchanged, variance divided by 3
    return beta_sum_approximation(cell.mean(), cell.variance() / 3.0);
}

double expected_max_beta_series(const BetaParams &p, std::size_t count, const SeriesControl &ctrl)
{
    check_positive_shapes(p.a, p.b);
    if (count < 1)
        throw std::invalid_argument("expected_max_beta_series: S must be >= 1");
    if (!(ctrl.term_tolerance > 0.0) || ctrl.max_index < 1)
        throw std::invalid_argument("expected_max_beta_series: invalid series control");

    const double s_count = static_cast<double>(count);
    const wide a = p.a;
    const wide b = p.b;

    // Per-index coefficients c_k = (1-b)_k / ((a+k) k!), truncated once |c_k| < tolerance.
    std::vector<wide> coeff;
    {
        wide poch = 1;
        std::size_t k = 0;
        for (;; ++k)
        {
            if (k > ctrl.max_index)
                throw std::runtime_error("expected_max_beta_series: truncation did not converge under the index cap");
            const wide ck = poch / (a + k);
            if (abs(ck) < ctrl.term_tolerance || ck == 0)
                break;
            coeff.push_back(ck);
            poch *= (1 - b + k) / wide(k + 1);
        }
    }

    // The (S-1)-fold sum depends on k_1..k_{S-1} only through their product of coefficients and
    // their total n, so it collapses into sum_n d_n B(aS+n+1, b) with d the (S-1)-fold
    // self-convolution of the coefficients.
    std::vector<wide> conv{wide(1)};
    for (std::size_t rep = 1; rep < count; ++rep)
    {
        std::vector<wide> next(conv.size() + coeff.size() - 1, wide(0));
        for (std::size_t i = 0; i < conv.size(); ++i)
            for (std::size_t j = 0; j < coeff.size(); ++j)
                next[i + j] += conv[i] * coeff[j];
        conv = std::move(next);
    }

    // B(aS+n+1, b) / B(aS+1, b) by the recurrence B(x+1, b) = B(x, b) x / (x + b)
    const wide x0 = a * s_count + 1;
    wide ratio = 1;
    wide sum = 0;
    for (std::size_t n = 0; n < conv.size(); ++n)
    {
        sum += conv[n] * ratio;
        ratio *= (x0 + n) / (x0 + n + b);
    }

    const double log_front = std::log(s_count) + log_beta(p.a * s_count + 1.0, p.b) - s_count * log_beta(p.a, p.b);
    return std::exp(log_front) * sum.convert_to<double>();
}

double expected_max_beta_quadrature(const BetaParams &p, std::size_t count, double tol)
{
    check_positive_shapes(p.a, p.b);
    if (count < 1)
        throw std::invalid_argument("expected_max_beta_quadrature: S must be >= 1");
    const double lb = log_beta(p.a, p.b);
    const double s_count = static_cast<double>(count);
    auto integrand = [&](double x) {
        if (x <= 0.0 || x >= 1.0)
            return 0.0;
        const double density = std::exp((p.a - 1.0) * std::log(x) + (p.b - 1.0) * std::log1p(-x) - lb);
        const double cdf = count > 1 ? regularized_incomplete_beta(x, p.a, p.b) : 1.0;
        return s_count * x * density * std::pow(cdf, s_count - 1.0);
    };
    return integrate(integrand, 0.0, 1.0, tol);
}

double expected_selected_metric(std::size_t num_ues, std::size_t codebook_size, const SeriesControl &ctrl)
{
    if (codebook_size < 1)
        throw std::invalid_argument("expected_selected_metric: S must be >= 1");
    return expected_max_beta_series(avg_params(num_ues), codebook_size, ctrl);
}

double expected_selected_metric_quadrature(std::size_t num_ues, std::size_t codebook_size, double tol)
{
    if (codebook_size < 1)
        throw std::invalid_argument("expected_selected_metric_quadrature: S must be >= 1");
    return expected_max_beta_quadrature(avg_params(num_ues), codebook_size, tol);
}

} // namespace coia::analytic
