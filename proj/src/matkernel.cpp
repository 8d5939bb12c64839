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

#include "coia/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coia
{

// ---- CVec ----

double CVec::norm2() const
{
    double s = 0.0;
    for (const auto &x : data_)
        s += std::norm(x);
    return s;
}

double CVec::norm() const { return std::sqrt(norm2()); }

CVec CVec::normalized() const
{
    const double n = norm();
    if (!(n > 0.0))
        throw std::domain_error("cannot normalize a zero vector");
    return scaled(1.0 / n);
}

CVec CVec::scaled(cplx factor) const
{
    CVec out(*this);
    for (auto &x : out.data_)
        x *= factor;
    return out;
}

cplx inner(const CVec &u, const CVec &v)
{
    if (u.size() != v.size())
        throw std::invalid_argument("inner: dimension mismatch");
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i)
        s += std::conj(u[i]) * v[i];
    return s;
}

// ---- CMat ----

CMat::CMat(std::size_t rows, std::size_t cols, std::initializer_list<cplx> row_major)
    : rows_(rows), cols_(cols), data_(row_major)
{
    if (data_.size() != rows * cols)
        throw std::invalid_argument("CMat: initializer size does not match dimensions");
}

CMat CMat::identity(std::size_t n, double diag)
{
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = diag;
    return m;
}

CVec CMat::apply(const CVec &x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("CMat::apply: dimension mismatch");
    CVec y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
    {
        cplx s(0.0, 0.0);
        for (std::size_t c = 0; c < cols_; ++c)
            s += data_[r * cols_ + c] * x[c];
        y[r] = s;
    }
    return y;
}

CMat CMat::scaled(cplx factor) const
{
    CMat out(*this);
    for (auto &x : out.data_)
        x *= factor;
    return out;
}

double CMat::frobenius2() const
{
    double s = 0.0;
    for (const auto &x : data_)
        s += std::norm(x);
    return s;
}

void CMat::add_outer(const CVec &x, double weight)
{
    if (rows_ != cols_ || x.size() != rows_)
        throw std::invalid_argument("CMat::add_outer: dimension mismatch");
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            data_[r * cols_ + c] += weight * x[r] * std::conj(x[c]);
}

// ---- Rng ----

std::uint64_t splitmix64(std::uint64_t &state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed)
{
    std::uint64_t sm = seed;
    for (auto &w : s_)
        w = splitmix64(sm);
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t sub)
{
    // Hash the key through three chained splitmix rounds so neighbouring keys decorrelate.
    std::uint64_t st = seed;
    std::uint64_t key = splitmix64(st);
    st = key ^ stream;
    key = splitmix64(st);
    st = key ^ sub;
    key = splitmix64(st);
    return Rng(key);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t Rng::next_u64()
{
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do
    {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

cplx Rng::complex_normal()
{
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double re = normal();
    const double im = normal();
    return {re * inv_sqrt2, im * inv_sqrt2};
}

std::size_t Rng::uniform_index(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("uniform_index: empty range");
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do
        x = next_u64();
    while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

// ---- sampling ----

CMat draw_complex_gaussian_matrix(Rng &rng, std::size_t rows, std::size_t cols)
{
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("draw_complex_gaussian_matrix: empty dimensions");
    CMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rng.complex_normal();
    return m;
}

CVec draw_unit_vector(Rng &rng, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("draw_unit_vector: n must be >= 1");
    for (;;)
    {
        CVec v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = rng.complex_normal();
        const double nn = v.norm2();
        if (nn > 0.0 && std::isfinite(nn))
            return v.scaled(1.0 / std::sqrt(nn));
    }
}

// ---- generalized eigenproblem ----

CVec solve_hermitian_pd(const CMat &a, const CVec &h)
{
    const std::size_t n = a.rows();
    if (a.cols() != n || h.size() != n)
        throw std::invalid_argument("solve_hermitian_pd: dimension mismatch");
    const double scale = a.frobenius2();

    if (n == 2)
    {
        const double a00 = a(0, 0).real();
        const double a11 = a(1, 1).real();
        const double det = a00 * a11 - std::norm(a(0, 1));
        if (!(a00 > 0.0) || !(det > 1e-14 * scale))
            throw std::domain_error("singular interference-plus-noise covariance");
        CVec x(2);
        x[0] = (a11 * h[0] - a(0, 1) * h[1]) / det;
        x[1] = (a00 * h[1] - a(1, 0) * h[0]) / det;
        return x;
    }

    // Cholesky a = L L^H
    CMat l(n, n);
    for (std::size_t j = 0; j < n; ++j)
    {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(l(j, k));
        if (!(d > 1e-14 * scale))
            throw std::domain_error("singular interference-plus-noise covariance");
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i)
        {
            cplx s = a(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    CVec y(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        cplx s = h[i];
        for (std::size_t k = 0; k < i; ++k)
            s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    CVec x(n);
    for (std::size_t ii = n; ii-- > 0;)
    {
        cplx s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k)
            s -= std::conj(l(k, ii)) * x[k];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

Rank1Eig rank1_gen_eig(const CMat &a, const CVec &h)
{
    const CVec x = solve_hermitian_pd(a, h);
    Rank1Eig out;
    out.lambda = std::max(0.0, inner(h, x).real());
    const double xn = x.norm();
    if (xn > 0.0)
    {
        out.v = x.scaled(1.0 / xn);
    }
    else
    {
        out.v = CVec(h.size());
        out.v[0] = 1.0;
    }
    return out;
}

} // namespace coia
