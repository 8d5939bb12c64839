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

#ifndef COIA_MATKERNEL_HPP
#define COIA_MATKERNEL_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace coia
{

using cplx = std::complex<double>;

// Dense complex column vector.
class CVec
{
public:
    CVec() = default;
    explicit CVec(std::size_t n) : data_(n, cplx(0.0, 0.0)) {}
    CVec(std::initializer_list<cplx> values) : data_(values) {}

    std::size_t size() const { return data_.size(); }
    cplx &operator[](std::size_t i) { return data_[i]; }
    const cplx &operator[](std::size_t i) const { return data_[i]; }

    std::span<const cplx> values() const { return data_; }

    double norm2() const;                // squared Euclidean norm
    double norm() const;
    CVec normalized() const;             // throws std::domain_error on the zero vector
    CVec scaled(cplx factor) const;

    bool operator==(const CVec &) const = default;

private:
    std::vector<cplx> data_;
};

// u^H v
cplx inner(const CVec &u, const CVec &v);

// Dense complex matrix, row-major.
class CMat
{
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}
    CMat(std::size_t rows, std::size_t cols, std::initializer_list<cplx> row_major);

    static CMat identity(std::size_t n, double diag = 1.0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    CVec apply(const CVec &x) const;     // this * x
    CMat scaled(cplx factor) const;
    double frobenius2() const;

    // this += weight * x x^H
    void add_outer(const CVec &x, double weight);

    bool operator==(const CMat &) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// Deterministic, splittable pseudo random generator (xoshiro256** seeded through splitmix64).
// Streams derived from the same (seed, stream) pair replay identically on every platform: no
// std:: distributions are involved.
class Rng
{
public:
    explicit Rng(std::uint64_t seed = 0);

    // Independent substream keyed by (seed, stream, sub)
    static Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t sub = 0);

    std::uint64_t next_u64();
    double uniform();                              // [0, 1), 53 random bits
    double normal();                               // standard normal, Marsaglia polar method
    cplx complex_normal();                         // CN(0,1): real and imaginary parts each variance 1/2
    std::size_t uniform_index(std::size_t n);      // uniform on {0, ..., n-1}, n >= 1

private:
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t &state);

// I.i.d. CN(0,1) entries
CMat draw_complex_gaussian_matrix(Rng &rng, std::size_t rows, std::size_t cols);

// Isotropic unit-norm vector (Gaussian draw then normalize)
CVec draw_unit_vector(Rng &rng, std::size_t n);

struct Rank1Eig
{
    double lambda = 0.0;  // largest eigenvalue of a^-1 h h^H
    CVec v;               // unit-norm, parallel to a^-1 h
};

// Largest generalized eigenpair of (h h^H, a) for Hermitian positive-definite a.
// lambda = h^H a^-1 h, v = a^-1 h / |a^-1 h|. Throws std::domain_error when a is singular or
// not positive definite.
Rank1Eig rank1_gen_eig(const CMat &a, const CVec &h);

// x = a^-1 h for Hermitian positive-definite a (2x2 adjugate, Cholesky otherwise)
CVec solve_hermitian_pd(const CMat &a, const CVec &h);

} // namespace coia

#endif
