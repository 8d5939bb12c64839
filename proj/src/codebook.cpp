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

#include "coia/codebook.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace coia
{

Codebook::Codebook(std::vector<Codeword> codewords) : codewords_(std::move(codewords))
{
    if (codewords_.empty())
        throw std::invalid_argument("Codebook: at least one codeword required");
    const std::size_t n = codewords_.front().w[0].size();
    for (const auto &c : codewords_)
        for (const auto &w : c.w)
        {
            if (w.size() != n)
                throw std::invalid_argument("Codebook: inconsistent vector length");
            if (std::abs(w.norm2() - 1.0) > 1e-12)
                throw std::invalid_argument("Codebook: codeword vectors must have unit norm");
        }
}

std::size_t Codebook::antennas() const { return codewords_.empty() ? 0 : codewords_.front().w[0].size(); }

Codebook Codebook::prefix(std::size_t n) const
{
    if (n < 1 || n > codewords_.size())
        throw std::out_of_range("Codebook::prefix: size out of range");
    return Codebook(std::vector<Codeword>(codewords_.begin(), codewords_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Codebook generate_codebook(const SystemConfig &cfg, Rng &rng)
{
    cfg.validate();
    std::vector<Codeword> words(cfg.codebook_size);
    for (auto &c : words)
        for (auto &w : c.w)
            w = draw_unit_vector(rng, cfg.antennas);
    return Codebook(std::move(words));
}

void write_codebook(std::ostream &os, const Codebook &cb)
{
    os << "coia-codebook " << cb.size() << ' ' << cb.antennas() << '\n';
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto &c : cb.codewords())
    {
        bool first = true;
        for (const auto &w : c.w)
            for (std::size_t n = 0; n < w.size(); ++n)
            {
                if (!first)
                    os << ' ';
                os << w[n].real() << ' ' << w[n].imag();
                first = false;
            }
        os << '\n';
    }
}

Codebook read_codebook(std::istream &is)
{
    std::string magic;
    std::size_t s = 0, n = 0;
    if (!(is >> magic >> s >> n) || magic != "coia-codebook" || s < 1 || n < 1)
        throw std::runtime_error("read_codebook: bad header");
    std::vector<Codeword> words(s);
    for (auto &c : words)
        for (auto &w : c.w)
        {
            w = CVec(n);
            for (std::size_t e = 0; e < n; ++e)
            {
                double re, im;
                if (!(is >> re >> im))
                    throw std::runtime_error("read_codebook: truncated codeword data");
                w[e] = cplx(re, im);
            }
        }
    return Codebook(std::move(words));
}

} // namespace coia
