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

#ifndef COIA_CODEBOOK_HPP
#define COIA_CODEBOOK_HPP

#include "coia/channel.hpp"

#include <iosfwd>
#include <vector>

namespace coia
{

// One set of transmit beamforming vectors, w[j] used by BS j
struct Codeword
{
    BeamSet w;
};

// Shared codebook of S codewords known to every BS and UE
class Codebook
{
public:
    Codebook() = default;
    explicit Codebook(std::vector<Codeword> codewords);

    std::size_t size() const { return codewords_.size(); }
    std::size_t antennas() const;
    const Codeword &operator[](std::size_t s) const { return codewords_.at(s); }
    const std::vector<Codeword> &codewords() const { return codewords_; }

    // First n codewords. Codebooks drawn from one stream are nested, so prefix(n) of a larger draw
    // equals a draw of size n.
    Codebook prefix(std::size_t n) const;

private:
    std::vector<Codeword> codewords_;
};

// S codewords of three independent isotropic unit vectors each
Codebook generate_codebook(const SystemConfig &cfg, Rng &rng);

// Plain-text form: a "coia-codebook S N" header line, then one codeword per line holding the
// 3N complex entries (w_1, w_2, w_3) as "re im" pairs in round-trip precision.
void write_codebook(std::ostream &os, const Codebook &cb);
Codebook read_codebook(std::istream &is);

} // namespace coia

#endif
