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

#ifndef COIA_CHANNEL_HPP
#define COIA_CHANNEL_HPP

#include "coia/matkernel.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace coia
{

inline constexpr std::size_t kCells = 3;

// All indices in the C++ API are zero-based: cells 0..2, UEs 0..K-1, codewords 0..S-1.
struct SystemConfig
{
    std::size_t num_ues = 1;         // K, UEs per cell
    std::size_t codebook_size = 1;   // S
    std::size_t antennas = 2;        // N, at every BS and UE
    double p_s = 1.0;                // received data power (linear)
    double p_i = 1.0;                // received power per interfering BS (linear)
    double noise_var = 1.0;          // sigma_n^2 (linear)

    // Throws std::invalid_argument on the first violated invariant.
    void validate() const;

    // Convenience: SNR = p_s / noise_var in dB with unit noise, p_i = power_ratio * p_s
    static SystemConfig from_snr_db(std::size_t num_ues, std::size_t codebook_size, double snr_db,
                                    double power_ratio = 1.0, std::size_t antennas = 2);
};

// Serving cell together with its two interferers
struct CellTriple
{
    std::size_t cell = 0;
    std::size_t first = 0;   // i'
    std::size_t second = 0;  // i''

    bool operator==(const CellTriple &) const = default;
};

// i' = [1,2,0][i], i'' = [2,0,1][i]. Throws std::out_of_range for i > 2.
CellTriple interferers(std::size_t cell);

// Channel matrices H[k][i][j] from BS j to UE k of cell i, for one time slot
class ChannelRealization
{
public:
    ChannelRealization() = default;
    ChannelRealization(std::size_t num_ues, std::size_t antennas);

    std::size_t num_ues() const { return num_ues_; }
    std::size_t antennas() const { return antennas_; }

    CMat &at(std::size_t ue, std::size_t cell, std::size_t bs) { return h_[index(ue, cell, bs)]; }
    const CMat &at(std::size_t ue, std::size_t cell, std::size_t bs) const { return h_[index(ue, cell, bs)]; }

    // Every matrix in draw order, for digests and serialization
    const std::vector<CMat> &matrices() const { return h_; }

private:
    std::size_t index(std::size_t ue, std::size_t cell, std::size_t bs) const;

    std::size_t num_ues_ = 0;
    std::size_t antennas_ = 0;
    std::vector<CMat> h_;
};

// 9K independent CN(0,1) matrices. Draws are UE-major (ue, cell, bs), so a realization for K UEs is
// the prefix of one drawn from the same stream for K' > K UEs.
ChannelRealization draw_realization(const SystemConfig &cfg, Rng &rng);

using BeamSet = std::array<CVec, kCells>;  // one transmit vector per BS

// P_S |v^H H_ii w_i|^2 / (sigma^2 + P_I sum_{j != i} |v^H H_ij w_j|^2)
double sinr(const SystemConfig &cfg, const ChannelRealization &real, std::size_t cell, std::size_t ue,
            const BeamSet &w, const CVec &v);

// sum_i log2(1 + sinr_i)
double sum_rate(const std::array<double, kCells> &sinrs);

} // namespace coia

#endif
