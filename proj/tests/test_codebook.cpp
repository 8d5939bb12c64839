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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coia/codebook.hpp"

#include <cmath>
#include <sstream>

using namespace coia;

TEST_CASE("generate sizes and unit norms")
{
    SystemConfig cfg;
    cfg.codebook_size = 1;
    Rng rng(1);
    const Codebook one = generate_codebook(cfg, rng);
    REQUIRE(one.size() == 1);
    for (const auto &w : one[0].w)
        CHECK(std::abs(w.norm2() - 1.0) < 1e-12);

    cfg.codebook_size = 4;
    const Codebook four = generate_codebook(cfg, rng);
    std::size_t vectors = 0;
    for (const auto &c : four.codewords())
        for (const auto &w : c.w)
        {
            CHECK(std::abs(w.norm2() - 1.0) < 1e-12);
            ++vectors;
        }
    CHECK(vectors == 12);
}

TEST_CASE("codebooks are deterministic and nested")
{
    SystemConfig cfg;
    cfg.codebook_size = 4;
    Rng a(5), b(5);
    const Codebook ca = generate_codebook(cfg, a);
    const Codebook cb = generate_codebook(cfg, b);
    for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(ca[s].w[j] == cb[s].w[j]);

    cfg.codebook_size = 2;
    Rng c(5);
    const Codebook small = generate_codebook(cfg, c);
    const Codebook prefix = ca.prefix(2);
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(small[s].w[j] == prefix[s].w[j]);

    // Distinct codewords come from distinct draws
    CHECK_FALSE(ca[0].w[0] == ca[1].w[0]);
    CHECK_THROWS(ca.prefix(0));
    CHECK_THROWS(ca.prefix(5));
}

TEST_CASE("text export round-trips exactly")
{
    SystemConfig cfg;
    cfg.codebook_size = 3;
    Rng rng(12);
    const Codebook cb = generate_codebook(cfg, rng);
    std::stringstream ss;
    write_codebook(ss, cb);
    const Codebook back = read_codebook(ss);
    REQUIRE(back.size() == 3);
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(back[s].w[j] == cb[s].w[j]);
}

TEST_CASE("malformed codebook input")
{
    std::istringstream bad_header("nope 1 2\n");
    CHECK_THROWS(read_codebook(bad_header));
    std::istringstream truncated("coia-codebook 1 2\n1 0 0 0\n");
    CHECK_THROWS(read_codebook(truncated));
    std::istringstream not_unit("coia-codebook 1 2\n1 0 1 0 1 0 0 0 1 0 0 0\n");
    CHECK_THROWS(read_codebook(not_unit));
}
