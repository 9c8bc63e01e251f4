// Copyright 2026 The wigtel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wigtel/phase_space.h"

#include <cstdlib>
#include <set>

#include "gtest/gtest.h"
#include "wigtel/errors.h"

using namespace wigtel;

namespace {

std::vector<std::uint32_t> supported_primes() {
    std::vector<std::uint32_t> out;
    for (std::uint32_t n = 3; n <= DEFAULT_MAX_DIMENSION; n++) {
        if (is_prime(n)) {
            out.push_back(n);
        }
    }
    return out;
}

}  // namespace

TEST(phase_space, mod_add_examples) {
    PrimeDimension five(5), seven(7);
    EXPECT_EQ(mod_add(2, 3, five), 0u);
    EXPECT_EQ(mod_add(4, 4, seven), 1u);
    for (Residue k = 0; k < 7; k++) {
        EXPECT_EQ(mod_add(0, k, seven), k);
    }
}

TEST(phase_space, mod_neg_examples) {
    PrimeDimension five(5), seven(7);
    EXPECT_EQ(mod_neg(0, five), 0u);
    EXPECT_EQ(mod_neg(2, five), 3u);
    EXPECT_EQ(mod_neg(6, seven), 1u);
}

TEST(phase_space, d2_examples) {
    PrimeDimension five(5);
    EXPECT_EQ(d2(4, five), 2u);
    EXPECT_EQ(d2(3, five), 4u);
    EXPECT_EQ(d2(0, five), 0u);
    EXPECT_EQ(d2(0, PrimeDimension(13)), 0u);
}

TEST(phase_space, d2_doubles_back_for_every_supported_dimension) {
    for (std::uint32_t n : supported_primes()) {
        PrimeDimension dim(n);
        std::set<Residue> image;
        for (Residue k = 0; k < n; k++) {
            Residue h = d2(k, dim);
            ASSERT_LT(h, n);
            ASSERT_EQ(mod_add(h, h, dim), k) << "N=" << n << " k=" << k;
            image.insert(h);
        }
        EXPECT_EQ(image.size(), n) << "d2 is not a bijection at N=" << n;
    }
}

TEST(phase_space, group_laws_exhaustive_n7) {
    PrimeDimension dim(7);
    for (Residue a = 0; a < 7; a++) {
        EXPECT_EQ(mod_add(a, mod_neg(a, dim), dim), 0u);
        for (Residue b = 0; b < 7; b++) {
            EXPECT_EQ(mod_add(a, b, dim), mod_add(b, a, dim));
            EXPECT_EQ(dim.sub(dim.add(a, b), b), a);
            for (Residue c = 0; c < 7; c++) {
                EXPECT_EQ(mod_add(mod_add(a, b, dim), c, dim), mod_add(a, mod_add(b, c, dim), dim));
            }
        }
    }
}

TEST(phase_space, reduce_handles_negative_values) {
    PrimeDimension dim(5);
    EXPECT_EQ(dim.reduce(-1), 4u);
    EXPECT_EQ(dim.reduce(-10), 0u);
    EXPECT_EQ(dim.reduce(12), 2u);
    EXPECT_EQ(dim.mul(4, 4), 1u);
    EXPECT_EQ(make_point(-1, 7, dim), (PhasePoint{4, 2}));
}

TEST(phase_space, rejects_non_odd_primes) {
    for (std::uint32_t n : {0u, 1u, 2u, 4u, 9u, 15u, 91u}) {
        try {
            PrimeDimension d(n);
            FAIL() << "accepted N=" << n;
        } catch (const ConfigError &e) {
            EXPECT_STREQ(e.what(), "dimension must be an odd prime");
        }
    }
}

TEST(phase_space, cap_and_environment_override) {
    EXPECT_EQ(max_supported_dimension(), DEFAULT_MAX_DIMENSION);
    EXPECT_THROW(PrimeDimension(101), ConfigError);
    EXPECT_NO_THROW(PrimeDimension(101, 101));
    ASSERT_EQ(setenv("WIGTEL_MAX_DIM", "103", 1), 0);
    EXPECT_EQ(PrimeDimension(101).value(), 101u);
    ASSERT_EQ(setenv("WIGTEL_MAX_DIM", "junk", 1), 0);
    EXPECT_THROW(max_supported_dimension(), ConfigError);
    ASSERT_EQ(unsetenv("WIGTEL_MAX_DIM"), 0);
    EXPECT_THROW(PrimeDimension(101), ConfigError);
}

TEST(phase_space, point_offset_is_q_fastest) {
    PrimeDimension dim(3);
    EXPECT_EQ(point_offset({0, 0}, dim), 0u);
    EXPECT_EQ(point_offset({1, 0}, dim), 1u);
    EXPECT_EQ(point_offset({0, 1}, dim), 3u);
    EXPECT_EQ(to_string(PhasePoint{2, 1}), "(2,1)");
}
