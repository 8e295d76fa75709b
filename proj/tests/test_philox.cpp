/*
   Copyright 2026 The radialkit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "radialkit/philox.hpp"

#include <doctest.h>

#include <cmath>

using namespace radialkit;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
          PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("uniforms lie strictly inside (0, 1)") {
    CHECK(unit_open(0u) > 0.0);
    CHECK(unit_open(0xffffffffu) < 1.0);
    CHECK(unit_open(0x80000000u) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("path streams are distinct and reproducible") {
    const PathStream a(42, 0);
    const PathStream b(42, 1);
    const PathStream c(43, 0);
    CHECK(a.block(5) == PathStream(42, 0).block(5));
    CHECK(a.block(5) != b.block(5));
    CHECK(a.block(5) != c.block(5));
    CHECK(a.block(5) != a.block(6));
    CHECK(a.block(5, 0) != a.block(5, 1));
    CHECK(a.block(1ull << 33) != a.block(1));
}

TEST_CASE("normals have unit variance") {
    const PathStream s(7, 3);
    double sum = 0.0;
    double sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n / 2; ++i) {
        const auto bits = s.block(static_cast<std::uint64_t>(i));
        const auto [z0, z1] = box_muller(bits[0], bits[1]);
        sum += z0 + z1;
        sum2 += z0 * z0 + z1 * z1;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
    CHECK(sum2 / n == doctest::Approx(1.0).epsilon(4.0 * std::sqrt(2.0 / n)));
}
