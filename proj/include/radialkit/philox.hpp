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

#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011). Every
// random draw is a pure function of (seed, path, step, substream), so
// ensembles do not depend on how paths are scheduled across threads.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace radialkit {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

inline PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

/// Uniform in the open interval (0, 1) from 32 random bits.
inline double unit_open(std::uint32_t bits) { return (static_cast<double>(bits) + 0.5) * 0x1.0p-32; }

/// Two independent standard normals (Box-Muller).
inline std::pair<double, double> box_muller(std::uint32_t a, std::uint32_t b) {
    const double radius = std::sqrt(-2.0 * std::log(unit_open(a)));
    const double angle = 2.0 * std::numbers::pi * unit_open(b);
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Random stream of one path: block(step, substream) is 128 fresh bits.
class PathStream {
public:
    PathStream(std::uint64_t seed, std::uint64_t path)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          path_lo_(static_cast<std::uint32_t>(path)), path_hi_(static_cast<std::uint32_t>(path >> 32)) {}

    PhiloxCounter block(std::uint64_t step, std::uint32_t substream = 0) const {
        // The top byte of the second counter word is the substream.
        const auto step_hi = static_cast<std::uint32_t>(step >> 32) & 0x00FFFFFFu;
        return philox4x32_10({static_cast<std::uint32_t>(step), step_hi | (substream << 24), path_lo_, path_hi_},
                             key_);
    }

private:
    PhiloxKey key_;
    std::uint32_t path_lo_;
    std::uint32_t path_hi_;
};

} // namespace radialkit
