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

#include "radialkit/ambient.hpp"

#include "radialkit/error.hpp"
#include "radialkit/philox.hpp"

#include "parallel.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace radialkit {

namespace {

// Returned when the last coordinate block vanishes (the cut locus).
constexpr double kCutLocusRadius = std::numbers::pi / 2.0 - 1e-14;

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return s;
}

double project_last_block(const SphereState& state, int block) {
    const int d = state.ambient_dim;
    if (d < 2 * block || static_cast<int>(state.point.size()) != d) {
        throw DomainError("sphere state has the wrong dimension for this projection");
    }
    std::span<const double> p(state.point);
    const double rest = std::sqrt(norm2(p.first(d - block)));
    const double last = std::sqrt(norm2(p.last(block)));
    if (last < 1e-14) {
        return kCutLocusRadius;
    }
    return std::atan2(rest, last);
}

void step_in_place(std::span<double> point, double scale, std::span<const double> noise) {
    double radial = 0.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        radial += point[i] * noise[i];
    }
    double n2 = 0.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        point[i] += scale * (noise[i] - radial * point[i]);
        n2 += point[i] * point[i];
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : point) {
        x *= inv;
    }
}

void check_m(int m) {
    if (m < 1) {
        throw ConfigError("m must be >= 1");
    }
}

} // namespace

int sphere_dimension(ModelFamily family, int m) {
    check_m(m);
    return family == ModelFamily::kahler ? 2 * m + 2 : 4 * m + 4;
}

SphereState north_pole(ModelFamily family, int m) {
    const int d = sphere_dimension(family, m);
    SphereState s{d, std::vector<double>(d, 0.0), 0.0};
    s.point[family == ModelFamily::kahler ? d - 2 : d - 4] = 1.0;
    return s;
}

SphereState sphere_bm_step(const SphereState& state, double dt, std::span<const double> noise) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("dt must be positive");
    }
    const auto d = static_cast<std::size_t>(state.ambient_dim);
    if (state.point.size() != d || noise.size() != d) {
        throw ConfigError("noise and point must have the ambient dimension");
    }
    SphereState next{state.ambient_dim, state.point, state.time + dt};
    step_in_place(next.point, std::sqrt(2.0 * dt), noise);
    return next;
}

double project_radial_kahler(const SphereState& state) { return project_last_block(state, 2); }

double project_radial_quaternion(const SphereState& state) { return project_last_block(state, 4); }

double project_radial(ModelFamily family, const SphereState& state) {
    return family == ModelFamily::kahler ? project_radial_kahler(state) : project_radial_quaternion(state);
}

std::vector<double> simulate_ambient_radial(ModelFamily family, int m, const AmbientConfig& config,
                                            const std::optional<std::vector<double>>& start, unsigned threads) {
    const SphereState pole = north_pole(family, m);
    const int d = pole.ambient_dim;
    if (config.n_paths < 1) {
        throw ConfigError("n_paths must be >= 1");
    }
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
        throw ConfigError("dt must be positive");
    }
    if (!(config.t_final >= config.dt) || !std::isfinite(config.t_final)) {
        throw ConfigError("t_final must be at least dt");
    }
    SphereState origin = pole;
    if (start) {
        if (static_cast<int>(start->size()) != d) {
            throw ConfigError("start point must have " + std::to_string(d) + " coordinates");
        }
        const double n2 = norm2(*start);
        if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-10) {
            throw DomainError("start point must lie on the unit sphere");
        }
        origin.point = *start;
    }
    const auto steps = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(config.t_final / config.dt - 1e-9)));
    const int blocks = (d + 3) / 4;
    const double scale = std::sqrt(2.0 * config.dt);

    std::vector<double> radii(static_cast<std::size_t>(config.n_paths));
    detail::parallel_chunks(radii.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> noise(static_cast<std::size_t>(4 * blocks));
        SphereState s = origin;
        for (std::size_t p = begin; p < end; ++p) {
            const PathStream stream(config.seed, p);
            std::vector<double>& point = s.point;
            point = origin.point;
            for (std::int64_t j = 0; j < steps; ++j) {
                for (int b = 0; b < blocks; ++b) {
                    const PhiloxCounter bits = stream.block(static_cast<std::uint64_t>(j), static_cast<std::uint32_t>(b));
                    const auto [z0, z1] = box_muller(bits[0], bits[1]);
                    const auto [z2, z3] = box_muller(bits[2], bits[3]);
                    noise[4 * b] = z0;
                    noise[4 * b + 1] = z1;
                    noise[4 * b + 2] = z2;
                    noise[4 * b + 3] = z3;
                }
                step_in_place(point, scale, std::span<const double>(noise).first(d));
            }
            radii[p] = project_radial(family, s);
        }
    });
    return radii;
}

std::string radial_samples_to_csv(std::span<const double> radii) {
    std::string out = "path_id,radius\n";
    char buf[40];
    for (std::size_t p = 0; p < radii.size(); ++p) {
        std::snprintf(buf, sizeof buf, "%.17g", radii[p]);
        out += std::to_string(p);
        out += ',';
        out += buf;
        out += '\n';
    }
    return out;
}

} // namespace radialkit
