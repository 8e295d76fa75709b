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

// Brownian motion (generator: the full Laplace-Beltrami operator) on the unit
// spheres S^{2m+1} in C^{m+1} and S^{4m+3} in H^{m+1}, and the distance to
// the base point of its image in CP^m or HP^m.
//
// Real coordinates are ordered so that the last complex (resp. quaternionic)
// coordinate occupies the last 2 (resp. 4) slots. The north pole has that
// coordinate equal to 1 and projects to the base point.

#include "radialkit/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace radialkit {

struct SphereState {
    int ambient_dim = 0; // 2m + 2 or 4m + 4
    std::vector<double> point;
    double time = 0.0;
};

/// Ambient real dimension of the sphere over the unit-curvature model.
int sphere_dimension(ModelFamily family, int m);

/// The north pole of the sphere over (family, m).
SphereState north_pole(ModelFamily family, int m);

/// Tangential Euler step: adds the tangential part of sqrt(2 dt) noise and
/// renormalizes. `noise` holds ambient_dim standard normals.
SphereState sphere_bm_step(const SphereState& state, double dt, std::span<const double> noise);

/// Distance in CP^m (holomorphic curvature 4) from the base point:
/// arctan(sqrt(1 - |z_{m+1}|^2) / |z_{m+1}|).
double project_radial_kahler(const SphereState& state);

/// Distance in HP^m from the base point, using the last four coordinates.
double project_radial_quaternion(const SphereState& state);

double project_radial(ModelFamily family, const SphereState& state);

struct AmbientConfig {
    std::uint64_t seed = 0;
    std::int64_t n_paths = 1;
    double dt = 1e-3;
    double t_final = 0.2;
};

/// Radial parts at t_final of n_paths sphere Brownian motions over the
/// unit-curvature model (family, m), started at `start` (default: the north
/// pole). Deterministic in (family, m, start, config) for any thread count.
std::vector<double> simulate_ambient_radial(ModelFamily family, int m, const AmbientConfig& config,
                                            const std::optional<std::vector<double>>& start = std::nullopt,
                                            unsigned threads = 0);

/// CSV with header path_id,radius (17 significant digits).
std::string radial_samples_to_csv(std::span<const double> radii);

} // namespace radialkit
