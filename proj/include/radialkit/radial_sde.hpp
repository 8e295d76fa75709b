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

// Monte Carlo simulation of the comparison diffusion
//
//     d rho = drift(rho) dt + sqrt(2) d beta,
//
// absorbed at level R.
//
// Each step splits the drift into c/rho (c = real dimension - 1) and the
// smooth remainder g. With a = x + g(x) dt + sqrt(2 dt) Z the update is
//
//     y = sqrt(a^2 + 2 c dt),
//
// which reproduces the Euler increment c/x dt for x >> sqrt(dt), matches
// E[y^2] of the flat Bessel step exactly, and never leaves [0, inf) so no
// reflection or drift cut-off is needed at the origin. Crossings of R inside
// a step are caught by the Brownian-bridge test
// exp(-(R - x)(R - y) / dt) for a process with quadratic variation 2t.

#include "radialkit/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace radialkit {

struct SimConfig {
    std::uint64_t seed = 0;
    std::int64_t n_paths = 1;
    double dt = 1e-4;
    double t_final = 1.0;
    double absorb_at = 1.0; // R

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct PathEnsemble {
    SimConfig config;
    ModelSpec spec;
    double r0 = 0.0;
    std::vector<std::optional<double>> final_positions;  // empty when absorbed
    std::vector<std::optional<double>> absorption_times; // empty when alive at t_final

    std::int64_t size() const { return static_cast<std::int64_t>(absorption_times.size()); }
    friend bool operator==(const PathEnsemble&, const PathEnsemble&) = default;
};

struct McEstimate {
    double estimate;
    double std_error;
};

/// Simulates config.n_paths paths from r0. `threads` = 0 uses the hardware
/// concurrency; the result does not depend on it.
PathEnsemble simulate_radial(const ModelSpec& spec, double r0, const SimConfig& config, unsigned threads = 0);

/// Fraction of paths absorbed by time t, with binomial standard error.
McEstimate exit_probability_mc(const PathEnsemble& ensemble, double t);

/// Fraction of all paths that are alive at t = t_final with position < s.
McEstimate empirical_cdf(const PathEnsemble& ensemble, double t, double s);

struct MeanExitEstimate {
    double mean;
    double std_error;
    std::int64_t censored; // paths still alive at t_final (excluded)
};

MeanExitEstimate mean_absorption_time(const PathEnsemble& ensemble);

/// CSV with header path_id,absorption_time,final_position; empty fields
/// mark NONE / ABSORBED. Numbers use 17 significant digits.
std::string ensemble_to_csv(const PathEnsemble& ensemble);

} // namespace radialkit
