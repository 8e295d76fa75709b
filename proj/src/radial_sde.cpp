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

#include "radialkit/radial_sde.hpp"

#include "radialkit/error.hpp"
#include "radialkit/philox.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace radialkit {

namespace {

// Bridge crossing probabilities below e^{-40} are not worth an exp().
constexpr double kBridgeCutoff = 40.0;

void validate(const ModelSpec& spec, double r0, const SimConfig& config) {
    make_spec(spec.family, spec.m, spec.k);
    if (config.n_paths < 1) {
        throw ConfigError("n_paths must be >= 1");
    }
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
        throw ConfigError("dt must be positive");
    }
    if (!(config.t_final >= config.dt) || !std::isfinite(config.t_final)) {
        throw ConfigError("t_final must be at least dt");
    }
    if (!(config.absorb_at > 0.0) || config.absorb_at > domain_max(spec)) {
        throw DomainError("absorbing level must lie in (0, domain_max]");
    }
    if (!(r0 >= 0.0) || !(r0 < config.absorb_at)) {
        throw DomainError("starting point must lie in [0, R)");
    }
}

struct PathResult {
    std::optional<double> final_position;
    std::optional<double> absorption_time;
};

class RadialStepper {
public:
    RadialStepper(const ModelSpec& spec, double r0, const SimConfig& config)
        : spec_(spec), r0_(r0), config_(config), R_(config.absorb_at),
          sigma_(std::sqrt(2.0 * config.dt)), singular_(2.0 * config.dt * singular_drift_coefficient(spec)),
          cap_(spec.k > 0.0 ? domain_max(spec) - 1e-8 : std::numeric_limits<double>::infinity()),
          steps_(std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(config.t_final / config.dt - 1e-9)))) {}

    PathResult run(std::int64_t path) const {
        const PathStream stream(config_.seed, static_cast<std::uint64_t>(path));
        const double dt = config_.dt;
        double x = r0_;
        // One Philox block feeds two steps: both Box-Muller normals and two
        // bridge uniforms.
        PhiloxCounter bits{};
        std::pair<double, double> normals;
        for (std::int64_t j = 0; j < steps_; ++j) {
            const bool second = (j & 1) != 0;
            if (!second) {
                bits = stream.block(static_cast<std::uint64_t>(j >> 1));
                normals = box_muller(bits[0], bits[1]);
            }
            const double z = second ? normals.second : normals.first;
            const double a = x + detail::regular_drift_unchecked(spec_, x) * dt + sigma_ * z;
            double y = std::sqrt(a * a + singular_);
            if (!std::isfinite(y)) {
                std::ostringstream os;
                os << "non-finite radial state on path " << path << " at step " << j << " (x = " << x << ")";
                throw NumericalError(os.str());
            }
            y = std::min(y, cap_);
            const double t_next = static_cast<double>(j + 1) * dt;
            if (y >= R_) {
                return {std::nullopt, t_next};
            }
            const double exponent = (R_ - x) * (R_ - y) / dt;
            if (exponent < kBridgeCutoff && unit_open(bits[second ? 3 : 2]) < std::exp(-exponent)) {
                return {std::nullopt, t_next};
            }
            x = y;
        }
        return {x, std::nullopt};
    }

private:
    ModelSpec spec_;
    double r0_;
    SimConfig config_;
    double R_;
    double sigma_;
    double singular_;
    double cap_;
    std::int64_t steps_;
};

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

PathEnsemble simulate_radial(const ModelSpec& spec, double r0, const SimConfig& config, unsigned threads) {
    validate(spec, r0, config);
    const RadialStepper stepper(spec, r0, config);
    PathEnsemble ensemble{config, spec, r0, {}, {}};
    const auto n = static_cast<std::size_t>(config.n_paths);
    ensemble.final_positions.resize(n);
    ensemble.absorption_times.resize(n);

    detail::parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            auto r = stepper.run(static_cast<std::int64_t>(p));
            ensemble.final_positions[p] = r.final_position;
            ensemble.absorption_times[p] = r.absorption_time;
        }
    });
    return ensemble;
}

McEstimate exit_probability_mc(const PathEnsemble& ensemble, double t) {
    if (!(t >= 0.0) || t > ensemble.config.t_final * (1.0 + 1e-12)) {
        throw DomainError("exit probability time must lie in [0, t_final]");
    }
    std::int64_t hits = 0;
    for (const auto& a : ensemble.absorption_times) {
        if (a && *a <= t * (1.0 + 1e-12)) {
            ++hits;
        }
    }
    const double n = static_cast<double>(ensemble.size());
    const double p = hits / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

McEstimate empirical_cdf(const PathEnsemble& ensemble, double t, double s) {
    if (std::abs(t - ensemble.config.t_final) > 1e-12 * ensemble.config.t_final) {
        throw DomainError("positions are recorded at t_final only");
    }
    if (!(s >= 0.0) || s > ensemble.config.absorb_at) {
        throw DomainError("CDF probe must lie in [0, R]");
    }
    std::int64_t below = 0;
    for (const auto& x : ensemble.final_positions) {
        if (x && (*x < s || s >= ensemble.config.absorb_at)) {
            ++below;
        }
    }
    const double n = static_cast<double>(ensemble.size());
    const double p = below / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

MeanExitEstimate mean_absorption_time(const PathEnsemble& ensemble) {
    double sum = 0.0;
    double sum2 = 0.0;
    std::int64_t count = 0;
    for (const auto& a : ensemble.absorption_times) {
        if (a) {
            sum += *a;
            sum2 += *a * *a;
            ++count;
        }
    }
    const std::int64_t censored = ensemble.size() - count;
    if (count == 0) {
        return {std::nan(""), std::nan(""), censored};
    }
    const double mean = sum / count;
    const double var = count > 1 ? std::max(0.0, (sum2 - count * mean * mean) / (count - 1)) : 0.0;
    return {mean, std::sqrt(var / count), censored};
}

std::string ensemble_to_csv(const PathEnsemble& ensemble) {
    std::string out = "path_id,absorption_time,final_position\n";
    for (std::int64_t p = 0; p < ensemble.size(); ++p) {
        out += std::to_string(p);
        out += ',';
        if (const auto& a = ensemble.absorption_times[p]) {
            out += format_number(*a);
        }
        out += ',';
        if (const auto& x = ensemble.final_positions[p]) {
            out += format_number(*x);
        }
        out += '\n';
    }
    return out;
}

} // namespace radialkit
