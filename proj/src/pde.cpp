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

#include "radialkit/pde.hpp"

#include "radialkit/error.hpp"

#include <algorithm>
#include <cmath>

namespace radialkit {

namespace {

long step_count(double duration, double dt) {
    return std::max(1L, static_cast<long>(std::ceil(duration / dt - 1e-9)));
}

void check_time_step(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("time step must be positive");
    }
}

// A point source carries stiff modes of size 1 / w_0, which is huge when the
// density vanishes to high order at r = 0.
constexpr int kKernelStartupSteps = 8;

} // namespace

double default_time_step(double R) { return 1e-4 * std::max(1.0, R * R); }

HeatEvolver::HeatEvolver(Grid grid, double dt, EvolveOptions options)
    : grid_(std::move(grid)), op_(discretize(grid_, options.mode)), dt_(dt), options_(options) {
    check_time_step(dt);
    factor_ = factorize(dt);
}

HeatEvolver::Factorization HeatEvolver::factorize(double dt) const {
    const std::size_t n = op_.size();
    std::vector<double> diag(n), off(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = op_.weights[i] + 0.5 * dt * op_.stiffness_diag[i];
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        off[i] = 0.5 * dt * op_.stiffness_off[i];
    }
    return {dt, TridiagonalSolver(off, std::move(diag), off)};
}

EvolutionState HeatEvolver::initial_state(std::span<const double> values) const {
    if (values.size() != static_cast<std::size_t>(grid_.n)) {
        throw ConfigError("initial data length differs from the grid");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw ConfigError("initial data must be finite");
        }
    }
    return {grid_, 0.0, std::vector<double>(values.begin(), values.end())};
}

void HeatEvolver::step(EvolutionState& state, double dt, const Factorization& f, bool smoothing) const {
    auto& u = state.values;
    const std::size_t n = u.size();
    // Smoothing steps are two implicit Euler half-steps, which share the
    // matrix W + (dt/2) K with Crank-Nicolson.
    if (smoothing || state.time < (options_.startup_steps - 0.5) * dt) {
        for (int half = 0; half < 2; ++half) {
            for (std::size_t i = 0; i < n; ++i) {
                u[i] *= op_.weights[i];
            }
            f.solver.solve(u);
        }
    } else {
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            double ku = op_.stiffness_diag[i] * u[i];
            if (i > 0) {
                ku += op_.stiffness_off[i - 1] * u[i - 1];
            }
            if (i + 1 < n) {
                ku += op_.stiffness_off[i] * u[i + 1];
            }
            rhs[i] = op_.weights[i] * u[i] - 0.5 * dt * ku;
        }
        f.solver.solve(rhs);
        u.swap(rhs);
    }
    state.time += dt;
}

void HeatEvolver::advance(EvolutionState& state, double duration) const {
    if (!(duration >= 0.0)) {
        throw ConfigError("evolution duration must be non-negative");
    }
    if (duration == 0.0) {
        return;
    }
    const long steps = step_count(duration, dt_);
    const double h = duration / steps;
    const double start = state.time;
    if (std::abs(h - dt_) <= 1e-12 * dt_) {
        for (long s = 0; s < steps; ++s) {
            step(state, dt_, factor_, steps - s <= options_.output_smoothing_steps);
        }
    } else {
        const Factorization f = factorize(h);
        for (long s = 0; s < steps; ++s) {
            step(state, h, f, steps - s <= options_.output_smoothing_steps);
        }
    }
    state.time = start + duration;
}

EvolutionState evolve(const ModelSpec& spec, double R, int n, std::span<const double> initial, double t_final,
                      double dt, EvolveOptions options) {
    check_time_step(dt);
    if (!(t_final >= dt)) {
        throw ConfigError("t_final must be at least one time step");
    }
    HeatEvolver evolver(build_grid(spec, R, n), dt, options);
    EvolutionState state = evolver.initial_state(initial);
    evolver.advance(state, t_final);
    return state;
}

std::vector<double> heat_kernel_fd(const ModelSpec& spec, double R, int n, double t, double r_source, double dt,
                                   BoundaryMode mode) {
    check_time_step(dt);
    if (!(t >= 100.0 * dt * (1.0 - 1e-12))) {
        throw ConfigError("heat_kernel_fd requires t >= 100 dt");
    }
    Grid grid = build_grid(spec, R, n);
    if (!(r_source >= 0.0) || !(r_source < grid.R)) {
        throw DomainError("kernel source must lie in [0, R)");
    }
    const int cell = std::min(n - 1, static_cast<int>(r_source / grid.h));
    std::vector<double> initial(n, 0.0);
    initial[cell] = 1.0 / grid.weights[cell];
    EvolveOptions options;
    options.mode = mode;
    options.startup_steps = kKernelStartupSteps;
    HeatEvolver evolver(std::move(grid), dt, options);
    EvolutionState state = evolver.initial_state(initial);
    evolver.advance(state, t);
    return std::move(state.values);
}

std::vector<double> survival_curve(const ModelSpec& spec, double R, int n, double r0, std::span<const double> times,
                                   double dt) {
    check_time_step(dt);
    Grid grid = build_grid(spec, R, n);
    if (!(r0 >= 0.0) || !(r0 < grid.R)) {
        throw DomainError("starting point must lie in [0, R)");
    }
    HeatEvolver evolver(std::move(grid), dt);
    const std::vector<double> ones(n, 1.0);
    EvolutionState state = evolver.initial_state(ones);
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        if (!(t >= state.time)) {
            throw ConfigError("survival times must be non-negative and increasing");
        }
        evolver.advance(state, t - state.time);
        const double s = t == 0.0 ? 1.0
                                  : interpolate_cell_values(evolver.grid(), state.values, r0,
                                                            BoundaryMode::dirichlet);
        out.push_back(std::clamp(s, 0.0, 1.0));
    }
    return out;
}

double survival_probability(const ModelSpec& spec, double R, int n, double r0, double t, double dt) {
    if (!(t >= 0.0)) {
        throw DomainError("time must be non-negative");
    }
    const double times[] = {t};
    return survival_curve(spec, R, n, r0, times, dt).front();
}

double mean_exit_time(const ModelSpec& spec, double R, int n, double r0, double dt) {
    check_time_step(dt);
    const double lambda1 = dirichlet_eigen(spec, R, n, 1).eigenvalues().front();
    if (!(lambda1 > 0.0)) {
        throw DomainError("mean exit time needs a positive Dirichlet eigenvalue");
    }
    Grid grid = build_grid(spec, R, n);
    if (!(r0 >= 0.0) || !(r0 < grid.R)) {
        throw DomainError("starting point must lie in [0, R)");
    }
    HeatEvolver evolver(std::move(grid), dt);
    const std::vector<double> ones(n, 1.0);
    EvolutionState state = evolver.initial_state(ones);
    const long steps = step_count(12.0 / lambda1, dt);
    double integral = 0.0;
    double previous = 1.0;
    evolver.run_steps(state, steps, [&](double, const std::vector<double>& u) {
        const double s = interpolate_cell_values(evolver.grid(), u, r0, BoundaryMode::dirichlet);
        integral += 0.5 * dt * (previous + s);
        previous = s;
    });
    return integral + previous / lambda1;
}

} // namespace radialkit
