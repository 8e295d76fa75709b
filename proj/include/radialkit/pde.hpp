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

// Crank-Nicolson evolution of du/dt = L u on the finite-volume grid. This is
// the time-domain route to the Dirichlet heat kernel and to exit-time
// statistics; it shares the spatial operator with the spectral route but
// none of the eigen machinery.

#include "radialkit/sturm_liouville.hpp"

#include <span>
#include <vector>

namespace radialkit {

struct EvolutionState {
    Grid grid;
    double time = 0.0;
    std::vector<double> values;
};

struct EvolveOptions {
    BoundaryMode mode = BoundaryMode::dirichlet;
    /// The first `startup_steps` steps are each replaced by two implicit
    /// Euler half-steps (Rannacher start), which damps the stiff modes that
    /// Crank-Nicolson would otherwise carry along from rough initial data.
    int startup_steps = 2;
    /// The last steps before each output time are smoothed the same way,
    /// removing the rounding noise that Crank-Nicolson keeps in stiff modes.
    int output_smoothing_steps = 2;
};

/// 1e-4 max(1, R^2).
double default_time_step(double R);

/// Reusable stepper for one grid and boundary mode.
class HeatEvolver {
public:
    HeatEvolver(Grid grid, double dt, EvolveOptions options = {});

    const Grid& grid() const { return grid_; }
    double dt() const { return dt_; }

    /// Advances `state` by `duration` using ceil(duration/dt) equal steps.
    void advance(EvolutionState& state, double duration) const;

    /// Advances by exactly `steps` steps of size dt, calling
    /// observer(time, values) after each one.
    template <class Observer>
    void run_steps(EvolutionState& state, long steps, Observer&& observer) const {
        for (long s = 0; s < steps; ++s) {
            step(state, dt_, factor_, false);
            observer(state.time, state.values);
        }
    }

    EvolutionState initial_state(std::span<const double> values) const;

private:
    struct Factorization {
        double dt = 0.0;
        TridiagonalSolver solver; // W + (dt/2) K
    };

    Factorization factorize(double dt) const;
    void step(EvolutionState& state, double dt, const Factorization& f, bool smoothing) const;

    Grid grid_;
    DiscreteOperator op_;
    double dt_;
    EvolveOptions options_;
    Factorization factor_;
};

/// Evolves `initial` (cell values) to t_final with step dt.
EvolutionState evolve(const ModelSpec& spec, double R, int n, std::span<const double> initial, double t_final,
                      double dt, EvolveOptions options = {});

/// Kernel column q(t, r_source, .) on the cell centres, from the normalized
/// indicator (1 / w_cell) of the cell containing r_source. Requires
/// t >= 100 dt.
std::vector<double> heat_kernel_fd(const ModelSpec& spec, double R, int n, double t, double r_source, double dt,
                                   BoundaryMode mode = BoundaryMode::dirichlet);

/// P(tau_R > t) for the diffusion started at r0 in [0, R).
double survival_probability(const ModelSpec& spec, double R, int n, double r0, double t, double dt);

/// Survival probabilities at several increasing times from one evolution.
std::vector<double> survival_curve(const ModelSpec& spec, double R, int n, double r0, std::span<const double> times,
                                   double dt);

/// E[tau_R] from r0: survival integrated (trapezoid) up to T = 12/lambda_1,
/// plus the tail S(T)/lambda_1 with lambda_1 from the spectral module.
double mean_exit_time(const ModelSpec& spec, double R, int n, double r0, double dt);

} // namespace radialkit
