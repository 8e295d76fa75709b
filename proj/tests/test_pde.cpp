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

#include "radialkit/error.hpp"
#include "radialkit/pde.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace radialkit;

namespace {

const ModelSpec K1 = make_spec(ModelFamily::kahler, 1, 0.0);

} // namespace

TEST_CASE("flat mean exit times from the centre") {
    // E[tau] = R^2 / (dim) for the Bessel process with generator Laplacian.
    CHECK(mean_exit_time(K1, 1.0, 512, 0.0, 1e-4) == doctest::Approx(0.25).epsilon(1e-5));
    CHECK(mean_exit_time(make_spec(ModelFamily::quaternion_kahler, 1, 0.0), 1.0, 512, 0.0, 1e-4) ==
          doctest::Approx(0.125).epsilon(1e-5));
    CHECK(mean_exit_time(make_spec(ModelFamily::kahler, 2, 0.0), 2.0, 512, 0.0, 4e-4) ==
          doctest::Approx(0.5).epsilon(1e-5));
    // Off-centre: (R^2 - r0^2) / dim.
    CHECK(mean_exit_time(K1, 1.0, 512, 0.6, 1e-4) == doctest::Approx(0.16).epsilon(1e-4));
}

TEST_CASE("Crank-Nicolson kernel agrees with the spectral kernel") {
    const ModelSpec s = make_spec(ModelFamily::quaternion_kahler, 1, -1.0);
    const double t = 0.1;
    const auto dec = dirichlet_eigen_for_time(s, 1.0, 512, t);
    const auto fd = heat_kernel_fd(s, 1.0, 512, t, 0.0, 1e-4);
    const Grid g = build_grid(s, 1.0, 512);
    double diff = 0.0;
    double scale = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double q = dec.heat_kernel(t, 0.0, g.centers[i]).value;
        diff = std::max(diff, std::abs(q - fd[i]));
        scale = std::max(scale, q);
    }
    CHECK(diff / scale < 1e-3);
}

TEST_CASE("maximum principle and monotone survival") {
    const ModelSpec s = make_spec(ModelFamily::kahler, 2, 1.0);
    const Grid g = build_grid(s, 1.2, 256);
    std::vector<double> init(256);
    for (int i = 0; i < 256; ++i) {
        init[i] = std::sin(13.0 * g.centers[i]) > 0.0 ? 1.0 : 0.2;
    }
    HeatEvolver evolver(g, 1e-4);
    EvolutionState state = evolver.initial_state(init);
    for (int k = 0; k < 5; ++k) {
        evolver.advance(state, 0.01);
        const auto [lo, hi] = std::minmax_element(state.values.begin(), state.values.end());
        CHECK(*lo >= -1e-12);
        CHECK(*hi <= 1.0 + 1e-12);
    }
    const double times[] = {0.0, 0.01, 0.05, 0.1, 0.3};
    const auto surv = survival_curve(s, 1.2, 256, 0.3, times, 1e-4);
    CHECK(surv[0] == 1.0);
    for (std::size_t i = 1; i < surv.size(); ++i) {
        CHECK(surv[i] <= surv[i - 1]);
        CHECK(surv[i] >= 0.0);
    }
}

TEST_CASE("closed evolution conserves mass") {
    const ModelSpec s = make_spec(ModelFamily::kahler, 1, 1.0);
    const Grid g = build_grid(s, domain_max(s), 256);
    std::vector<double> init(256, 0.0);
    for (int i = 0; i < 40; ++i) {
        init[i] = 1.0;
    }
    double mass0 = 0.0;
    for (int i = 0; i < 256; ++i) {
        mass0 += g.weights[i] * init[i];
    }
    EvolveOptions opt;
    opt.mode = BoundaryMode::closed;
    const auto out = evolve(s, domain_max(s), 256, init, 0.5, 1e-3, opt);
    double mass1 = 0.0;
    for (int i = 0; i < 256; ++i) {
        mass1 += g.weights[i] * out.values[i];
    }
    CHECK(mass1 == doctest::Approx(mass0).epsilon(1e-12));
    CHECK(out.time == doctest::Approx(0.5));
}

TEST_CASE("survival matches the spectral expansion") {
    // S(t, r0) = sum_j e^{-lambda_j t} phi_j(r0) <phi_j, 1>.
    const ModelSpec s = make_spec(ModelFamily::quaternion_kahler, 1, 1.0);
    const auto dec = dirichlet_eigen_for_time(s, 1.0, 1024, 0.05);
    const auto& w = dec.grid().weights;
    double expected = 0.0;
    for (std::size_t j = 0; j < dec.count(); ++j) {
        double mass = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            mass += w[i] * dec.eigenfunction(j)[i];
        }
        expected += std::exp(-dec.eigenvalues()[j] * 0.05) * dec.eigenfunction_at(j, 0.2) * mass;
    }
    CHECK(survival_probability(s, 1.0, 1024, 0.2, 0.05, 1e-4) == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(heat_kernel_fd(K1, 1.0, 64, 0.001, 0.0, 1e-4), ConfigError);
    CHECK_THROWS_AS(survival_probability(K1, 1.0, 64, 1.0, 0.1, 1e-4), DomainError);
    CHECK_THROWS_AS(HeatEvolver(build_grid(K1, 1.0, 64), 0.0), ConfigError);
    HeatEvolver ev(build_grid(K1, 1.0, 64), 1e-3);
    CHECK_THROWS_AS(ev.initial_state(std::vector<double>(10, 1.0)), ConfigError);
    CHECK(default_time_step(0.5) == 1e-4);
    CHECK(default_time_step(3.0) == doctest::Approx(9e-4));
}
