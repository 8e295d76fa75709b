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
#include "radialkit/radial_sde.hpp"
#include "radialkit/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace radialkit;

TEST_CASE("sphere geometry") {
    CHECK(sphere_dimension(ModelFamily::kahler, 2) == 6);
    CHECK(sphere_dimension(ModelFamily::quaternion_kahler, 1) == 8);
    CHECK_THROWS_AS(sphere_dimension(ModelFamily::kahler, 0), ConfigError);
    const auto pole = north_pole(ModelFamily::kahler, 1);
    CHECK(pole.point == std::vector<double>{0, 0, 1, 0});
    CHECK(project_radial_kahler(pole) == 0.0);
    CHECK(project_radial_quaternion(north_pole(ModelFamily::quaternion_kahler, 1)) == 0.0);
}

TEST_CASE("projections") {
    const double h = std::sqrt(0.5);
    SphereState s{4, {h, 0.0, 0.0, h}, 0.0};
    CHECK(project_radial_kahler(s) == doctest::Approx(std::numbers::pi / 4));
    SphereState cut{4, {1.0, 0.0, 0.0, 0.0}, 0.0};
    CHECK(project_radial_kahler(cut) == doctest::Approx(std::numbers::pi / 2));
    CHECK(project_radial_kahler(cut) < std::numbers::pi / 2);
    SphereState q{8, {0.6, 0, 0, 0, 0, 0.8, 0, 0}, 0.0};
    CHECK(project_radial_quaternion(q) == doctest::Approx(std::atan2(0.6, 0.8)));
    CHECK_THROWS_AS(project_radial_quaternion(s), DomainError);
}

TEST_CASE("Euler step stays on the sphere") {
    const auto pole = north_pole(ModelFamily::quaternion_kahler, 1);
    const std::vector<double> zero(8, 0.0);
    const auto same = sphere_bm_step(pole, 1e-3, zero);
    CHECK(same.point == pole.point);
    CHECK(same.time == doctest::Approx(1e-3));
    const std::vector<double> noise{0.3, -1.2, 0.7, 2.0, -0.4, 0.1, 0.9, -1.5};
    const auto next = sphere_bm_step(pole, 1e-2, noise);
    double n2 = 0.0;
    for (double x : next.point) {
        n2 += x * x;
    }
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(sphere_bm_step(pole, 1e-3, std::vector<double>(3, 0.0)), ConfigError);
    CHECK_THROWS_AS(sphere_bm_step(pole, -1.0, zero), ConfigError);
}

TEST_CASE("radial law is invariant under isometries fixing the base point") {
    AmbientConfig c;
    c.seed = 3;
    c.n_paths = 4000;
    c.dt = 1e-3;
    c.t_final = 0.1;
    const double a = 0.4;
    // Two starts at distance a, related by a unitary map fixing the pole.
    const std::vector<double> s1{std::sin(a), 0, 0, 0, std::cos(a), 0};
    const std::vector<double> s2{0, 0, 0, std::sin(a), 0, std::cos(a)};
    auto r1 = simulate_ambient_radial(ModelFamily::kahler, 2, c, s1);
    c.seed = 4;
    auto r2 = simulate_ambient_radial(ModelFamily::kahler, 2, c, s2);
    CHECK(ks_two_sample(r1, r2) < ks_critical_value_two_sample(0.05, r1.size(), r2.size()));
}

TEST_CASE("ambient radial part matches the radial diffusion") {
    AmbientConfig c;
    c.seed = 5;
    c.n_paths = 6000;
    c.dt = 1e-3;
    c.t_final = 0.15;
    const auto amb = simulate_ambient_radial(ModelFamily::quaternion_kahler, 1, c);
    const ModelSpec s = make_spec(ModelFamily::quaternion_kahler, 1, 1.0);
    SimConfig sc;
    sc.seed = 6;
    sc.n_paths = 6000;
    sc.dt = 1e-3;
    sc.t_final = 0.15;
    sc.absorb_at = domain_max(s);
    const auto ens = simulate_radial(s, 0.0, sc);
    // Absorption at the cut locus only comes from the bridge test and is rare.
    std::vector<double> rad;
    for (const auto& x : ens.final_positions) {
        if (x) {
            rad.push_back(*x);
        }
    }
    CHECK(rad.size() >= 5990);
    CHECK(ks_two_sample(amb, rad) < ks_critical_value_two_sample(0.01, amb.size(), rad.size()));
}

TEST_CASE("ambient simulation is deterministic") {
    AmbientConfig c;
    c.seed = 9;
    c.n_paths = 300;
    c.t_final = 0.05;
    const auto a = simulate_ambient_radial(ModelFamily::kahler, 1, c, std::nullopt, 1);
    const auto b = simulate_ambient_radial(ModelFamily::kahler, 1, c, std::nullopt, 4);
    CHECK(a == b);
    CHECK(radial_samples_to_csv(a).rfind("path_id,radius\n0,", 0) == 0);
}

TEST_CASE("argument checks") {
    AmbientConfig c;
    c.n_paths = 0;
    CHECK_THROWS_AS(simulate_ambient_radial(ModelFamily::kahler, 1, c), ConfigError);
    c.n_paths = 10;
    CHECK_THROWS_AS(simulate_ambient_radial(ModelFamily::kahler, 1, c, std::vector<double>{1, 0, 0}), ConfigError);
    CHECK_THROWS_AS(simulate_ambient_radial(ModelFamily::kahler, 1, c, std::vector<double>{1, 1, 0, 0}), DomainError);
    c.dt = 0.0;
    CHECK_THROWS_AS(simulate_ambient_radial(ModelFamily::kahler, 1, c), ConfigError);
}
