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

#include "radialkit/radialkit.h"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

rk_model model(rk_family f, int m, double k) { return rk_model{f, m, k}; }

std::string take(char* s) {
    std::string out(s);
    rk_string_free(s);
    return out;
}

} // namespace

TEST_CASE("status codes and error messages") {
    CHECK(std::string(rk_version()) == "0.1.0");
    CHECK(std::string(rk_status_string(RK_OK)) != "");
    const rk_model bad = model(RK_KAHLER, 0, 1.0);
    CHECK(rk_model_check(&bad) == RK_ERR_DOMAIN);
    CHECK(std::strlen(rk_last_error()) > 0);
    const rk_model k1 = model(RK_KAHLER, 1, 1.0);
    double v = 0.0;
    CHECK(rk_measure_density(&k1, 2.0, &v) == RK_ERR_DOMAIN);
    CHECK(rk_model_check(nullptr) == RK_ERR_CONFIG);
    CHECK(rk_domain_max(&k1, nullptr) == RK_ERR_CONFIG);
    rk_family f;
    CHECK(rk_parse_family("quaternion-kahler", &f) == RK_OK);
    CHECK(f == RK_QUATERNION_KAHLER);
    CHECK(rk_parse_family("riemann", &f) == RK_ERR_CONFIG);
}

TEST_CASE("model geometry through the C interface") {
    const rk_model qk = model(RK_QUATERNION_KAHLER, 1, 1.0);
    int dim = 0;
    REQUIRE(rk_real_dimension(&qk, &dim) == RK_OK);
    CHECK(dim == 4);
    double q = 0.0;
    double ric = 0.0;
    REQUIRE(rk_curvature_constants(&qk, &q, &ric) == RK_OK);
    CHECK(q == 12.0);
    CHECK(ric == 0.0);
    double lam = 0.0;
    REQUIRE(rk_model_spectrum(RK_KAHLER, 2, 1, &lam) == RK_OK);
    CHECK(lam == 12.0);
    double f = 0.0;
    REQUIRE(rk_comparison_f(0.0, 0.5, &f) == RK_OK);
    CHECK(f == doctest::Approx(2.0));
}

TEST_CASE("decomposition handles") {
    const rk_model flat = model(RK_KAHLER, 1, 0.0);
    rk_eigen_estimate est[1];
    REQUIRE(rk_richardson_eigenvalues(&flat, 1.0, 1, RK_DIRICHLET, 512, est) == RK_OK);
    CHECK(est[0].value == doctest::Approx(5.783185962946784).epsilon(1e-6));

    rk_decomposition* dec = nullptr;
    REQUIRE(rk_decomposition_create(&flat, 1.0, 128, 3, RK_DIRICHLET, &dec) == RK_OK);
    CHECK(rk_decomposition_count(dec) == 3);
    CHECK(rk_decomposition_size(dec) == 128);
    double lam = 0.0;
    CHECK(rk_decomposition_eigenvalue(dec, 5, &lam) == RK_ERR_CONFIG);
    REQUIRE(rk_decomposition_eigenvalue(dec, 0, &lam) == RK_OK);
    std::vector<double> centers(128);
    std::vector<double> weights(128);
    REQUIRE(rk_decomposition_grid(dec, centers.data(), weights.data()) == RK_OK);
    CHECK(centers[0] > 0.0);

    char* json = nullptr;
    REQUIRE(rk_decomposition_to_json(dec, &json) == RK_OK);
    rk_decomposition* back = nullptr;
    REQUIRE(rk_decomposition_from_json(json, &back) == RK_OK);
    rk_string_free(json);
    double lam2 = 0.0;
    REQUIRE(rk_decomposition_eigenvalue(back, 0, &lam2) == RK_OK);
    CHECK(lam2 == lam);
    rk_decomposition_free(back);
    rk_decomposition_free(dec);
    rk_decomposition_free(nullptr);
    CHECK(rk_decomposition_from_json("{}", &back) == RK_ERR_CONFIG);
}

TEST_CASE("ensembles and kernels") {
    const rk_model m = model(RK_QUATERNION_KAHLER, 1, -1.0);
    rk_sim_config cfg{5, 500, 1e-3, 0.1, 1.0, 1};
    rk_ensemble* ens = nullptr;
    REQUIRE(rk_simulate_radial(&m, 0.0, &cfg, &ens) == RK_OK);
    CHECK(rk_ensemble_size(ens) == 500);
    double p = 0.0;
    double se = 0.0;
    REQUIRE(rk_exit_probability(ens, 0.1, &p, &se) == RK_OK);
    CHECK(p >= 0.0);
    CHECK(rk_exit_probability(ens, 1.0, &p, &se) == RK_ERR_DOMAIN);
    char* csv = nullptr;
    REQUIRE(rk_ensemble_to_csv(ens, &csv) == RK_OK);
    CHECK(take(csv).rfind("path_id,", 0) == 0);
    rk_ensemble_free(ens);

    cfg.n_paths = 0;
    CHECK(rk_simulate_radial(&m, 0.0, &cfg, &ens) == RK_ERR_CONFIG);

    std::vector<double> fd(256);
    REQUIRE(rk_heat_kernel_fd(&m, 1.0, 256, 0.1, 0.0, 1e-4, RK_DIRICHLET, fd.data()) == RK_OK);
    CHECK(fd[0] > 0.0);
    double tau = 0.0;
    const rk_model flat = model(RK_KAHLER, 1, 0.0);
    REQUIRE(rk_mean_exit_time(&flat, 1.0, 256, 0.0, 1e-4, &tau) == RK_OK);
    CHECK(tau == doctest::Approx(0.25).epsilon(1e-4));

    std::vector<double> radii(50);
    REQUIRE(rk_simulate_ambient(RK_KAHLER, 1, 3, 50, 1e-3, 0.05, 1, radii.data()) == RK_OK);
    CHECK(radii[0] > 0.0);
}

TEST_CASE("validation reports") {
    rk_report* r = nullptr;
    CHECK(rk_validate("fast", 7, 1, &r) == RK_ERR_CONFIG);
    const char* json = R"({"toolkit_version": "0.1.0", "level": "quick", "seed": 7, "passed": true,
        "checks": [{"criterion": 3, "name": "a", "target": "b", "measured_error": 1e-9,
                    "tolerance": 1e-5, "passed": true}]})";
    REQUIRE(rk_report_from_json(json, &r) == RK_OK);
    CHECK(rk_report_passed(r) == 1);
    CHECK(rk_report_timing_count(r) == 0);
    char* text = nullptr;
    REQUIRE(rk_report_to_text(r, &text) == RK_OK);
    CHECK(take(text).find("OVERALL PASS") != std::string::npos);
    char* out = nullptr;
    REQUIRE(rk_report_to_json(r, &out) == RK_OK);
    rk_report* again = nullptr;
    const std::string s = take(out);
    REQUIRE(rk_report_from_json(s.c_str(), &again) == RK_OK);
    char* out2 = nullptr;
    REQUIRE(rk_report_to_json(again, &out2) == RK_OK);
    CHECK(take(out2) == s);
    rk_report_free(again);
    rk_report_free(r);
}
