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

#include "radialkit/stats.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace radialkit;

TEST_CASE("tabulated CDF interpolates linearly") {
    const TabulatedCdf f({0.0, 1.0, 2.0}, {0.0, 0.5, 0.8});
    CHECK(f(-1.0) == 0.0);
    CHECK(f(0.5) == doctest::Approx(0.25));
    CHECK(f(1.5) == doctest::Approx(0.65));
    CHECK(f(5.0) == 0.8);
    CHECK(f.total() == 0.8);
    CHECK_THROWS(TabulatedCdf({0.0, 1.0}, {0.0}));
    CHECK_THROWS(TabulatedCdf({1.0, 0.0}, {0.0, 1.0}));
}

TEST_CASE("one-sample statistic") {
    // Samples at the quantile midpoints of U(0,1): D = 1 / (2n).
    std::vector<double> x;
    for (int i = 0; i < 10; ++i) {
        x.push_back((i + 0.5) / 10.0);
    }
    const auto uniform = [](double v) { return std::clamp(v, 0.0, 1.0); };
    CHECK(ks_statistic(x, uniform) == doctest::Approx(0.05));
    // All samples at the left end.
    CHECK(ks_statistic(std::vector<double>(4, 0.0), uniform) == doctest::Approx(1.0));
    CHECK_THROWS(ks_statistic(std::vector<double>{}, uniform));
}

TEST_CASE("two-sample statistic") {
    const std::vector<double> a{1, 2, 3, 4};
    CHECK(ks_two_sample(a, a) == 0.0);
    CHECK(ks_two_sample(a, std::vector<double>{5, 6}) == doctest::Approx(1.0));
    CHECK(ks_two_sample(a, std::vector<double>{2.5}) == doctest::Approx(0.5));
}

TEST_CASE("critical values") {
    CHECK(ks_critical_value(0.05, 100) == doctest::Approx(0.13581));
    CHECK(ks_critical_value(0.01, 10000) == doctest::Approx(0.016276));
    CHECK(ks_critical_value_two_sample(0.05, 100, 100) == doctest::Approx(1.3581 * std::sqrt(0.02)));
    CHECK_THROWS(ks_critical_value(0.1, 100));
    CHECK_THROWS(ks_critical_value(0.05, 0));
}
