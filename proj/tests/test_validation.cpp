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
#include "radialkit/validation.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace radialkit;

namespace {

ValidationOptions quick() {
    ValidationOptions o;
    o.level = ValidationLevel::quick;
    return o;
}

} // namespace

TEST_CASE("levels and titles") {
    CHECK(parse_validation_level("quick") == ValidationLevel::quick);
    CHECK(parse_validation_level("full") == ValidationLevel::full);
    CHECK(to_string(ValidationLevel::full) == "full");
    CHECK_THROWS_AS(parse_validation_level("fast"), ConfigError);
    for (int id = 1; id <= kCriterionCount; ++id) {
        CHECK_FALSE(criterion_title(id).empty());
    }
    CHECK_THROWS_AS(criterion_title(11), ConfigError);
    CHECK_THROWS_AS(run_criterion(0, quick()), ConfigError);
}

TEST_CASE("fast criteria pass at the quick level") {
    for (int id : {1, 2, 3, 4, 5, 10}) {
        CAPTURE(id);
        const auto r = run_criterion(id, quick());
        CHECK(r.id == id);
        CHECK(r.checks_passed());
        for (const auto& c : r.checks) {
            CAPTURE(c.name);
            CHECK(c.criterion == id);
            CHECK(c.measured_error <= c.tolerance);
        }
    }
}

TEST_CASE("a corrupted normalization constant is detected") {
    ValidationOptions o = quick();
    o.density = [](const ModelSpec& s, double r) { return 1.01 * measure_density(s, r); };
    CHECK_FALSE(run_criterion(10, o).checks_passed());
    CHECK_FALSE(mass_consistency_check(ModelFamily::kahler, 2, o.density).passed);
    CHECK(mass_consistency_check(ModelFamily::kahler, 2, [](const ModelSpec& s, double r) {
              return measure_density(s, r);
          }).passed);
}

TEST_CASE("report JSON round trip") {
    ValidationReport r;
    r.toolkit_version = "0.1.0";
    r.level = "quick";
    r.seed = 123456789012345ull;
    r.checks.push_back({1, "kahler m=1 level 1", "8", 1.234567890123e-7, 1e-4, true});
    r.checks.push_back({6, "kernel", "spectral", 0.1 + 0.2, 1e-3, false});
    const std::string text = r.to_json();
    CHECK(ValidationReport::from_json(text) == r);
    CHECK(ValidationReport::from_json(text).to_json() == text);
    CHECK_FALSE(r.passed());
    CHECK(r.to_text().find("OVERALL FAIL") != std::string::npos);

    ValidationReport bad = r;
    bad.checks[0].measured_error = std::numeric_limits<double>::quiet_NaN();
    const auto back = ValidationReport::from_json(bad.to_json());
    CHECK(std::isnan(back.checks[0].measured_error));
    CHECK_THROWS_AS(ValidationReport::from_json("{\"level\": 3}"), ConfigError);
    CHECK_THROWS_AS(ValidationReport::from_json("not json"), ConfigError);
}
