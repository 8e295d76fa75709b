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

// The acceptance suite: closed-form, cross-route and Monte Carlo checks of
// the model-space computations, grouped into ten numbered criteria.

#include "radialkit/model.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace radialkit {

enum class ValidationLevel { quick, full };

std::string_view to_string(ValidationLevel level);
ValidationLevel parse_validation_level(std::string_view text);

struct Check {
    int criterion = 0;
    std::string name;
    std::string target;
    double measured_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;

    friend bool operator==(const Check&, const Check&) = default;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;
    double time_limit_seconds = 0.0;

    bool checks_passed() const;
    bool within_time_limit() const { return seconds <= time_limit_seconds; }
};

using DensityFunction = std::function<double(const ModelSpec&, double)>;

struct ValidationOptions {
    ValidationLevel level = ValidationLevel::full;
    std::uint64_t seed = 7;
    unsigned threads = 0;
    /// Replaces measure_density in the normalization checks (criteria 5
    /// and 10); used to confirm that a corrupted constant is detected.
    DensityFunction density;
};

constexpr int kCriterionCount = 10;

std::string criterion_title(int id);

/// Runs one criterion (1..10) and times it.
CriterionResult run_criterion(int id, const ValidationOptions& options);

/// Total mu-mass of the compact model (k = 1, [0, pi/2]) under `density`
/// against vol(CP^m) = pi^m / m! or vol(HP^m) = pi^{2m} / (2m+1)!.
Check mass_consistency_check(ModelFamily family, int m, const DensityFunction& density);

struct ValidationReport {
    std::string toolkit_version;
    std::string level;
    std::uint64_t seed = 0;
    std::vector<Check> checks;

    bool passed() const;
    std::string to_json() const;
    static ValidationReport from_json(const std::string& text);
    std::string to_text() const;

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Runs all criteria. Timings are not part of the report; they are
/// returned through `timings` when given.
ValidationReport run_validation(const ValidationOptions& options, std::vector<CriterionResult>* timings = nullptr);

} // namespace radialkit
