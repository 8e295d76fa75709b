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

#include "radialkit/model.hpp"

#include "radialkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace radialkit {

namespace {

constexpr double pi = std::numbers::pi;

std::string describe(const ModelSpec& spec) {
    std::ostringstream os;
    os << to_string(spec.family) << "(m=" << spec.m << ", k=" << spec.k << ")";
    return os.str();
}

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

// sin(sqrt(k) r)/sqrt(k), r, or sinh(sqrt|k| r)/sqrt|k|. Written this way the
// k -> 0 limit is continuous and no power of k appears in the prefactors.
double generalized_sine(double k, double r) {
    if (k > 0.0) {
        const double s = std::sqrt(k);
        return std::sin(s * r) / s;
    }
    if (k < 0.0) {
        const double s = std::sqrt(-k);
        return std::sinh(s * r) / s;
    }
    return r;
}

void check_k_finite(double k) {
    if (!std::isfinite(k)) {
        throw DomainError("curvature parameter must be finite");
    }
}

} // namespace

std::string_view to_string(ModelFamily family) {
    return family == ModelFamily::kahler ? "kahler" : "quaternion";
}

ModelFamily parse_family(std::string_view text) {
    if (text == "kahler" || text == "kaehler" || text == "complex") {
        return ModelFamily::kahler;
    }
    if (text == "quaternion" || text == "quaternion_kahler" || text == "quaternion-kahler" ||
        text == "quaternionic") {
        return ModelFamily::quaternion_kahler;
    }
    throw ConfigError("unknown model family '" + std::string(text) + "'");
}

ModelSpec make_spec(ModelFamily family, int m, double k) {
    if (m < 1) {
        throw DomainError("dimension m must be >= 1");
    }
    check_k_finite(k);
    return ModelSpec{family, m, k};
}

int real_dimension(const ModelSpec& spec) {
    return spec.family == ModelFamily::kahler ? 2 * spec.m : 4 * spec.m;
}

double domain_max(const ModelSpec& spec) {
    if (spec.k > 0.0) {
        return pi / (2.0 * std::sqrt(spec.k));
    }
    return std::numeric_limits<double>::infinity();
}

double comparison_F(double k, double r) {
    check_k_finite(k);
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("comparison function requires r > 0");
    }
    if (k > 0.0 && r >= pi / std::sqrt(k)) {
        throw DomainError("comparison function requires r < pi/sqrt(k) for k > 0");
    }
    if (k == 0.0) {
        return 1.0 / r;
    }
    const double x2 = k * r * r;
    const double near_zero = 1e-4 / std::sqrt(std::max(std::abs(k), 1.0));
    if (std::abs(x2) < 1e-12 || r < near_zero) {
        return 1.0 / r - k * r / 3.0 - k * k * r * r * r / 45.0;
    }
    if (k > 0.0) {
        const double s = std::sqrt(k);
        return s / std::tan(s * r);
    }
    const double s = std::sqrt(-k);
    return s / std::tanh(s * r);
}

namespace detail {

double regular_F_unchecked(double k, double r) {
    if (k == 0.0) {
        return 0.0;
    }
    const double x2 = k * r * r;
    if (std::abs(x2) < 1e-2) {
        // x cot x - 1 = -x^2/3 - x^4/45 - 2x^6/945 - x^8/4725 - 2x^10/93555 - ...
        const double series =
            1.0 / 3.0 +
            x2 * (1.0 / 45.0 +
                  x2 * (2.0 / 945.0 +
                        x2 * (1.0 / 4725.0 + x2 * (2.0 / 93555.0 + x2 * (1382.0 / 638512875.0)))));
        return -k * r * series;
    }
    if (k > 0.0) {
        const double s = std::sqrt(k);
        return s / std::tan(s * r) - 1.0 / r;
    }
    const double s = std::sqrt(-k);
    return s / std::tanh(s * r) - 1.0 / r;
}

double regular_drift_unchecked(const ModelSpec& spec, double r) {
    if (spec.family == ModelFamily::kahler) {
        return (2.0 * spec.m - 2.0) * regular_F_unchecked(spec.k, r) +
               2.0 * regular_F_unchecked(spec.k, 2.0 * r);
    }
    return (4.0 * spec.m - 4.0) * regular_F_unchecked(spec.k, r) +
           6.0 * regular_F_unchecked(spec.k, 2.0 * r);
}

} // namespace detail

double comparison_F_regular(double k, double r) {
    check_k_finite(k);
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw DomainError("regular comparison function requires r >= 0");
    }
    if (k > 0.0 && r >= pi / std::sqrt(k)) {
        throw DomainError("regular comparison function requires r < pi/sqrt(k) for k > 0");
    }
    return detail::regular_F_unchecked(k, r);
}

double radial_drift(const ModelSpec& spec, double r) {
    if (!(r > 0.0) || !(r < domain_max(spec))) {
        throw DomainError("radial drift of " + describe(spec) + " requires 0 < r < domain_max");
    }
    if (spec.family == ModelFamily::kahler) {
        return (2.0 * spec.m - 2.0) * comparison_F(spec.k, r) + 2.0 * comparison_F(spec.k, 2.0 * r);
    }
    return (4.0 * spec.m - 4.0) * comparison_F(spec.k, r) + 6.0 * comparison_F(spec.k, 2.0 * r);
}

double singular_drift_coefficient(const ModelSpec& spec) {
    return static_cast<double>(real_dimension(spec) - 1);
}

double regular_drift(const ModelSpec& spec, double r) {
    if (!(r >= 0.0) || !(r < domain_max(spec))) {
        throw DomainError("regular drift of " + describe(spec) + " requires 0 <= r < domain_max");
    }
    return detail::regular_drift_unchecked(spec, r);
}

double measure_density(const ModelSpec& spec, double r) {
    if (!(r >= 0.0) || !(r <= domain_max(spec))) {
        throw DomainError("measure density of " + describe(spec) + " requires 0 <= r <= domain_max");
    }
    const int m = spec.m;
    const double s1 = generalized_sine(spec.k, r);
    const double s2 = generalized_sine(spec.k, 2.0 * r);
    double value = 0.0;
    if (spec.family == ModelFamily::kahler) {
        value = std::pow(pi, m) / factorial(m - 1) * std::pow(s1, 2 * m - 2) * s2;
    } else {
        value = std::pow(pi, 2 * m) / (4.0 * factorial(2 * m - 1)) * std::pow(s1, 4 * m - 4) * s2 * s2 *
                s2;
    }
    // sin(2 sqrt(k) r) rounds to a tiny negative number at the cut locus.
    return std::max(value, 0.0);
}

double small_ball_volume(ModelFamily family, int m, double s) {
    if (family == ModelFamily::kahler) {
        return std::pow(pi, m) / factorial(m) * std::pow(s, 2 * m);
    }
    return std::pow(pi, 2 * m) / factorial(2 * m) * std::pow(s, 4 * m);
}

double compact_model_volume(ModelFamily family, int m) {
    if (m < 1) {
        throw DomainError("dimension m must be >= 1");
    }
    if (family == ModelFamily::kahler) {
        return std::pow(pi, m) / factorial(m);
    }
    return std::pow(pi, 2 * m) / factorial(2 * m + 1);
}

double model_spectrum(ModelFamily family, int m, int level) {
    if (m < 1) {
        throw DomainError("dimension m must be >= 1");
    }
    if (level < 0) {
        throw DomainError("spectrum level must be >= 0");
    }
    const double l = level;
    if (family == ModelFamily::kahler) {
        return 4.0 * l * (l + m);
    }
    return 4.0 * l * (l + 2.0 * m + 1.0);
}

CurvatureConstants curvature_constants(const ModelSpec& spec) {
    if (spec.k != -1.0 && spec.k != 0.0 && spec.k != 1.0) {
        throw DomainError("curvature constants are tabulated for k in {-1, 0, 1} only");
    }
    // + 0.0 turns a signed zero into +0.
    if (spec.family == ModelFamily::kahler) {
        return {4.0 * spec.k + 0.0, (2.0 * spec.m - 2.0) * spec.k + 0.0};
    }
    return {12.0 * spec.k + 0.0, (4.0 * spec.m - 4.0) * spec.k + 0.0};
}

Rescaling rescale(const ModelSpec& spec) {
    if (spec.k == 0.0) {
        throw DomainError("flat models have no curvature scale");
    }
    check_k_finite(spec.k);
    return {ModelSpec{spec.family, spec.m, spec.k > 0.0 ? 1.0 : -1.0}, std::sqrt(std::abs(spec.k))};
}

RadialLaw::RadialLaw(const ModelSpec& spec)
    : spec_(make_spec(spec.family, spec.m, spec.k)), domain_max_(radialkit::domain_max(spec)) {}

} // namespace radialkit
