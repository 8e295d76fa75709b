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

#include "radialkit/error.hpp"

#include <algorithm>
#include <cmath>

namespace radialkit {

namespace {

// Limiting Kolmogorov distribution: P(sqrt(n) D_n > c) = alpha.
double kolmogorov_quantile(double alpha) {
    if (alpha == 0.01) {
        return 1.6276;
    }
    if (alpha == 0.05) {
        return 1.3581;
    }
    throw ConfigError("KS critical values are tabulated for alpha = 0.01 and 0.05 only");
}

} // namespace

TabulatedCdf::TabulatedCdf(std::vector<double> x, std::vector<double> values)
    : x_(std::move(x)), values_(std::move(values)) {
    if (x_.size() < 2 || x_.size() != values_.size()) {
        throw ConfigError("tabulated CDF needs at least two matching abscissae and values");
    }
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if (!(x_[i] > x_[i - 1])) {
            throw ConfigError("tabulated CDF abscissae must increase");
        }
    }
}

double TabulatedCdf::operator()(double x) const {
    if (x <= x_.front()) {
        return x == x_.front() ? values_.front() : 0.0;
    }
    if (x >= x_.back()) {
        return values_.back();
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const auto i = static_cast<std::size_t>(it - x_.begin());
    const double f = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return values_[i - 1] + f * (values_[i] - values_[i - 1]);
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw ConfigError("KS statistic needs at least one sample");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw ConfigError("KS statistic needs non-empty samples");
    }
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) {
            ++i;
        }
        while (j < y.size() && y[j] <= v) {
            ++j;
        }
        d = std::max(d, std::abs(i / nx - j / ny));
    }
    return d;
}

double ks_critical_value(double alpha, std::size_t n) {
    if (n == 0) {
        throw ConfigError("KS critical value needs n >= 1");
    }
    return kolmogorov_quantile(alpha) / std::sqrt(static_cast<double>(n));
}

double ks_critical_value_two_sample(double alpha, std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) {
        throw ConfigError("KS critical value needs non-empty samples");
    }
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    return kolmogorov_quantile(alpha) * std::sqrt((nn + mm) / (nn * mm));
}

} // namespace radialkit
