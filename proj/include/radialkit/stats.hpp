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

// Kolmogorov-Smirnov statistics and piecewise-linear CDFs.

#include <functional>
#include <span>
#include <vector>

namespace radialkit {

/// CDF given by values at increasing abscissae, linear in between, 0 to the
/// left and the last value to the right.
class TabulatedCdf {
public:
    TabulatedCdf(std::vector<double> x, std::vector<double> values);

    double operator()(double x) const;
    double total() const { return values_.back(); }

private:
    std::vector<double> x_;
    std::vector<double> values_;
};

/// sup_x |F_n(x) - F(x)| for the empirical CDF F_n of `samples` and a
/// continuous CDF F.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample statistic sup_x |F_n(x) - G_m(x)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic critical value of the one-sample statistic at level alpha
/// (0.01 or 0.05).
double ks_critical_value(double alpha, std::size_t n);

/// Asymptotic critical value of the two-sample statistic.
double ks_critical_value_two_sample(double alpha, std::size_t n, std::size_t m);

} // namespace radialkit
