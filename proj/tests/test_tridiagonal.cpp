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
#include "radialkit/tridiagonal.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace radialkit;

namespace {

// tridiag(-1, 2, -1) of size n: eigenvalues 2 - 2 cos(j pi / (n + 1)).
SymmetricTridiagonal laplacian(std::size_t n) {
    return {std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
}

double exact_laplacian_eigenvalue(std::size_t n, std::size_t j) {
    return 2.0 - 2.0 * std::cos(static_cast<double>(j + 1) * std::numbers::pi / static_cast<double>(n + 1));
}

} // namespace

TEST_CASE("Sturm count brackets the discrete Laplacian spectrum") {
    const auto a = laplacian(50);
    CHECK(sturm_count(a, -0.1) == 0);
    CHECK(sturm_count(a, 4.1) == 50);
    CHECK(sturm_count(a, 0.5 * (exact_laplacian_eigenvalue(50, 2) + exact_laplacian_eigenvalue(50, 3))) == 3);
    const auto [lo, hi] = gershgorin_bounds(a);
    CHECK(lo <= 0.0);
    CHECK(hi >= 4.0);
}

TEST_CASE("bisection finds individual eigenvalues") {
    const auto a = laplacian(200);
    for (std::size_t j : {0u, 1u, 7u, 199u}) {
        CHECK(bisect_eigenvalue(a, j) == doctest::Approx(exact_laplacian_eigenvalue(200, j)).epsilon(1e-12));
    }
}

TEST_CASE("lowest eigenpairs are accurate, orthonormal and sign-normalized") {
    const std::size_t n = 400;
    const auto a = laplacian(n);
    const auto pairs = lowest_eigenpairs(a, 6);
    REQUIRE(pairs.values.size() == 6);
    CHECK(pairs.max_relative_residual <= 1e-10);
    for (std::size_t j = 0; j < 6; ++j) {
        CHECK(pairs.values[j] == doctest::Approx(exact_laplacian_eigenvalue(n, j)).epsilon(1e-10));
        CHECK(pairs.vectors[j][0] > 0.0);
        // Exact eigenvector: sin((j + 1) (i + 1) pi / (n + 1)), normalized.
        const double scale = std::sqrt(2.0 / (n + 1));
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = scale * std::sin((j + 1.0) * (i + 1.0) * std::numbers::pi / (n + 1.0));
            err = std::max(err, std::abs(std::abs(v) - std::abs(pairs.vectors[j][i])));
        }
        CHECK(err < 1e-8);
        for (std::size_t l = 0; l <= j; ++l) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                dot += pairs.vectors[j][i] * pairs.vectors[l][i];
            }
            CHECK(dot == doctest::Approx(j == l ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("eigenpairs of a strongly graded matrix") {
    // Entries spanning many orders of magnitude, as in the weighted
    // radial operators.
    const std::size_t n = 64;
    SymmetricTridiagonal a{std::vector<double>(n), std::vector<double>(n - 1)};
    for (std::size_t i = 0; i < n; ++i) {
        a.diag[i] = std::pow(1.3, static_cast<double>(i));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        a.off[i] = -0.4 * std::pow(1.3, i + 0.5);
    }
    const auto pairs = lowest_eigenpairs(a, 3);
    CHECK(pairs.max_relative_residual <= 1e-10);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(pairs.values[j] == doctest::Approx(bisect_eigenvalue(a, j)).epsilon(1e-12));
    }
}

TEST_CASE("tridiagonal solver inverts a diagonally dominant system") {
    const std::size_t n = 100;
    std::vector<double> lower(n - 1, -1.0), diag(n, 4.0), upper(n - 1, -1.5);
    TridiagonalSolver solver(lower, diag, upper);
    std::vector<double> x(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::sin(0.1 * i) + 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = diag[i] * x[i] + (i > 0 ? lower[i - 1] * x[i - 1] : 0.0) + (i + 1 < n ? upper[i] * x[i + 1] : 0.0);
    }
    solver.solve(b);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-13));
    }
}

TEST_CASE("requests beyond the matrix size are rejected") {
    const auto a = laplacian(10);
    CHECK_THROWS(lowest_eigenpairs(a, 11));
    CHECK_THROWS(bisect_eigenvalue(a, 10));
}
