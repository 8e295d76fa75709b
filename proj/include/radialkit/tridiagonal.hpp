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

// Symmetric tridiagonal eigensolver (Sturm-sequence bisection followed by
// inverse iteration) and a tridiagonal linear solver.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace radialkit {

struct SymmetricTridiagonal {
    std::vector<double> diag; // size n
    std::vector<double> off;  // size n - 1

    std::size_t size() const { return diag.size(); }
};

/// Number of eigenvalues strictly below x.
std::size_t sturm_count(const SymmetricTridiagonal& matrix, double x);

/// Interval containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& matrix);

/// Eigenvalue number `index` (0-based, ascending) by bisection.
double bisect_eigenvalue(const SymmetricTridiagonal& matrix, std::size_t index);

struct TridiagonalEigenpairs {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors; // Euclidean-orthonormal
    double max_relative_residual = 0.0;       // max ||Sv - lv||_inf / ||S||
};

/// The `count` smallest eigenpairs. Each eigenvector is normalized with a
/// positive first nonzero component. Throws ConvergenceError when the
/// relative residual exceeds `residual_tolerance`.
TridiagonalEigenpairs lowest_eigenpairs(const SymmetricTridiagonal& matrix, std::size_t count,
                                        double residual_tolerance = 1e-10);

/// Tridiagonal solver without pivoting, for diagonally dominant systems.
/// Factorizes once; solve() may be called repeatedly.
class TridiagonalSolver {
public:
    TridiagonalSolver() = default;
    TridiagonalSolver(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper);

    /// Overwrites rhs with the solution.
    void solve(std::span<double> rhs) const;

    std::size_t size() const { return pivot_.size(); }

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<double> pivot_;
};

} // namespace radialkit
