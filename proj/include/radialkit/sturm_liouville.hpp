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

// Finite-volume discretization of the radial generators on [0, R] and their
// Dirichlet spectra.
//
// The generator L = d^2/dr^2 + (log rho)' d/dr is written in flux form
// (rho u')' / rho. Cells are [i h, (i+1) h]; the unknowns live at cell
// centres. The flux through r = 0 vanishes because rho(0) = 0. At r = R the
// boundary is either Dirichlet (u(R) = 0, imposed at the face) or closed
// (zero flux), the latter only for the compact models at the cut locus.

#include "radialkit/model.hpp"
#include "radialkit/tridiagonal.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace radialkit {

enum class BoundaryMode { dirichlet, closed };

std::string_view to_string(BoundaryMode mode);

struct Grid {
    ModelSpec spec;
    double R = 0.0;
    int n = 0;
    double h = 0.0;
    std::vector<double> centers;      // (i + 1/2) h
    std::vector<double> weights;      // mu(cell i)
    std::vector<double> face_density; // rho(i h), i = 0..n

    double total_mass() const;
};

/// Uniform cell-centred grid; cell weights by 4-point Gauss-Legendre
/// quadrature of the measure density. Requires 0 < R <= domain_max, n >= 16.
Grid build_grid(const ModelSpec& spec, double R, int n);

/// A = -W^{-1} K with K symmetric positive semidefinite tridiagonal and
/// W = diag(weights), so that A is self-adjoint in the weighted product.
struct DiscreteOperator {
    BoundaryMode mode = BoundaryMode::dirichlet;
    std::vector<double> weights;
    std::vector<double> stiffness_diag; // K_ii
    std::vector<double> stiffness_off;  // K_{i,i+1}

    std::size_t size() const { return weights.size(); }

    /// (A u)_i, the discrete generator applied to u.
    std::vector<double> apply(std::span<const double> u) const;

    /// W^{-1/2} K W^{-1/2}; its eigenvalues are those of -A.
    SymmetricTridiagonal symmetric_form() const;
};

/// Throws DomainError if `closed` is requested away from the cut locus of a
/// positively curved model.
DiscreteOperator discretize(const Grid& grid, BoundaryMode mode = BoundaryMode::dirichlet);

/// Interpolates cell-centred values at radius r in [0, R]: piecewise linear
/// between centres, even extension at r = 0, zero at R in Dirichlet mode and
/// constant extension in closed mode.
double interpolate_cell_values(const Grid& grid, std::span<const double> values, double r,
                               BoundaryMode mode);

struct HeatKernelValue {
    double value;
    bool tail_ok; // truncation bound e^{-(lambda_last - lambda_1) t} < 1e-14 met
};

class SpectralDecomposition {
public:
    SpectralDecomposition(Grid grid, BoundaryMode mode, std::vector<double> eigenvalues,
                          std::vector<std::vector<double>> eigenfunctions);

    const Grid& grid() const { return grid_; }
    const ModelSpec& spec() const { return grid_.spec; }
    BoundaryMode boundary_mode() const { return mode_; }
    std::size_t count() const { return eigenvalues_.size(); }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    /// Cell values of eigenfunction j, orthonormal in sum_i w_i f_i g_i.
    const std::vector<double>& eigenfunction(std::size_t j) const { return eigenfunctions_[j]; }

    double eigenfunction_at(std::size_t j, double r) const;

    /// Truncation bound check: e^{-(lambda_last - lambda_1) t} < 1e-14.
    bool tail_ok(double t) const;

    /// q(t, r1, r2) = sum_j e^{-lambda_j t} phi_j(r1) phi_j(r2).
    HeatKernelValue heat_kernel(double t, double r1, double r2) const;

    /// q(t, source, r_i) for every cell centre r_i.
    std::vector<double> heat_kernel_column(double t, double source) const;

    /// mu-mass of the kernel column below each face: entry i is
    /// int_0^{i h} q(t, source, r) dmu(r), i = 0..n.
    std::vector<double> kernel_face_cdf(double t, double source) const;

    /// Versioned JSON document (spec, R, n, boundary mode, eigenpairs).
    std::string to_json() const;
    static SpectralDecomposition from_json(const std::string& text);

private:
    Grid grid_;
    BoundaryMode mode_;
    std::vector<double> eigenvalues_;
    std::vector<std::vector<double>> eigenfunctions_;
};

/// Lowest `count` eigenpairs of -A, eigenvalues ascending (and clamped at 0),
/// eigenfunctions weighted-orthonormal with phi_j(r_0) > 0. Requires
/// 1 <= count <= n / 4.
SpectralDecomposition dirichlet_eigen(const ModelSpec& spec, double R, int n, int count,
                                      BoundaryMode mode = BoundaryMode::dirichlet);

/// Decomposition with every eigenvalue below lambda_1 + 33/t plus one more,
/// so that the kernel truncation bound holds at time t (capped at n / 4).
SpectralDecomposition dirichlet_eigen_for_time(const ModelSpec& spec, double R, int n, double t,
                                               BoundaryMode mode = BoundaryMode::dirichlet);

struct EigenEstimate {
    double value;          // Richardson extrapolation (4 fine - coarse) / 3
    double error_estimate; // |fine - coarse| / 3
    double coarse;         // resolution n
    double fine;           // resolution 2n
};

/// Richardson-extrapolated lowest `count` eigenvalues from resolutions
/// (n, 2n).
std::vector<EigenEstimate> richardson_eigenvalues(const ModelSpec& spec, double R, int count,
                                                  BoundaryMode mode = BoundaryMode::dirichlet,
                                                  int n = 4096);

/// lambda_1(m, k, R), the first Dirichlet eigenvalue of the comparison
/// operator on [0, R], with an error estimate.
EigenEstimate cheng_lambda1(const ModelSpec& spec, double R, int n = 4096);

} // namespace radialkit
