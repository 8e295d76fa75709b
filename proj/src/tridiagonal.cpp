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

#include "radialkit/tridiagonal.hpp"

#include "radialkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace radialkit {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

double pivot_floor(const SymmetricTridiagonal& matrix) {
    double max_off2 = 1.0;
    for (double e : matrix.off) {
        max_off2 = std::max(max_off2, e * e);
    }
    return std::numeric_limits<double>::min() * max_off2;
}

double norm_bound(const SymmetricTridiagonal& matrix) {
    const auto [lo, hi] = gershgorin_bounds(matrix);
    return std::max(std::abs(lo), std::abs(hi));
}

// Gaussian elimination with partial pivoting of S - shift I. U has two
// superdiagonals; multiplier[i] and swapped[i] record step i.
class PivotedFactorization {
public:
    PivotedFactorization(const SymmetricTridiagonal& matrix, double shift, double tiny) {
        const std::size_t n = matrix.size();
        u0_.assign(n, 0.0);
        u1_.assign(n, 0.0);
        u2_.assign(n, 0.0);
        multiplier_.assign(n, 0.0);
        swapped_.assign(n, 0);

        // Active row i holds (d, e) in columns (i, i+1).
        double d = matrix.diag[0] - shift;
        double e = n > 1 ? matrix.off[0] : 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double sub = matrix.off[i];
            const double next_diag = matrix.diag[i + 1] - shift;
            const double next_super = i + 2 < n ? matrix.off[i + 1] : 0.0;
            if (std::abs(sub) > std::abs(d)) {
                swapped_[i] = 1;
                const double mult = d / sub;
                u0_[i] = sub;
                u1_[i] = next_diag;
                u2_[i] = next_super;
                multiplier_[i] = mult;
                d = e - mult * next_diag;
                e = -mult * next_super;
            } else {
                if (d == 0.0) {
                    d = tiny;
                }
                const double mult = sub / d;
                u0_[i] = d;
                u1_[i] = e;
                u2_[i] = 0.0;
                multiplier_[i] = mult;
                d = next_diag - mult * e;
                e = next_super;
            }
        }
        u0_[n - 1] = d == 0.0 ? tiny : d;
        for (double& p : u0_) {
            if (std::abs(p) < tiny) {
                p = std::copysign(tiny, p);
            }
        }
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = b.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped_[i]) {
                std::swap(b[i], b[i + 1]);
            }
            b[i + 1] -= multiplier_[i] * b[i];
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double v = b[ii];
            if (ii + 1 < n) {
                v -= u1_[ii] * b[ii + 1];
            }
            if (ii + 2 < n) {
                v -= u2_[ii] * b[ii + 2];
            }
            b[ii] = v / u0_[ii];
        }
    }

private:
    std::vector<double> u0_, u1_, u2_, multiplier_;
    std::vector<std::uint8_t> swapped_;
};

double euclidean_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

void scale(std::vector<double>& v, double factor) {
    for (double& x : v) {
        x *= factor;
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) {
            const double c = dot(v, q);
            for (std::size_t i = 0; i < v.size(); ++i) {
                v[i] -= c * q[i];
            }
        }
    }
}

double residual_inf(const SymmetricTridiagonal& s, double lambda, const std::vector<double>& v) {
    const std::size_t n = s.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = (s.diag[i] - lambda) * v[i];
        if (i > 0) {
            r += s.off[i - 1] * v[i - 1];
        }
        if (i + 1 < n) {
            r += s.off[i] * v[i + 1];
        }
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

std::vector<double> starting_vector(std::size_t n, std::size_t index) {
    // Deterministic, non-degenerate start (a small LCG).
    std::vector<double> v(n);
    std::uint64_t state = 0x9E3779B97F4A7C15ull ^ (index * 0xBF58476D1CE4E5B9ull);
    for (auto& x : v) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        x = 0.5 + static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    return v;
}

} // namespace

std::size_t sturm_count(const SymmetricTridiagonal& matrix, double x) {
    const std::size_t n = matrix.size();
    const double floor = pivot_floor(matrix);
    std::size_t count = 0;
    double q = matrix.diag[0] - x;
    for (std::size_t i = 0;; ++i) {
        if (std::abs(q) < floor) {
            q = -floor;
        }
        if (q < 0.0) {
            ++count;
        }
        if (i + 1 == n) {
            break;
        }
        q = matrix.diag[i + 1] - x - matrix.off[i] * matrix.off[i] / q;
    }
    return count;
}

std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& matrix) {
    const std::size_t n = matrix.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) {
            radius += std::abs(matrix.off[i - 1]);
        }
        if (i + 1 < n) {
            radius += std::abs(matrix.off[i]);
        }
        lo = std::min(lo, matrix.diag[i] - radius);
        hi = std::max(hi, matrix.diag[i] + radius);
    }
    return {lo, hi};
}

double bisect_eigenvalue(const SymmetricTridiagonal& matrix, std::size_t index) {
    if (index >= matrix.size()) {
        throw DomainError("eigenvalue index out of range");
    }
    auto [lo, hi] = gershgorin_bounds(matrix);
    const double abs_tol = 2.0 * eps * std::max(std::abs(lo), std::abs(hi));
    lo -= abs_tol;
    hi += abs_tol;
    for (int iter = 0; iter < 256; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) {
            break;
        }
        if (hi - lo <= std::max(abs_tol * 1e-3, 2.0 * eps * std::max(std::abs(lo), std::abs(hi)))) {
            break;
        }
        if (sturm_count(matrix, mid) > index) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

TridiagonalEigenpairs lowest_eigenpairs(const SymmetricTridiagonal& matrix, std::size_t count,
                                        double residual_tolerance) {
    const std::size_t n = matrix.size();
    if (n == 0 || count == 0 || count > n) {
        throw DomainError("invalid eigenpair count");
    }
    const double norm = std::max(norm_bound(matrix), std::numeric_limits<double>::min());
    const double tiny = eps * norm;

    TridiagonalEigenpairs result;
    result.values.reserve(count);
    result.vectors.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double lambda = bisect_eigenvalue(matrix, j);
        PivotedFactorization lu(matrix, lambda, tiny);
        std::vector<double> v = starting_vector(n, j);
        double residual = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 12; ++iter) {
            lu.solve(v);
            orthogonalize(v, result.vectors);
            const double nv = euclidean_norm(v);
            if (!(nv > 0.0) || !std::isfinite(nv)) {
                v = starting_vector(n, j + 7919 * (iter + 1));
                continue;
            }
            scale(v, 1.0 / nv);
            residual = residual_inf(matrix, lambda, v) / norm;
            if (iter >= 1 && residual <= residual_tolerance * 1e-2) {
                break;
            }
        }
        if (!(residual <= residual_tolerance)) {
            std::ostringstream os;
            os << "inverse iteration for eigenvalue " << j << " stalled: relative residual " << residual;
            throw ConvergenceError(os.str());
        }
        const double peak = std::abs(v[std::distance(
            v.begin(), std::max_element(v.begin(), v.end(), [](double a, double b) {
                return std::abs(a) < std::abs(b);
            }))]);
        for (double x : v) {
            if (std::abs(x) > 1e-8 * peak) {
                if (x < 0.0) {
                    scale(v, -1.0);
                }
                break;
            }
        }
        result.max_relative_residual = std::max(result.max_relative_residual, residual);
        result.values.push_back(lambda);
        result.vectors.push_back(std::move(v));
    }
    return result;
}

TridiagonalSolver::TridiagonalSolver(std::vector<double> lower, std::vector<double> diag,
                                     std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)), pivot_(std::move(diag)) {
    const std::size_t n = pivot_.size();
    if (n == 0 || lower_.size() + 1 != n || upper_.size() + 1 != n) {
        throw ConfigError("tridiagonal solver: inconsistent band sizes");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (pivot_[i - 1] == 0.0) {
            throw NumericalError("tridiagonal solver: zero pivot");
        }
        lower_[i - 1] /= pivot_[i - 1];
        pivot_[i] -= lower_[i - 1] * upper_[i - 1];
    }
    if (pivot_[n - 1] == 0.0) {
        throw NumericalError("tridiagonal solver: zero pivot");
    }
}

void TridiagonalSolver::solve(std::span<double> rhs) const {
    const std::size_t n = pivot_.size();
    for (std::size_t i = 1; i < n; ++i) {
        rhs[i] -= lower_[i - 1] * rhs[i - 1];
    }
    rhs[n - 1] /= pivot_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] = (rhs[i] - upper_[i] * rhs[i + 1]) / pivot_[i];
    }
}

} // namespace radialkit
