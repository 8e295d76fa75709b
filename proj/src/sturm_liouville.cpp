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

#include "radialkit/sturm_liouville.hpp"

#include "radialkit/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace radialkit {

namespace {

constexpr int kDecompositionFormatVersion = 1;
constexpr char kDecompositionFormat[] = "radialkit.spectral_decomposition";

// 4-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 4> kGaussNodes = {-0.8611363115940526, -0.3399810435848563,
                                               0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGaussWeights = {0.3478548451374538, 0.6521451548625461,
                                                 0.6521451548625461, 0.3478548451374538};

// ln(1e14): kernel truncation threshold.
constexpr double kTailExponent = 32.236191301916641;

bool is_cut_locus(const ModelSpec& spec, double R) {
    if (!(spec.k > 0.0)) {
        return false;
    }
    const double rmax = domain_max(spec);
    return std::abs(R - rmax) <= 1e-6 * rmax;
}

BoundaryMode parse_mode(std::string_view text) {
    if (text == "dirichlet") {
        return BoundaryMode::dirichlet;
    }
    if (text == "closed") {
        return BoundaryMode::closed;
    }
    throw ConfigError("unknown boundary mode '" + std::string(text) + "'");
}

} // namespace

std::string_view to_string(BoundaryMode mode) {
    return mode == BoundaryMode::dirichlet ? "dirichlet" : "closed";
}

double Grid::total_mass() const {
    double s = 0.0;
    for (double w : weights) {
        s += w;
    }
    return s;
}

Grid build_grid(const ModelSpec& spec, double R, int n) {
    const ModelSpec checked = make_spec(spec.family, spec.m, spec.k);
    if (n < 16) {
        throw DomainError("grid needs at least 16 cells");
    }
    if (!(R > 0.0) || !std::isfinite(R)) {
        throw DomainError("grid radius must be positive and finite");
    }
    const double rmax = domain_max(checked);
    if (R > rmax) {
        if (R > rmax * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())) {
            throw DomainError("radius exceeds the cut locus pi/(2 sqrt k) of the model");
        }
        R = rmax;
    }

    Grid grid;
    grid.spec = checked;
    grid.R = R;
    grid.n = n;
    grid.h = R / n;
    grid.centers.resize(n);
    grid.weights.resize(n);
    grid.face_density.resize(n + 1);
    for (int i = 0; i < n; ++i) {
        const double a = i * grid.h;
        const double mid = a + 0.5 * grid.h;
        grid.centers[i] = mid;
        double w = 0.0;
        for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
            w += kGaussWeights[q] * measure_density(checked, mid + 0.5 * grid.h * kGaussNodes[q]);
        }
        grid.weights[i] = 0.5 * grid.h * w;
        grid.face_density[i] = measure_density(checked, a);
    }
    grid.face_density[n] = measure_density(checked, R);
    for (double w : grid.weights) {
        if (!(w > 0.0)) {
            throw NumericalError("non-positive cell weight; grid too coarse or radius degenerate");
        }
    }
    return grid;
}

std::vector<double> DiscreteOperator::apply(std::span<const double> u) const {
    const std::size_t n = size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ku = stiffness_diag[i] * u[i];
        if (i > 0) {
            ku += stiffness_off[i - 1] * u[i - 1];
        }
        if (i + 1 < n) {
            ku += stiffness_off[i] * u[i + 1];
        }
        out[i] = -ku / weights[i];
    }
    return out;
}

SymmetricTridiagonal DiscreteOperator::symmetric_form() const {
    const std::size_t n = size();
    SymmetricTridiagonal s;
    s.diag.resize(n);
    s.off.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        s.diag[i] = stiffness_diag[i] / weights[i];
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        s.off[i] = stiffness_off[i] / std::sqrt(weights[i] * weights[i + 1]);
    }
    return s;
}

DiscreteOperator discretize(const Grid& grid, BoundaryMode mode) {
    if (mode == BoundaryMode::closed && !is_cut_locus(grid.spec, grid.R)) {
        throw DomainError("closed boundary requires k > 0 and R = pi/(2 sqrt k)");
    }
    const int n = grid.n;
    const double h = grid.h;
    DiscreteOperator op;
    op.mode = mode;
    op.weights = grid.weights;
    op.stiffness_diag.assign(n, 0.0);
    op.stiffness_off.assign(n - 1, 0.0);
    for (int i = 0; i < n; ++i) {
        const double left = grid.face_density[i] / h;
        double right = grid.face_density[i + 1] / h;
        if (i == n - 1) {
            // u(R) = 0 sits half a cell from the last centre.
            right = mode == BoundaryMode::dirichlet ? 2.0 * right : 0.0;
        } else {
            op.stiffness_off[i] = -right;
        }
        op.stiffness_diag[i] = left + right;
    }
    return op;
}

double interpolate_cell_values(const Grid& grid, std::span<const double> values, double r,
                               BoundaryMode mode) {
    if (!(r >= 0.0) || r > grid.R * (1.0 + 1e-12)) {
        throw DomainError("interpolation radius outside [0, R]");
    }
    const int n = grid.n;
    const double x = r / grid.h - 0.5;
    if (x <= 0.0) {
        return values[0];
    }
    if (x >= n - 1) {
        const double last = values[n - 1];
        if (mode == BoundaryMode::closed) {
            return last;
        }
        const double frac = std::min((x - (n - 1)) * 2.0, 1.0);
        return last * (1.0 - frac);
    }
    const auto i = static_cast<int>(x);
    const double frac = x - i;
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

SpectralDecomposition::SpectralDecomposition(Grid grid, BoundaryMode mode, std::vector<double> eigenvalues,
                                             std::vector<std::vector<double>> eigenfunctions)
    : grid_(std::move(grid)), mode_(mode), eigenvalues_(std::move(eigenvalues)),
      eigenfunctions_(std::move(eigenfunctions)) {
    if (eigenvalues_.empty() || eigenvalues_.size() != eigenfunctions_.size()) {
        throw ConfigError("spectral decomposition: eigenvalue/eigenfunction count mismatch");
    }
    for (const auto& f : eigenfunctions_) {
        if (f.size() != static_cast<std::size_t>(grid_.n)) {
            throw ConfigError("spectral decomposition: eigenfunction length differs from grid");
        }
    }
}

double SpectralDecomposition::eigenfunction_at(std::size_t j, double r) const {
    return interpolate_cell_values(grid_, eigenfunctions_.at(j), r, mode_);
}

bool SpectralDecomposition::tail_ok(double t) const {
    return (eigenvalues_.back() - eigenvalues_.front()) * t > kTailExponent;
}

HeatKernelValue SpectralDecomposition::heat_kernel(double t, double r1, double r2) const {
    if (!(t > 0.0)) {
        throw DomainError("heat kernel requires t > 0");
    }
    // Factor out e^{-lambda_1 t} so long times do not underflow term by term.
    const double l1 = eigenvalues_.front();
    double sum = 0.0;
    for (std::size_t j = 0; j < count(); ++j) {
        sum += std::exp(-(eigenvalues_[j] - l1) * t) * eigenfunction_at(j, r1) * eigenfunction_at(j, r2);
    }
    return {std::exp(-l1 * t) * sum, tail_ok(t)};
}

std::vector<double> SpectralDecomposition::heat_kernel_column(double t, double source) const {
    if (!(t > 0.0)) {
        throw DomainError("heat kernel requires t > 0");
    }
    std::vector<double> column(grid_.n, 0.0);
    for (std::size_t j = 0; j < count(); ++j) {
        const double coef = std::exp(-eigenvalues_[j] * t) * eigenfunction_at(j, source);
        const auto& f = eigenfunctions_[j];
        for (int i = 0; i < grid_.n; ++i) {
            column[i] += coef * f[i];
        }
    }
    return column;
}

std::vector<double> SpectralDecomposition::kernel_face_cdf(double t, double source) const {
    const auto column = heat_kernel_column(t, source);
    std::vector<double> cdf(grid_.n + 1, 0.0);
    for (int i = 0; i < grid_.n; ++i) {
        cdf[i + 1] = cdf[i] + grid_.weights[i] * column[i];
    }
    return cdf;
}

std::string SpectralDecomposition::to_json() const {
    nlohmann::ordered_json doc;
    doc["format"] = kDecompositionFormat;
    doc["version"] = kDecompositionFormatVersion;
    doc["spec"] = {{"family", std::string(radialkit::to_string(grid_.spec.family))},
                   {"m", grid_.spec.m},
                   {"k", grid_.spec.k}};
    doc["R"] = grid_.R;
    doc["n"] = grid_.n;
    doc["boundary_mode"] = std::string(radialkit::to_string(mode_));
    doc["eigenvalues"] = eigenvalues_;
    doc["eigenfunctions"] = eigenfunctions_;
    return doc.dump();
}

SpectralDecomposition SpectralDecomposition::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
        if (doc.at("format").get<std::string>() != kDecompositionFormat) {
            throw ConfigError("not a spectral decomposition document");
        }
        if (doc.at("version").get<int>() != kDecompositionFormatVersion) {
            throw ConfigError("unsupported spectral decomposition version");
        }
        const auto& s = doc.at("spec");
        const ModelSpec spec = make_spec(parse_family(s.at("family").get<std::string>()),
                                         s.at("m").get<int>(), s.at("k").get<double>());
        Grid grid = build_grid(spec, doc.at("R").get<double>(), doc.at("n").get<int>());
        return SpectralDecomposition(std::move(grid), parse_mode(doc.at("boundary_mode").get<std::string>()),
                                     doc.at("eigenvalues").get<std::vector<double>>(),
                                     doc.at("eigenfunctions").get<std::vector<std::vector<double>>>());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed spectral decomposition: ") + e.what());
    }
}

namespace {

SpectralDecomposition decompose(Grid grid, BoundaryMode mode, const DiscreteOperator& op,
                                const SymmetricTridiagonal& s, std::size_t count) {
    auto pairs = lowest_eigenpairs(s, count);
    std::vector<std::vector<double>> functions;
    functions.reserve(count);
    for (auto& v : pairs.vectors) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] /= std::sqrt(op.weights[i]);
        }
        functions.push_back(std::move(v));
    }
    for (double& l : pairs.values) {
        l = std::max(l, 0.0);
    }
    return SpectralDecomposition(std::move(grid), mode, std::move(pairs.values), std::move(functions));
}

} // namespace

SpectralDecomposition dirichlet_eigen(const ModelSpec& spec, double R, int n, int count, BoundaryMode mode) {
    if (count < 1 || count > n / 4) {
        throw DomainError("eigenpair count must lie in [1, n/4]");
    }
    Grid grid = build_grid(spec, R, n);
    const DiscreteOperator op = discretize(grid, mode);
    const SymmetricTridiagonal s = op.symmetric_form();
    return decompose(std::move(grid), mode, op, s, static_cast<std::size_t>(count));
}

SpectralDecomposition dirichlet_eigen_for_time(const ModelSpec& spec, double R, int n, double t,
                                               BoundaryMode mode) {
    if (!(t > 0.0)) {
        throw DomainError("time must be positive");
    }
    Grid grid = build_grid(spec, R, n);
    const DiscreteOperator op = discretize(grid, mode);
    const SymmetricTridiagonal s = op.symmetric_form();
    const double l1 = bisect_eigenvalue(s, 0);
    std::size_t count = sturm_count(s, l1 + 33.0 / t) + 1;
    count = std::clamp<std::size_t>(count, 2, static_cast<std::size_t>(n / 4));
    return decompose(std::move(grid), mode, op, s, count);
}

std::vector<EigenEstimate> richardson_eigenvalues(const ModelSpec& spec, double R, int count,
                                                  BoundaryMode mode, int n) {
    const auto coarse = dirichlet_eigen(spec, R, n, count, mode);
    const auto fine = dirichlet_eigen(spec, R, 2 * n, count, mode);
    std::vector<EigenEstimate> out;
    out.reserve(count);
    for (int j = 0; j < count; ++j) {
        const double a = coarse.eigenvalues()[j];
        const double b = fine.eigenvalues()[j];
        out.push_back({(4.0 * b - a) / 3.0, std::abs(b - a) / 3.0, a, b});
    }
    return out;
}

EigenEstimate cheng_lambda1(const ModelSpec& spec, double R, int n) {
    return richardson_eigenvalues(spec, R, 1, BoundaryMode::dirichlet, n).front();
}

} // namespace radialkit
