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

#include "radialkit/validation.hpp"

#include "radialkit/ambient.hpp"
#include "radialkit/error.hpp"
#include "radialkit/pde.hpp"
#include "radialkit/radial_sde.hpp"
#include "radialkit/stats.hpp"
#include "radialkit/sturm_liouville.hpp"
#include "radialkit/version.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace radialkit {

namespace {

using std::numbers::pi;

constexpr ModelFamily kFamilies[] = {ModelFamily::kahler, ModelFamily::quaternion_kahler};
constexpr double kCurvatures[] = {-1.0, 0.0, 1.0};

struct LevelParams {
    int eig_n;
    int fd_n;
    double fd_dt;
    std::int64_t sde_paths;
    double sde_dt;
    int pde_n;
    std::int64_t ambient_paths;
    double ambient_dt;
    double spectra_tol;
    double higher_levels_tol;
    double bessel_tol;
    double rescale_tol;
    double kernel_tol;
};

// Quick runs use coarser grids and 5x fewer paths; only the eigenvalue
// tolerances are loosened, since MC tolerances scale with the paths.
LevelParams params_for(ValidationLevel level) {
    if (level == ValidationLevel::full) {
        return {4096, 2048, 1e-4, 100000, 1e-4, 2048, 100000, 5e-4, 1e-4, 5e-4, 1e-5, 1e-6, 1e-3};
    }
    return {1024, 1024, 2e-4, 20000, 2e-4, 1024, 20000, 1e-3, 1e-3, 2e-3, 1e-4, 1e-5, 2e-3};
}

const double kTimeLimits[kCriterionCount] = {30, 30, 5, 10, 1, 120, 180, 240, 300, 1};

std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

std::string label(ModelFamily family, int m, double k) {
    return fmt("%s m=%d k=%g", family == ModelFamily::kahler ? "kahler" : "quaternion", m, k);
}

Check make_check(int criterion, std::string name, std::string target, double error, double tolerance) {
    return {criterion, std::move(name), std::move(target), error, tolerance, error <= tolerance};
}

double relative(double value, double target) { return std::abs(value - target) / std::abs(target); }

DensityFunction density_or_default(const ValidationOptions& options) {
    if (options.density) {
        return options.density;
    }
    return [](const ModelSpec& spec, double r) { return measure_density(spec, r); };
}

// Criteria 1 and 2: closed-mode spectra of CP^m and HP^m.
void compact_spectra(std::vector<Check>& out, const LevelParams& p, int criterion) {
    struct Case {
        ModelFamily family;
        int m;
    };
    const Case cases[] = {{ModelFamily::kahler, 1},
                          {ModelFamily::kahler, 2},
                          {ModelFamily::kahler, 3},
                          {ModelFamily::quaternion_kahler, 1},
                          {ModelFamily::quaternion_kahler, 2}};
    for (const Case& c : cases) {
        const ModelSpec spec = make_spec(c.family, c.m, 1.0);
        const auto levels = richardson_eigenvalues(spec, domain_max(spec), 4, BoundaryMode::closed, p.eig_n);
        const int first = criterion == 1 ? 1 : 2;
        const int last = criterion == 1 ? 1 : 3;
        for (int l = first; l <= last; ++l) {
            const double exact = model_spectrum(c.family, c.m, l);
            out.push_back(make_check(criterion, fmt("%s level %d", label(c.family, c.m, 1.0).c_str(), l),
                                     fmt("closed-form eigenvalue %g, relative error", exact),
                                     relative(levels[l].value, exact),
                                     criterion == 1 ? p.spectra_tol : p.higher_levels_tol));
        }
    }
}

void flat_bessel(std::vector<Check>& out, const LevelParams& p) {
    const double j01 = boost::math::cyl_bessel_j_zero(0.0, 1);
    const ModelSpec spec = make_spec(ModelFamily::kahler, 1, 0.0);
    const EigenEstimate lambda = cheng_lambda1(spec, 1.0, p.eig_n);
    out.push_back(make_check(3, "kahler m=1 k=0 R=1 lambda_1", fmt("j_{0,1}^2 = %.15g, relative error", j01 * j01),
                             relative(lambda.value, j01 * j01), p.bessel_tol));
}

void rescaling(std::vector<Check>& out, const LevelParams& p) {
    struct Case {
        int m;
        double k;
        double R;
    };
    const Case cases[] = {{2, 4.0, 0.3}, {2, -9.0, 0.4}, {1, 0.25, 1.0}};
    for (ModelFamily family : kFamilies) {
        for (const Case& c : cases) {
            const double unit_k = c.k > 0.0 ? 1.0 : -1.0;
            const double scaled = cheng_lambda1(make_spec(family, c.m, c.k), c.R, p.eig_n).value;
            const double unit =
                cheng_lambda1(make_spec(family, c.m, unit_k), std::sqrt(std::abs(c.k)) * c.R, p.eig_n).value;
            out.push_back(make_check(4, fmt("%s R=%g", label(family, c.m, c.k).c_str(), c.R),
                                     "|k| lambda_1(m, sign k, sqrt|k| R), relative error",
                                     relative(scaled, std::abs(c.k) * unit), p.rescale_tol));
        }
    }
}

// 8th-order central difference of log(density) with step proportional to r.
double log_density_derivative(const DensityFunction& density, const ModelSpec& spec, double r) {
    constexpr double c[] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    const double h = 0.01 * r;
    double d = 0.0;
    for (int j = 1; j <= 4; ++j) {
        d += c[j - 1] * (std::log(density(spec, r + j * h)) - std::log(density(spec, r - j * h)));
    }
    return d / h;
}

void drift_duality(std::vector<Check>& out, const ValidationOptions& options) {
    const DensityFunction density = density_or_default(options);
    constexpr double R = 1.0;
    for (ModelFamily family : kFamilies) {
        for (double k : kCurvatures) {
            double worst = 0.0;
            for (int m = 1; m <= 3; ++m) {
                const ModelSpec spec = make_spec(family, m, k);
                for (int i = 0; i <= 180; ++i) {
                    const double r = R * (0.05 + 0.9 * i / 180.0);
                    worst = std::max(worst, std::abs(radial_drift(spec, r) - log_density_derivative(density, spec, r)));
                }
            }
            out.push_back(make_check(5, fmt("%s k=%g m=1..3", to_string(family).data(), k),
                                     "sup |drift - (log density)'| on [0.05 R, 0.95 R]", worst, 1e-8));
        }
    }
}

void dual_route_kernel(std::vector<Check>& out, const LevelParams& p) {
    for (ModelFamily family : kFamilies) {
        for (double k : kCurvatures) {
            const ModelSpec spec = make_spec(family, 2, k);
            for (double t : {0.1, 0.5}) {
                const auto dec = dirichlet_eigen_for_time(spec, 1.0, p.eig_n, t);
                const auto fd = heat_kernel_fd(spec, 1.0, p.fd_n, t, 0.0, p.fd_dt);
                const Grid grid = build_grid(spec, 1.0, p.fd_n);
                double diff = 0.0;
                double scale = 0.0;
                for (int i = 0; i < p.fd_n; ++i) {
                    const double q = dec.heat_kernel(t, 0.0, grid.centers[i]).value;
                    diff = std::max(diff, std::abs(q - fd[i]));
                    scale = std::max(scale, std::abs(q));
                }
                out.push_back(make_check(6, fmt("%s t=%g", label(family, 2, k).c_str(), t),
                                         "spectral vs Crank-Nicolson q(t,0,.), sup-norm relative difference",
                                         diff / scale, p.kernel_tol));
            }
        }
    }
}

void mean_exit_times(std::vector<Check>& out, const LevelParams& p, const ValidationOptions& options) {
    constexpr double R = 1.0;
    for (ModelFamily family : kFamilies) {
        for (int m = 1; m <= 2; ++m) {
            for (double k : kCurvatures) {
                // Curved models are checked at m = 1 only to fit the time budget.
                if (k != 0.0 && m > 1) {
                    continue;
                }
                const ModelSpec spec = make_spec(family, m, k);
                SimConfig config{options.seed, p.sde_paths, p.sde_dt, 8.0 * R * R, R};
                const auto ensemble = simulate_radial(spec, 0.0, config, options.threads);
                const MeanExitEstimate mc = mean_absorption_time(ensemble);
                double target = 0.0;
                std::string what;
                if (k == 0.0) {
                    target = R * R / (family == ModelFamily::kahler ? 4.0 * m : 8.0 * m);
                    what = fmt("closed form %g", target);
                } else {
                    target = mean_exit_time(spec, R, p.pde_n, 0.0, p.sde_dt);
                    what = fmt("PDE survival integral %.6f", target);
                }
                const double error = mc.censored == 0 ? std::abs(mc.mean - target)
                                                      : std::numeric_limits<double>::infinity();
                out.push_back(make_check(7, label(family, m, k), what + ", |MC - target| vs 3 SE", error,
                                         3.0 * mc.std_error));
            }
        }
    }
}

void exit_probabilities(std::vector<Check>& out, const LevelParams& p, const ValidationOptions& options) {
    constexpr double R = 1.0;
    constexpr double r0 = 0.2;
    const double times[] = {0.1, 0.3};
    for (ModelFamily family : kFamilies) {
        for (int m = 1; m <= 2; ++m) {
            for (double k : kCurvatures) {
                const ModelSpec spec = make_spec(family, m, k);
                SimConfig config{options.seed, p.sde_paths, p.sde_dt, times[1], R};
                const auto ensemble = simulate_radial(spec, r0, config, options.threads);
                const auto survival = survival_curve(spec, R, p.pde_n, r0, times, p.sde_dt);
                for (int i = 0; i < 2; ++i) {
                    const McEstimate mc = exit_probability_mc(ensemble, times[i]);
                    const double target = 1.0 - survival[i];
                    // The sample SE vanishes when every path has exited; the
                    // SE implied by the PDE probability does not.
                    const double null_se = std::sqrt(target * (1.0 - target) / static_cast<double>(p.sde_paths));
                    out.push_back(make_check(8, fmt("%s t=%g", label(family, m, k).c_str(), times[i]),
                                             fmt("PDE exit probability %.6f, |MC - PDE| vs 3 SE", target),
                                             std::abs(mc.estimate - target), 3.0 * std::max(mc.std_error, null_se)));
                }
            }
        }
    }
}

void geometry_oracle(std::vector<Check>& out, const LevelParams& p, const ValidationOptions& options) {
    struct Case {
        ModelFamily family;
        int m;
    };
    const Case cases[] = {{ModelFamily::kahler, 1}, {ModelFamily::kahler, 2}, {ModelFamily::quaternion_kahler, 1}};
    constexpr double t = 0.2;
    for (const Case& c : cases) {
        const ModelSpec spec = make_spec(c.family, c.m, 1.0);
        const auto dec = dirichlet_eigen_for_time(spec, domain_max(spec), 4096, t, BoundaryMode::closed);
        std::vector<double> faces(dec.grid().n + 1);
        for (std::size_t i = 0; i < faces.size(); ++i) {
            faces[i] = i * dec.grid().h;
        }
        const TabulatedCdf cdf(std::move(faces), dec.kernel_face_cdf(t, 0.0));
        for (double dt : {p.ambient_dt, 0.5 * p.ambient_dt}) {
            AmbientConfig config{options.seed, p.ambient_paths, dt, t};
            const auto radii = simulate_ambient_radial(c.family, c.m, config, std::nullopt, options.threads);
            const double ks = ks_statistic(radii, [&](double s) { return cdf(s); });
            out.push_back(make_check(9, fmt("%s dt=%g", label(c.family, c.m, 1.0).c_str(), dt),
                                     "KS distance of sphere radial samples to the spectral CDF vs 1% critical value",
                                     ks, ks_critical_value(0.01, radii.size())));
        }
    }
}

void small_balls(std::vector<Check>& out, const ValidationOptions& options) {
    const DensityFunction density = density_or_default(options);
    constexpr double s = 1e-3;
    for (ModelFamily family : kFamilies) {
        for (int m = 1; m <= 3; ++m) {
            for (double k : kCurvatures) {
                const ModelSpec spec = make_spec(family, m, k);
                const double mass = boost::math::quadrature::gauss<double, 30>::integrate(
                    [&](double r) { return density(spec, r); }, 0.0, s);
                out.push_back(make_check(10, fmt("%s s=%g", label(family, m, k).c_str(), s),
                                         "mu([0,s]) / small-ball volume - 1",
                                         std::abs(mass / small_ball_volume(family, m, s) - 1.0), 1e-4));
            }
        }
    }
    for (ModelFamily family : kFamilies) {
        for (int m = 1; m <= (family == ModelFamily::kahler ? 3 : 2); ++m) {
            out.push_back(mass_consistency_check(family, m, density));
        }
    }
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double json_number(const nlohmann::ordered_json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

} // namespace

std::string_view to_string(ValidationLevel level) { return level == ValidationLevel::quick ? "quick" : "full"; }

ValidationLevel parse_validation_level(std::string_view text) {
    if (text == "quick") {
        return ValidationLevel::quick;
    }
    if (text == "full") {
        return ValidationLevel::full;
    }
    throw ConfigError("validation level must be quick or full");
}

bool CriterionResult::checks_passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string criterion_title(int id) {
    static const char* const titles[kCriterionCount] = {
        "compact-model spectra, first nonzero level",
        "compact-model spectra, levels 2-3",
        "flat Dirichlet eigenvalue vs Bessel zero",
        "curvature rescaling of lambda_1",
        "drift-measure duality",
        "dual-route heat kernel",
        "mean exit times",
        "exit probabilities, MC vs PDE",
        "sphere Brownian motion vs 1-D law",
        "small-ball and total-mass normalization",
    };
    if (id < 1 || id > kCriterionCount) {
        throw ConfigError("criterion id must be in 1..10");
    }
    return titles[id - 1];
}

Check mass_consistency_check(ModelFamily family, int m, const DensityFunction& density) {
    const ModelSpec spec = make_spec(family, m, 1.0);
    const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double r) { return density(spec, r); }, 0.0, domain_max(spec), 15, 1e-14);
    const double volume = compact_model_volume(family, m);
    return make_check(10, fmt("%s total mass", label(family, m, 1.0).c_str()),
                      fmt("compact model volume %.15g, relative error", volume), relative(mass, volume), 1e-10);
}

CriterionResult run_criterion(int id, const ValidationOptions& options) {
    CriterionResult result{id, criterion_title(id), {}, 0.0, kTimeLimits[id - 1]};
    const LevelParams p = params_for(options.level);
    const auto start = std::chrono::steady_clock::now();
    try {
        switch (id) {
        case 1:
        case 2:
            compact_spectra(result.checks, p, id);
            break;
        case 3:
            flat_bessel(result.checks, p);
            break;
        case 4:
            rescaling(result.checks, p);
            break;
        case 5:
            drift_duality(result.checks, options);
            break;
        case 6:
            dual_route_kernel(result.checks, p);
            break;
        case 7:
            mean_exit_times(result.checks, p, options);
            break;
        case 8:
            exit_probabilities(result.checks, p, options);
            break;
        case 9:
            geometry_oracle(result.checks, p, options);
            break;
        case 10:
            small_balls(result.checks, options);
            break;
        }
    } catch (const std::exception& e) {
        result.checks.push_back({id, std::string("aborted: ") + e.what(), "criterion completes",
                                 std::numeric_limits<double>::quiet_NaN(), 0.0, false});
    }
    result.seconds = elapsed_since(start);
    return result;
}

bool ValidationReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string ValidationReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["toolkit_version"] = toolkit_version;
    doc["level"] = level;
    doc["seed"] = seed;
    doc["passed"] = passed();
    auto& list = doc["checks"] = nlohmann::ordered_json::array();
    for (const Check& c : checks) {
        nlohmann::ordered_json j;
        j["criterion"] = c.criterion;
        j["name"] = c.name;
        j["target"] = c.target;
        j["measured_error"] = c.measured_error;
        j["tolerance"] = c.tolerance;
        j["passed"] = c.passed;
        list.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

ValidationReport ValidationReport::from_json(const std::string& text) {
    try {
        const auto doc = nlohmann::ordered_json::parse(text);
        ValidationReport report;
        report.toolkit_version = doc.at("toolkit_version").get<std::string>();
        report.level = doc.at("level").get<std::string>();
        report.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& j : doc.at("checks")) {
            report.checks.push_back({j.at("criterion").get<int>(), j.at("name").get<std::string>(),
                                     j.at("target").get<std::string>(), json_number(j.at("measured_error")),
                                     json_number(j.at("tolerance")), j.at("passed").get<bool>()});
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed validation report: ") + e.what());
    }
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    os << "radialkit " << toolkit_version << " validation (level " << level << ", seed " << seed << ")\n";
    char buf[64];
    for (const Check& c : checks) {
        std::snprintf(buf, sizeof buf, "%.3e <= %.3e", c.measured_error, c.tolerance);
        os << (c.passed ? "PASS" : "FAIL") << "  [" << c.criterion << "] " << c.name << ": " << buf << "  ("
           << c.target << ")\n";
    }
    const auto failed = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; });
    os << (passed() ? "OVERALL PASS" : "OVERALL FAIL") << " (" << checks.size() - failed << "/" << checks.size()
       << " checks)\n";
    return os.str();
}

ValidationReport run_validation(const ValidationOptions& options, std::vector<CriterionResult>* timings) {
    ValidationReport report{RADIALKIT_VERSION, std::string(to_string(options.level)), options.seed, {}};
    for (int id = 1; id <= kCriterionCount; ++id) {
        CriterionResult r = run_criterion(id, options);
        report.checks.insert(report.checks.end(), r.checks.begin(), r.checks.end());
        if (timings) {
            timings->push_back(std::move(r));
        }
    }
    return report;
}

} // namespace radialkit
