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

// Command-line front end. Uses only the C interface of libradialkit.

#include "radialkit/radialkit.h"

#include <CLI11.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitValidation = 4;

constexpr const char* kCacheEnv = "RADIALKIT_CACHE_DIR";

// Carries a C API failure up to main().
struct ApiError {
    rk_status status;
    std::string message;
};

void check(rk_status status) {
    if (status != RK_OK) {
        throw ApiError{status, rk_last_error()};
    }
}

int exit_code_for(rk_status status) {
    switch (status) {
    case RK_ERR_CONFIG:
        return kExitUsage;
    case RK_ERR_DOMAIN:
        return kExitDomain;
    default:
        return kExitFailure;
    }
}

struct DecompositionDeleter {
    void operator()(rk_decomposition* d) const { rk_decomposition_free(d); }
};
struct EnsembleDeleter {
    void operator()(rk_ensemble* e) const { rk_ensemble_free(e); }
};
struct ReportDeleter {
    void operator()(rk_report* r) const { rk_report_free(r); }
};
using Decomposition = std::unique_ptr<rk_decomposition, DecompositionDeleter>;
using Ensemble = std::unique_ptr<rk_ensemble, EnsembleDeleter>;
using Report = std::unique_ptr<rk_report, ReportDeleter>;

std::string take_string(char* s) {
    std::string out(s);
    rk_string_free(s);
    return out;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Adds 0.0 so that -0 prints as 0.
std::string num0(double v) { return num(v + 0.0); }

struct ModelArgs {
    std::string family = "kahler";
    int m = 1;
    double k = 0.0;

    rk_model model() const {
        rk_model out{RK_KAHLER, m, k};
        check(rk_parse_family(family.c_str(), &out.family));
        return out;
    }
};

void add_model_options(CLI::App* cmd, ModelArgs& args, bool with_k) {
    cmd->add_option("--family", args.family, "kahler or quaternion")->capture_default_str();
    cmd->add_option("--m", args.m, "complex (resp. quaternionic) dimension")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_k) {
        cmd->add_option("--k", args.k, "curvature parameter")->capture_default_str();
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) {
        throw ApiError{RK_ERR_CONFIG, "cannot write " + path};
    }
}

// ---- tables ----

struct TablesArgs {
    ModelArgs model;
    int points = 15;
    double r_max = 1.5;
    int levels = 4;
};

int cmd_tables(const TablesArgs& a) {
    const rk_model base = a.model.model();
    check(rk_model_check(&base));
    const bool kahler = base.family == RK_KAHLER;
    int dim = 0;
    check(rk_real_dimension(&base, &dim));
    std::cout << "model: " << rk_family_name(base.family) << " m=" << base.m << " (real dimension " << dim << ")\n";
    std::cout << "radial generator: d^2/dr^2 + drift(r) d/dr\n";
    if (kahler) {
        std::cout << "drift: (2m-2) F(k,r) + 2 F(k,2r)\n";
        std::cout << "density: pi^m/(m-1)! s_k(r)^(2m-2) s_k(2r)\n";
    } else {
        std::cout << "drift: (4m-4) F(k,r) + 6 F(k,2r)\n";
        std::cout << "density: pi^(2m)/(4 (2m-1)!) s_k(r)^(4m-4) s_k(2r)^3\n";
    }
    std::cout << "F(k,r) = sqrt(k) cot(sqrt(k) r), 1/r, sqrt(-k) coth(sqrt(-k) r) for k > 0, = 0, < 0\n\n";

    std::cout << "curvature constants:\n";
    const char* sectional = kahler ? "H" : "Q";
    for (double k : {-1.0, 0.0, 1.0}) {
        rk_model mk = base;
        mk.k = k;
        double s = 0.0;
        double ricp = 0.0;
        check(rk_curvature_constants(&mk, &s, &ricp));
        std::cout << "  k=" << num0(k) << ": (" << sectional << ", Ric_perp) = (" << num0(s) << ", " << num0(ricp)
                  << ")\n";
    }
    std::cout << "\nspectrum:\n";
    std::cout << "  k=-1, k=0: noncompact model, continuous spectrum\n";
    std::cout << "  k=1, compact model (" << (kahler ? "CP^" : "HP^") << base.m << "), eigenvalue "
              << (kahler ? "4l(l+m)" : "4l(l+2m+1)") << ":\n";
    for (int l = 0; l < a.levels; ++l) {
        double v = 0.0;
        check(rk_model_spectrum(base.family, base.m, l, &v));
        std::cout << "    level " << l << ": " << num0(v) << "\n";
    }
    double volume = 0.0;
    check(rk_compact_model_volume(base.family, base.m, &volume));
    std::cout << "  volume: " << num(volume) << "\n\n";

    std::cout << "r";
    for (const char* k : {"-1", "0", "1"}) {
        std::cout << ",drift_k=" << k << ",density_k=" << k;
    }
    std::cout << "\n";
    for (int i = 1; i <= a.points; ++i) {
        const double r = a.r_max * i / a.points;
        std::cout << num(r);
        for (double k : {-1.0, 0.0, 1.0}) {
            rk_model mk = base;
            mk.k = k;
            double drift = 0.0;
            double density = 0.0;
            const bool inside = rk_radial_drift(&mk, r, &drift) == RK_OK;
            if (inside) {
                check(rk_measure_density(&mk, r, &density));
                std::cout << ',' << num(drift) << ',' << num(density);
            } else {
                std::cout << ",,";
            }
        }
        std::cout << "\n";
    }
    return kExitOk;
}

// ---- eigs ----

struct EigsArgs {
    ModelArgs model;
    double R = 1.0;
    int n = 4096;
    int count = 1;
    bool closed = false;
};

std::string cache_file_name(const rk_model& m, double R, int n, int count, rk_boundary mode) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s_m%d_k%a_R%a_n%d_c%d_%s.json", rk_family_name(m.family), m.m, m.k, R, n,
                  count, mode == RK_CLOSED ? "closed" : "dirichlet");
    return buf;
}

Decomposition load_or_compute(const rk_model& m, double R, int n, int count, rk_boundary mode) {
    const char* dir = std::getenv(kCacheEnv);
    std::filesystem::path path;
    if (dir != nullptr && *dir != '\0') {
        path = std::filesystem::path(dir) / cache_file_name(m, R, n, count, mode);
        std::ifstream in(path, std::ios::binary);
        if (in) {
            std::stringstream text;
            text << in.rdbuf();
            rk_decomposition* d = nullptr;
            if (rk_decomposition_from_json(text.str().c_str(), &d) == RK_OK) {
                return Decomposition(d);
            }
            std::cerr << "warning: ignoring unreadable cache entry " << path << ": " << rk_last_error() << "\n";
        }
    }
    rk_decomposition* d = nullptr;
    check(rk_decomposition_create(&m, R, n, count, mode, &d));
    Decomposition out(d);
    if (!path.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        char* json = nullptr;
        check(rk_decomposition_to_json(out.get(), &json));
        const std::string tmp = path.string() + ".tmp";
        try {
            write_file(tmp, take_string(json));
            std::filesystem::rename(tmp, path, ec);
        } catch (const ApiError&) {
            ec = std::make_error_code(std::errc::io_error);
        }
        if (ec) {
            std::cerr << "warning: could not write cache entry " << path << "\n";
        }
    }
    return out;
}

int cmd_eigs(const EigsArgs& a) {
    const rk_model m = a.model.model();
    const rk_boundary mode = a.closed ? RK_CLOSED : RK_DIRICHLET;
    // Closed models also report the constant mode as level 0.
    const int levels = a.closed ? a.count + 1 : a.count;
    const Decomposition coarse = load_or_compute(m, a.R, a.n, levels, mode);
    const Decomposition fine = load_or_compute(m, a.R, 2 * a.n, levels, mode);
    std::vector<rk_eigen_estimate> est(static_cast<std::size_t>(levels));
    check(rk_richardson_combine(coarse.get(), fine.get(), levels, est.data()));
    std::cout << "level,eigenvalue,error_estimate\n";
    for (int j = 0; j < levels; ++j) {
        std::cout << (a.closed ? j : j + 1) << ',' << num0(est[j].value) << ',' << num(est[j].error_estimate)
                  << "\n";
    }
    return kExitOk;
}

// ---- heat ----

struct HeatArgs {
    ModelArgs model;
    double R = 1.0;
    double t = 0.1;
    double source = 0.0;
    int n = 1024;
    double dt = 0.0;
    bool closed = false;
    std::string plot;
};

int cmd_heat(const HeatArgs& a) {
    const rk_model m = a.model.model();
    const rk_boundary mode = a.closed ? RK_CLOSED : RK_DIRICHLET;
    const double dt = a.dt > 0.0 ? a.dt : rk_default_time_step(a.R);
    rk_decomposition* raw = nullptr;
    check(rk_decomposition_create_for_time(&m, a.R, a.n, a.t, mode, &raw));
    const Decomposition dec(raw);
    const auto n = static_cast<std::size_t>(rk_decomposition_size(dec.get()));
    std::vector<double> centers(n), weights(n), fd(n);
    check(rk_decomposition_grid(dec.get(), centers.data(), weights.data()));
    check(rk_heat_kernel_fd(&m, a.R, a.n, a.t, a.source, dt, mode, fd.data()));

    double lambda1 = 0.0;
    double phi_source = 0.0;
    const std::size_t ground = 0;
    check(rk_decomposition_eigenvalue(dec.get(), ground, &lambda1));
    check(rk_decomposition_eigenfunction_at(dec.get(), ground, a.source, &phi_source));

    std::ostringstream csv;
    std::ostringstream plot;
    csv << "r,q_spectral,q_fd,difference,symmetry,ground_ratio_minus_one\n";
    plot << "# r q_spectral q_fd\n";
    double mass_spectral = 0.0;
    double mass_fd = 0.0;
    bool tail_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = centers[i];
        double q = 0.0;
        double q_swapped = 0.0;
        double phi = 0.0;
        int ok = 0;
        check(rk_heat_kernel(dec.get(), a.t, a.source, r, &q, &ok));
        check(rk_heat_kernel(dec.get(), a.t, r, a.source, &q_swapped, nullptr));
        check(rk_decomposition_eigenfunction_at(dec.get(), ground, r, &phi));
        tail_ok = tail_ok && ok != 0;
        const double ground_term = std::exp(-lambda1 * a.t) * phi_source * phi;
        mass_spectral += weights[i] * q;
        mass_fd += weights[i] * fd[i];
        csv << num(r) << ',' << num(q) << ',' << num(fd[i]) << ',' << num(q - fd[i]) << ','
            << num(std::abs(q - q_swapped)) << ',' << num(q / ground_term - 1.0) << "\n";
        plot << num(r) << ' ' << num(q) << ' ' << num(fd[i]) << "\n";
    }
    std::cout << csv.str();
    std::cerr << "mass_spectral=" << num(mass_spectral) << " mass_fd=" << num(mass_fd)
              << " mass_difference=" << num(std::abs(mass_spectral - mass_fd)) << "\n";
    if (!tail_ok) {
        std::cerr << "warning: spectral truncation bound not met at this t\n";
    }
    if (!a.plot.empty()) {
        write_file(a.plot, plot.str());
    }
    return kExitOk;
}

// ---- sde ----

struct SdeArgs {
    ModelArgs model;
    double R = 1.0;
    double r0 = 0.0;
    double t = 0.1;
    std::int64_t paths = 10000;
    std::uint64_t seed = 1;
    double dt = 1e-4;
    int pde_n = 2048;
    int probes = 10;
    unsigned threads = 0;
    std::string ensemble_csv;
};

double interpolate_faces(const std::vector<double>& cdf, double h, double s) {
    const double x = s / h;
    const auto i = static_cast<std::size_t>(std::min<double>(std::floor(x), static_cast<double>(cdf.size() - 2)));
    const double f = x - static_cast<double>(i);
    return cdf[i] + f * (cdf[i + 1] - cdf[i]);
}

int cmd_sde(const SdeArgs& a) {
    const rk_model m = a.model.model();
    const rk_sim_config config{a.seed, a.paths, a.dt, a.t, a.R, a.threads};
    rk_ensemble* raw = nullptr;
    check(rk_simulate_radial(&m, a.r0, &config, &raw));
    const Ensemble ensemble(raw);

    std::vector<double> times(static_cast<std::size_t>(a.probes));
    for (int i = 0; i < a.probes; ++i) {
        times[i] = a.t * (i + 1) / a.probes;
    }
    std::vector<double> survival(times.size());
    check(rk_survival_curve(&m, a.R, a.pde_n, a.r0, times.data(), times.size(), a.dt, survival.data()));

    rk_decomposition* dec_raw = nullptr;
    check(rk_decomposition_create_for_time(&m, a.R, a.pde_n, a.t, RK_DIRICHLET, &dec_raw));
    const Decomposition dec(dec_raw);
    std::vector<double> face_cdf(static_cast<std::size_t>(a.pde_n) + 1);
    check(rk_kernel_face_cdf(dec.get(), a.t, a.r0, face_cdf.data()));
    const double h = a.R / a.pde_n;

    const double bound = 0.5 / std::sqrt(static_cast<double>(a.paths));
    std::cout << "quantity,t,s,mc_estimate,std_error,std_error_bound,reference,difference\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        double p = 0.0;
        double se = 0.0;
        check(rk_exit_probability(ensemble.get(), times[i], &p, &se));
        const double ref = 1.0 - survival[i];
        std::cout << "exit_probability," << num(times[i]) << ",," << num(p) << ',' << num(se) << ',' << num(bound)
                  << ',' << num(ref) << ',' << num(p - ref) << "\n";
    }
    for (int j = 1; j <= a.probes; ++j) {
        const double s = a.R * j / a.probes;
        double p = 0.0;
        double se = 0.0;
        check(rk_empirical_cdf(ensemble.get(), a.t, s, &p, &se));
        const double ref = interpolate_faces(face_cdf, h, s);
        std::cout << "cdf," << num(a.t) << ',' << num(s) << ',' << num(p) << ',' << num(se) << ',' << num(bound)
                  << ',' << num(ref) << ',' << num(p - ref) << "\n";
    }
    double mean = 0.0;
    double mean_se = 0.0;
    std::int64_t censored = 0;
    check(rk_mean_absorption_time(ensemble.get(), &mean, &mean_se, &censored));
    std::cerr << "mean_absorption_time=" << num(mean) << " std_error=" << num(mean_se) << " censored=" << censored
              << "\n";
    if (!a.ensemble_csv.empty()) {
        char* text = nullptr;
        check(rk_ensemble_to_csv(ensemble.get(), &text));
        write_file(a.ensemble_csv, take_string(text));
    }
    return kExitOk;
}

// ---- validate ----

struct ValidateArgs {
    std::string level = "quick";
    std::uint64_t seed = 7;
    unsigned threads = 0;
    std::string json;
};

int cmd_validate(const ValidateArgs& a) {
    rk_report* raw = nullptr;
    check(rk_validate(a.level.c_str(), a.seed, a.threads, &raw));
    const Report report(raw);
    char* text = nullptr;
    check(rk_report_to_text(report.get(), &text));
    std::cout << take_string(text);
    for (std::size_t i = 0; i < rk_report_timing_count(report.get()); ++i) {
        int id = 0;
        double seconds = 0.0;
        double limit = 0.0;
        check(rk_report_timing(report.get(), i, &id, &seconds, &limit));
        char line[128];
        std::snprintf(line, sizeof line, "criterion %d: %.2f s (limit %.0f s)\n", id, seconds, limit);
        std::cerr << line;
    }
    if (!a.json.empty()) {
        char* json = nullptr;
        check(rk_report_to_json(report.get(), &json));
        if (a.json == "-") {
            std::cout << take_string(json);
        } else {
            write_file(a.json, take_string(json));
        }
    }
    return rk_report_passed(report.get()) ? kExitOk : kExitValidation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radialkit: radial processes on Kahler and quaternion-Kahler model spaces"};
    app.set_version_flag("--version", rk_version());
    app.set_config("--config", "", "read options from a TOML/INI file (flags take precedence)");
    app.require_subcommand(1);

    TablesArgs tables;
    auto* c_tables = app.add_subcommand("tables", "drift, density, curvature and spectrum tables");
    add_model_options(c_tables, tables.model, false);
    c_tables->add_option("--points", tables.points, "radii in the drift/density table")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c_tables->add_option("--r-max", tables.r_max, "largest tabulated radius")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c_tables->add_option("--levels", tables.levels, "spectral levels listed")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    EigsArgs eigs;
    auto* c_eigs = app.add_subcommand("eigs", "Richardson-extrapolated Dirichlet (or closed) eigenvalues");
    add_model_options(c_eigs, eigs.model, true);
    c_eigs->add_option("--R", eigs.R, "radius of the ball")->capture_default_str();
    c_eigs->add_option("--n", eigs.n, "coarse grid size (fine = 2n)")->check(CLI::Range(16, 1 << 20))->capture_default_str();
    c_eigs->add_option("--count", eigs.count, "number of nonzero levels")->check(CLI::PositiveNumber)->capture_default_str();
    c_eigs->add_flag("--closed", eigs.closed, "no-flux boundary at the cut locus (k > 0, R = pi/(2 sqrt k))");

    HeatArgs heat;
    auto* c_heat = app.add_subcommand("heat", "heat kernel from the spectral and Crank-Nicolson routes");
    add_model_options(c_heat, heat.model, true);
    c_heat->add_option("--R", heat.R, "radius of the ball")->capture_default_str();
    c_heat->add_option("--t", heat.t, "time")->check(CLI::PositiveNumber)->capture_default_str();
    c_heat->add_option("--source", heat.source, "source radius")->capture_default_str();
    c_heat->add_option("--n", heat.n, "grid size")->check(CLI::Range(16, 1 << 20))->capture_default_str();
    c_heat->add_option("--dt", heat.dt, "time step (default 1e-4 max(1, R^2))");
    c_heat->add_flag("--closed", heat.closed, "no-flux boundary at the cut locus");
    c_heat->add_option("--plot", heat.plot, "write whitespace-delimited plot data to this file");

    SdeArgs sde;
    auto* c_sde = app.add_subcommand("sde", "Monte Carlo exit probabilities and CDF probes");
    add_model_options(c_sde, sde.model, true);
    c_sde->add_option("--R", sde.R, "absorbing radius")->capture_default_str();
    c_sde->add_option("--r0", sde.r0, "starting radius")->capture_default_str();
    c_sde->add_option("--t", sde.t, "final time")->check(CLI::PositiveNumber)->capture_default_str();
    c_sde->add_option("--paths", sde.paths, "number of paths")->check(CLI::PositiveNumber)->capture_default_str();
    c_sde->add_option("--seed", sde.seed, "random seed")->capture_default_str();
    c_sde->add_option("--dt", sde.dt, "time step")->check(CLI::PositiveNumber)->capture_default_str();
    c_sde->add_option("--pde-n", sde.pde_n, "grid size of the PDE and spectral references")
        ->check(CLI::Range(16, 1 << 20))
        ->capture_default_str();
    c_sde->add_option("--probes", sde.probes, "number of time and radius probes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c_sde->add_option("--threads", sde.threads, "worker threads (0: all cores)")->capture_default_str();
    c_sde->add_option("--ensemble-csv", sde.ensemble_csv, "write per-path results to this file");

    ValidateArgs validate;
    auto* c_validate = app.add_subcommand("validate", "run the acceptance suite");
    c_validate->add_option("--level", validate.level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}))
        ->capture_default_str();
    c_validate->add_option("--seed", validate.seed, "random seed")->capture_default_str();
    c_validate->add_option("--threads", validate.threads, "worker threads (0: all cores)")->capture_default_str();
    c_validate->add_option("--json", validate.json, "write the JSON report to this file ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*c_tables) {
            return cmd_tables(tables);
        }
        if (*c_eigs) {
            return cmd_eigs(eigs);
        }
        if (*c_heat) {
            return cmd_heat(heat);
        }
        if (*c_sde) {
            return cmd_sde(sde);
        }
        if (*c_validate) {
            return cmd_validate(validate);
        }
    } catch (const ApiError& e) {
        std::cout.flush();
        std::cerr << "error: " << rk_status_string(e.status) << ": " << e.message << "\n";
        return exit_code_for(e.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
