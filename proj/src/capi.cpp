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

#include "radialkit/radialkit.h"

#include "radialkit/ambient.hpp"
#include "radialkit/error.hpp"
#include "radialkit/model.hpp"
#include "radialkit/pde.hpp"
#include "radialkit/radial_sde.hpp"
#include "radialkit/sturm_liouville.hpp"
#include "radialkit/validation.hpp"
#include "radialkit/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <vector>

struct rk_decomposition {
    radialkit::SpectralDecomposition value;
};

struct rk_ensemble {
    radialkit::PathEnsemble value;
};

struct rk_report {
    radialkit::ValidationReport value;
    std::vector<radialkit::CriterionResult> timings;
};

namespace {

using namespace radialkit;

thread_local std::string last_error;

rk_status fail(rk_status status, const char* message) {
    last_error = message;
    return status;
}

template <class Body>
rk_status guarded(Body&& body) {
    try {
        body();
        last_error.clear();
        return RK_OK;
    } catch (const DomainError& e) {
        return fail(RK_ERR_DOMAIN, e.what());
    } catch (const ConfigError& e) {
        return fail(RK_ERR_CONFIG, e.what());
    } catch (const ConvergenceError& e) {
        return fail(RK_ERR_CONVERGENCE, e.what());
    } catch (const NumericalError& e) {
        return fail(RK_ERR_NUMERICAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(RK_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(RK_ERR_INTERNAL, e.what());
    }
}

void require(const void* p, const char* what) {
    if (p == nullptr) {
        throw ConfigError(std::string(what) + " must not be null");
    }
}

ModelFamily family_of(rk_family f) {
    switch (f) {
    case RK_KAHLER:
        return ModelFamily::kahler;
    case RK_QUATERNION_KAHLER:
        return ModelFamily::quaternion_kahler;
    }
    throw ConfigError("unknown model family");
}

ModelSpec spec_of(const rk_model* model) {
    require(model, "model");
    return make_spec(family_of(model->family), model->m, model->k);
}

BoundaryMode mode_of(rk_boundary b) {
    switch (b) {
    case RK_DIRICHLET:
        return BoundaryMode::dirichlet;
    case RK_CLOSED:
        return BoundaryMode::closed;
    }
    throw ConfigError("unknown boundary mode");
}

char* to_c_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void copy_estimates(const std::vector<EigenEstimate>& in, rk_eigen_estimate* out) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i] = {in[i].value, in[i].error_estimate, in[i].coarse, in[i].fine};
    }
}

} // namespace

extern "C" {

const char* rk_version(void) { return RADIALKIT_VERSION; }

const char* rk_last_error(void) { return last_error.c_str(); }

const char* rk_status_string(rk_status status) {
    switch (status) {
    case RK_OK:
        return "ok";
    case RK_ERR_CONFIG:
        return "configuration error";
    case RK_ERR_DOMAIN:
        return "domain error";
    case RK_ERR_CONVERGENCE:
        return "convergence failure";
    case RK_ERR_NUMERICAL:
        return "numerical failure";
    case RK_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

void rk_string_free(char* text) { std::free(text); }

rk_status rk_parse_family(const char* text, rk_family* out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = parse_family(text) == ModelFamily::kahler ? RK_KAHLER : RK_QUATERNION_KAHLER;
    });
}

const char* rk_family_name(rk_family family) {
    switch (family) {
    case RK_KAHLER:
        return "kahler";
    case RK_QUATERNION_KAHLER:
        return "quaternion";
    }
    return "unknown";
}

rk_status rk_model_check(const rk_model* model) {
    return guarded([&] { spec_of(model); });
}

rk_status rk_real_dimension(const rk_model* model, int* out) {
    return guarded([&] {
        require(out, "out");
        *out = real_dimension(spec_of(model));
    });
}

rk_status rk_domain_max(const rk_model* model, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = domain_max(spec_of(model));
    });
}

rk_status rk_comparison_f(double k, double r, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = comparison_F(k, r);
    });
}

rk_status rk_radial_drift(const rk_model* model, double r, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = radial_drift(spec_of(model), r);
    });
}

rk_status rk_measure_density(const rk_model* model, double r, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = measure_density(spec_of(model), r);
    });
}

rk_status rk_curvature_constants(const rk_model* model, double* sectional, double* orthogonal_ricci) {
    return guarded([&] {
        require(sectional, "sectional");
        require(orthogonal_ricci, "orthogonal_ricci");
        const CurvatureConstants c = curvature_constants(spec_of(model));
        *sectional = c.sectional;
        *orthogonal_ricci = c.ric_perp;
    });
}

rk_status rk_model_spectrum(rk_family family, int m, int level, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = model_spectrum(family_of(family), m, level);
    });
}

rk_status rk_compact_model_volume(rk_family family, int m, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = compact_model_volume(family_of(family), m);
    });
}

rk_status rk_small_ball_volume(rk_family family, int m, double s, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = small_ball_volume(family_of(family), m, s);
    });
}

rk_status rk_richardson_eigenvalues(const rk_model* model, double R, int count, rk_boundary mode, int n,
                                    rk_eigen_estimate* out) {
    return guarded([&] {
        require(out, "out");
        copy_estimates(richardson_eigenvalues(spec_of(model), R, count, mode_of(mode), n), out);
    });
}

rk_status rk_richardson_combine(const rk_decomposition* coarse, const rk_decomposition* fine, int count,
                                rk_eigen_estimate* out) {
    return guarded([&] {
        require(coarse, "coarse");
        require(fine, "fine");
        require(out, "out");
        const auto& a = coarse->value;
        const auto& b = fine->value;
        if (!(a.spec() == b.spec()) || a.boundary_mode() != b.boundary_mode() || a.grid().R != b.grid().R ||
            b.grid().n != 2 * a.grid().n) {
            throw ConfigError("Richardson pair must be the same problem at resolutions n and 2n");
        }
        if (count < 1 || static_cast<std::size_t>(count) > std::min(a.count(), b.count())) {
            throw ConfigError("count exceeds the eigenpairs held by the decompositions");
        }
        for (int j = 0; j < count; ++j) {
            const double c = a.eigenvalues()[j];
            const double f = b.eigenvalues()[j];
            out[j] = {(4.0 * f - c) / 3.0, std::abs(f - c) / 3.0, c, f};
        }
    });
}

rk_status rk_decomposition_create(const rk_model* model, double R, int n, int count, rk_boundary mode,
                                  rk_decomposition** out) {
    return guarded([&] {
        require(out, "out");
        *out = new rk_decomposition{dirichlet_eigen(spec_of(model), R, n, count, mode_of(mode))};
    });
}

rk_status rk_decomposition_create_for_time(const rk_model* model, double R, int n, double t, rk_boundary mode,
                                           rk_decomposition** out) {
    return guarded([&] {
        require(out, "out");
        *out = new rk_decomposition{dirichlet_eigen_for_time(spec_of(model), R, n, t, mode_of(mode))};
    });
}

rk_status rk_decomposition_from_json(const char* json, rk_decomposition** out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        *out = new rk_decomposition{SpectralDecomposition::from_json(json)};
    });
}

rk_status rk_decomposition_to_json(const rk_decomposition* dec, char** out) {
    return guarded([&] {
        require(dec, "decomposition");
        require(out, "out");
        *out = to_c_string(dec->value.to_json());
    });
}

void rk_decomposition_free(rk_decomposition* dec) { delete dec; }

size_t rk_decomposition_count(const rk_decomposition* dec) { return dec ? dec->value.count() : 0; }

int rk_decomposition_size(const rk_decomposition* dec) { return dec ? dec->value.grid().n : 0; }

rk_status rk_decomposition_eigenvalue(const rk_decomposition* dec, size_t j, double* out) {
    return guarded([&] {
        require(dec, "decomposition");
        require(out, "out");
        if (j >= dec->value.count()) {
            throw ConfigError("eigenvalue index out of range");
        }
        *out = dec->value.eigenvalues()[j];
    });
}

rk_status rk_decomposition_eigenfunction_at(const rk_decomposition* dec, size_t j, double r, double* out) {
    return guarded([&] {
        require(dec, "decomposition");
        require(out, "out");
        if (j >= dec->value.count()) {
            throw ConfigError("eigenfunction index out of range");
        }
        *out = dec->value.eigenfunction_at(j, r);
    });
}

rk_status rk_decomposition_grid(const rk_decomposition* dec, double* centers, double* weights) {
    return guarded([&] {
        require(dec, "decomposition");
        const Grid& g = dec->value.grid();
        if (centers) {
            std::copy(g.centers.begin(), g.centers.end(), centers);
        }
        if (weights) {
            std::copy(g.weights.begin(), g.weights.end(), weights);
        }
    });
}

rk_status rk_heat_kernel(const rk_decomposition* dec, double t, double r1, double r2, double* value, int* tail_ok) {
    return guarded([&] {
        require(dec, "decomposition");
        require(value, "value");
        const HeatKernelValue q = dec->value.heat_kernel(t, r1, r2);
        *value = q.value;
        if (tail_ok) {
            *tail_ok = q.tail_ok ? 1 : 0;
        }
    });
}

rk_status rk_kernel_face_cdf(const rk_decomposition* dec, double t, double source, double* out) {
    return guarded([&] {
        require(dec, "decomposition");
        require(out, "out");
        const auto cdf = dec->value.kernel_face_cdf(t, source);
        std::copy(cdf.begin(), cdf.end(), out);
    });
}

double rk_default_time_step(double R) { return default_time_step(R); }

rk_status rk_heat_kernel_fd(const rk_model* model, double R, int n, double t, double source, double dt,
                            rk_boundary mode, double* out) {
    return guarded([&] {
        require(out, "out");
        const auto q = heat_kernel_fd(spec_of(model), R, n, t, source, dt, mode_of(mode));
        std::copy(q.begin(), q.end(), out);
    });
}

rk_status rk_survival_curve(const rk_model* model, double R, int n, double r0, const double* times, size_t count,
                            double dt, double* out) {
    return guarded([&] {
        require(times, "times");
        require(out, "out");
        const auto s = survival_curve(spec_of(model), R, n, r0, std::span<const double>(times, count), dt);
        std::copy(s.begin(), s.end(), out);
    });
}

rk_status rk_mean_exit_time(const rk_model* model, double R, int n, double r0, double dt, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = mean_exit_time(spec_of(model), R, n, r0, dt);
    });
}

rk_status rk_simulate_radial(const rk_model* model, double r0, const rk_sim_config* config, rk_ensemble** out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        const SimConfig c{config->seed, config->n_paths, config->dt, config->t_final, config->absorb_at};
        *out = new rk_ensemble{simulate_radial(spec_of(model), r0, c, config->threads)};
    });
}

void rk_ensemble_free(rk_ensemble* ensemble) { delete ensemble; }

int64_t rk_ensemble_size(const rk_ensemble* ensemble) { return ensemble ? ensemble->value.size() : 0; }

rk_status rk_exit_probability(const rk_ensemble* ensemble, double t, double* estimate, double* std_error) {
    return guarded([&] {
        require(ensemble, "ensemble");
        require(estimate, "estimate");
        const McEstimate e = exit_probability_mc(ensemble->value, t);
        *estimate = e.estimate;
        if (std_error) {
            *std_error = e.std_error;
        }
    });
}

rk_status rk_empirical_cdf(const rk_ensemble* ensemble, double t, double s, double* estimate, double* std_error) {
    return guarded([&] {
        require(ensemble, "ensemble");
        require(estimate, "estimate");
        const McEstimate e = empirical_cdf(ensemble->value, t, s);
        *estimate = e.estimate;
        if (std_error) {
            *std_error = e.std_error;
        }
    });
}

rk_status rk_mean_absorption_time(const rk_ensemble* ensemble, double* mean, double* std_error, int64_t* censored) {
    return guarded([&] {
        require(ensemble, "ensemble");
        require(mean, "mean");
        const MeanExitEstimate e = mean_absorption_time(ensemble->value);
        *mean = e.mean;
        if (std_error) {
            *std_error = e.std_error;
        }
        if (censored) {
            *censored = e.censored;
        }
    });
}

rk_status rk_ensemble_to_csv(const rk_ensemble* ensemble, char** out) {
    return guarded([&] {
        require(ensemble, "ensemble");
        require(out, "out");
        *out = to_c_string(ensemble_to_csv(ensemble->value));
    });
}

rk_status rk_simulate_ambient(rk_family family, int m, uint64_t seed, int64_t n_paths, double dt, double t_final,
                              unsigned threads, double* radii) {
    return guarded([&] {
        require(radii, "radii");
        const AmbientConfig c{seed, n_paths, dt, t_final};
        const auto r = simulate_ambient_radial(family_of(family), m, c, std::nullopt, threads);
        std::copy(r.begin(), r.end(), radii);
    });
}

rk_status rk_validate(const char* level, uint64_t seed, unsigned threads, rk_report** out) {
    return guarded([&] {
        require(level, "level");
        require(out, "out");
        ValidationOptions options;
        options.level = parse_validation_level(level);
        options.seed = seed;
        options.threads = threads;
        auto report = std::make_unique<rk_report>();
        report->value = run_validation(options, &report->timings);
        *out = report.release();
    });
}

rk_status rk_report_from_json(const char* json, rk_report** out) {
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        *out = new rk_report{ValidationReport::from_json(json), {}};
    });
}

void rk_report_free(rk_report* report) { delete report; }

int rk_report_passed(const rk_report* report) { return report && report->value.passed() ? 1 : 0; }

rk_status rk_report_to_json(const rk_report* report, char** out) {
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        *out = to_c_string(report->value.to_json());
    });
}

rk_status rk_report_to_text(const rk_report* report, char** out) {
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        *out = to_c_string(report->value.to_text());
    });
}

size_t rk_report_timing_count(const rk_report* report) { return report ? report->timings.size() : 0; }

rk_status rk_report_timing(const rk_report* report, size_t i, int* criterion, double* seconds,
                           double* limit_seconds) {
    return guarded([&] {
        require(report, "report");
        if (i >= report->timings.size()) {
            throw ConfigError("timing index out of range");
        }
        const CriterionResult& r = report->timings[i];
        if (criterion) {
            *criterion = r.id;
        }
        if (seconds) {
            *seconds = r.seconds;
        }
        if (limit_seconds) {
            *limit_seconds = r.time_limit_seconds;
        }
    });
}

} // extern "C"
