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

#ifndef RADIALKIT_H
#define RADIALKIT_H

/* C interface to radialkit. Every fallible call returns an rk_status; on
   failure rk_last_error() describes the most recent error on the calling
   thread. Strings returned through char** belong to the caller and are
   released with rk_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RK_API __declspec(dllexport)
#else
#define RK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rk_status {
    RK_OK = 0,
    RK_ERR_CONFIG = 1,      /* invalid argument or configuration */
    RK_ERR_DOMAIN = 2,      /* point or parameter outside the model domain */
    RK_ERR_CONVERGENCE = 3, /* eigensolver failed to converge */
    RK_ERR_NUMERICAL = 4,   /* non-finite intermediate result */
    RK_ERR_INTERNAL = 5
} rk_status;

typedef enum rk_family { RK_KAHLER = 0, RK_QUATERNION_KAHLER = 1 } rk_family;

typedef enum rk_boundary { RK_DIRICHLET = 0, RK_CLOSED = 1 } rk_boundary;

typedef struct rk_model {
    rk_family family;
    int m;
    double k;
} rk_model;

typedef struct rk_eigen_estimate {
    double value;
    double error_estimate;
    double coarse;
    double fine;
} rk_eigen_estimate;

typedef struct rk_sim_config {
    uint64_t seed;
    int64_t n_paths;
    double dt;
    double t_final;
    double absorb_at;
    unsigned threads; /* 0: hardware concurrency; results do not depend on it */
} rk_sim_config;

typedef struct rk_decomposition rk_decomposition;
typedef struct rk_ensemble rk_ensemble;
typedef struct rk_report rk_report;

/* ---- general ---- */
RK_API const char* rk_version(void);
RK_API const char* rk_last_error(void);
RK_API const char* rk_status_string(rk_status status);
RK_API void rk_string_free(char* text);

/* ---- model geometry ---- */
RK_API rk_status rk_parse_family(const char* text, rk_family* out);
RK_API const char* rk_family_name(rk_family family);
RK_API rk_status rk_model_check(const rk_model* model);
RK_API rk_status rk_real_dimension(const rk_model* model, int* out);
RK_API rk_status rk_domain_max(const rk_model* model, double* out);
RK_API rk_status rk_comparison_f(double k, double r, double* out);
RK_API rk_status rk_radial_drift(const rk_model* model, double r, double* out);
RK_API rk_status rk_measure_density(const rk_model* model, double r, double* out);
/* (H, Ric_perp) for Kahler models, (Q, Ric_perp) for quaternion-Kahler. */
RK_API rk_status rk_curvature_constants(const rk_model* model, double* sectional, double* orthogonal_ricci);
RK_API rk_status rk_model_spectrum(rk_family family, int m, int level, double* out);
RK_API rk_status rk_compact_model_volume(rk_family family, int m, double* out);
RK_API rk_status rk_small_ball_volume(rk_family family, int m, double s, double* out);

/* ---- Sturm-Liouville spectra ---- */
/* Lowest `count` Richardson-extrapolated eigenvalues from resolutions n, 2n. */
RK_API rk_status rk_richardson_eigenvalues(const rk_model* model, double R, int count, rk_boundary mode, int n,
                                           rk_eigen_estimate* out);
/* Extrapolates the lowest `count` levels of two decompositions of the same
   problem at resolutions n and 2n. */
RK_API rk_status rk_richardson_combine(const rk_decomposition* coarse, const rk_decomposition* fine, int count,
                                       rk_eigen_estimate* out);

RK_API rk_status rk_decomposition_create(const rk_model* model, double R, int n, int count, rk_boundary mode,
                                         rk_decomposition** out);
/* Enough eigenpairs for the kernel truncation bound at time t. */
RK_API rk_status rk_decomposition_create_for_time(const rk_model* model, double R, int n, double t,
                                                  rk_boundary mode, rk_decomposition** out);
RK_API rk_status rk_decomposition_from_json(const char* json, rk_decomposition** out);
RK_API rk_status rk_decomposition_to_json(const rk_decomposition* dec, char** out);
RK_API void rk_decomposition_free(rk_decomposition* dec);
RK_API size_t rk_decomposition_count(const rk_decomposition* dec);
RK_API int rk_decomposition_size(const rk_decomposition* dec); /* grid cells n */
RK_API rk_status rk_decomposition_eigenvalue(const rk_decomposition* dec, size_t j, double* out);
RK_API rk_status rk_decomposition_eigenfunction_at(const rk_decomposition* dec, size_t j, double r, double* out);
/* Grid cell centres and mu-weights; both arrays hold n entries. */
RK_API rk_status rk_decomposition_grid(const rk_decomposition* dec, double* centers, double* weights);
RK_API rk_status rk_heat_kernel(const rk_decomposition* dec, double t, double r1, double r2, double* value,
                                int* tail_ok);
/* n + 1 entries: kernel mass below each face i h. */
RK_API rk_status rk_kernel_face_cdf(const rk_decomposition* dec, double t, double source, double* out);

/* ---- Crank-Nicolson evolution ---- */
RK_API double rk_default_time_step(double R);
/* Kernel column on the n cell centres. */
RK_API rk_status rk_heat_kernel_fd(const rk_model* model, double R, int n, double t, double source, double dt,
                                   rk_boundary mode, double* out);
RK_API rk_status rk_survival_curve(const rk_model* model, double R, int n, double r0, const double* times,
                                   size_t count, double dt, double* out);
RK_API rk_status rk_mean_exit_time(const rk_model* model, double R, int n, double r0, double dt, double* out);

/* ---- radial SDE ---- */
RK_API rk_status rk_simulate_radial(const rk_model* model, double r0, const rk_sim_config* config,
                                    rk_ensemble** out);
RK_API void rk_ensemble_free(rk_ensemble* ensemble);
RK_API int64_t rk_ensemble_size(const rk_ensemble* ensemble);
RK_API rk_status rk_exit_probability(const rk_ensemble* ensemble, double t, double* estimate, double* std_error);
RK_API rk_status rk_empirical_cdf(const rk_ensemble* ensemble, double t, double s, double* estimate,
                                  double* std_error);
RK_API rk_status rk_mean_absorption_time(const rk_ensemble* ensemble, double* mean, double* std_error,
                                         int64_t* censored);
RK_API rk_status rk_ensemble_to_csv(const rk_ensemble* ensemble, char** out);

/* ---- sphere Brownian motion ---- */
/* Radial parts at t_final of n_paths paths from the north pole; `radii`
   holds n_paths entries. */
RK_API rk_status rk_simulate_ambient(rk_family family, int m, uint64_t seed, int64_t n_paths, double dt,
                                     double t_final, unsigned threads, double* radii);

/* ---- validation ---- */
/* level: "quick" or "full". */
RK_API rk_status rk_validate(const char* level, uint64_t seed, unsigned threads, rk_report** out);
RK_API rk_status rk_report_from_json(const char* json, rk_report** out);
RK_API void rk_report_free(rk_report* report);
RK_API int rk_report_passed(const rk_report* report);
RK_API rk_status rk_report_to_json(const rk_report* report, char** out);
RK_API rk_status rk_report_to_text(const rk_report* report, char** out);
/* Per-criterion wall time; empty for reports read from JSON. */
RK_API size_t rk_report_timing_count(const rk_report* report);
RK_API rk_status rk_report_timing(const rk_report* report, size_t i, int* criterion, double* seconds,
                                  double* limit_seconds);

#ifdef __cplusplus
}
#endif

#endif /* RADIALKIT_H */
