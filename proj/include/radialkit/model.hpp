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

// Closed-form layer for the Kähler and quaternion-Kähler model spaces:
// comparison function, radial drifts, radial measures, curvature constants
// and the spectra of the compact models.
//
// Conventions: the radial generator is d^2/dr^2 + drift(r) d/dr, the
// curvature parameter k means holomorphic sectional curvature 4k (Kähler)
// or quaternionic sectional curvature 12k (quaternion Kähler).

#include <string>
#include <string_view>

namespace radialkit {

enum class ModelFamily { kahler, quaternion_kahler };

std::string_view to_string(ModelFamily family);

/// Accepts "kahler" / "quaternion" (and a few spellings of each).
ModelFamily parse_family(std::string_view text);

struct ModelSpec {
    ModelFamily family = ModelFamily::kahler;
    int m = 1;      // complex resp. quaternionic dimension
    double k = 0.0; // curvature parameter

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Builds a spec, throwing DomainError when m < 1 or k is not finite.
ModelSpec make_spec(ModelFamily family, int m, double k);

/// 2m for Kähler models, 4m for quaternion-Kähler models.
int real_dimension(const ModelSpec& spec);

/// pi / (2 sqrt k) for k > 0, +infinity otherwise.
double domain_max(const ModelSpec& spec);

/// F(k, r): sqrt(k) cot(sqrt(k) r), 1/r or sqrt|k| coth(sqrt|k| r).
/// Requires r > 0 and, for k > 0, r < pi / sqrt(k).
double comparison_F(double k, double r);

/// F(k, r) - 1/r. Finite at r = 0 (where it vanishes); evaluated by series
/// when |k| r^2 is small.
double comparison_F_regular(double k, double r);

/// (2m-2) F(k,r) + 2 F(k,2r) for Kähler, (4m-4) F(k,r) + 6 F(k,2r) for
/// quaternion Kähler. Requires 0 < r < domain_max(spec).
double radial_drift(const ModelSpec& spec, double r);

/// Coefficient c of the c/r singularity of the drift: real_dimension - 1.
double singular_drift_coefficient(const ModelSpec& spec);

/// radial_drift(r) - c/r, smooth on [0, domain_max).
double regular_drift(const ModelSpec& spec, double r);

/// Density of the radial measure mu_k (Kähler) or mu~_k (quaternion
/// Kähler) with respect to dr. Requires 0 <= r <= domain_max(spec).
double measure_density(const ModelSpec& spec, double r);

/// mu([0, s]) to leading order as s -> 0: (pi^m/m!) s^{2m} for Kähler,
/// (pi^{2m}/(2m)!) s^{4m} for quaternion Kähler.
double small_ball_volume(ModelFamily family, int m, double s);

/// Total radial mass of the compact k = 1 model: vol(CP^m) = pi^m / m!,
/// vol(HP^m) = pi^{2m} / (2m+1)!.
double compact_model_volume(ModelFamily family, int m);

/// Eigenvalue number `level` (>= 0, level 0 being the constants) of the
/// Laplacian of CP^m / HP^m: 4 l (l + m) resp. 4 l (l + 2m + 1).
double model_spectrum(ModelFamily family, int m, int level);

struct CurvatureConstants {
    double sectional; // H for Kähler, Q for quaternion Kähler
    double ric_perp;
};

/// Curvatures of the model with k in {-1, 0, 1}.
CurvatureConstants curvature_constants(const ModelSpec& spec);

struct Rescaling {
    ModelSpec unit;      // same family and m, k replaced by sign(k)
    double length_scale; // sqrt|k|
};

/// drift_spec(r) = s drift_unit(s r) and lambda(spec, R) = |k| lambda(unit, s R)
/// with s = sqrt|k|. Requires k != 0.
Rescaling rescale(const ModelSpec& spec);

/// Drift, density and domain of one radial comparison diffusion.
class RadialLaw {
public:
    explicit RadialLaw(const ModelSpec& spec);

    const ModelSpec& spec() const { return spec_; }
    double drift(double r) const { return radial_drift(spec_, r); }
    double density(double r) const { return measure_density(spec_, r); }
    double domain_max() const { return domain_max_; }

private:
    ModelSpec spec_;
    double domain_max_;
};

namespace detail {

// Unchecked kernels used by the simulation loops. Arguments are assumed to
// be inside the domain.
double regular_F_unchecked(double k, double r);
double regular_drift_unchecked(const ModelSpec& spec, double r);

} // namespace detail

} // namespace radialkit
