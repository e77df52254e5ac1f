// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dmu/measure.hpp"

#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace dmu {

/// Value of U at a disk atom's own location.
inline constexpr double kInfiniteWeight = std::numeric_limits<double>::infinity();

/// U_mu(z): logarithmic part for mass in the disk (divided by 1 - |w|^2) plus Poisson part
/// for mass on the circle. Returns kInfiniteWeight at a disk atom.
double eval_U(const MeasureSpec& mu, cplx z, const Resolution& res = {});

/// V_mu(z) = int (1 - |z|^2) / |1 - conj(zeta) z|^2 dmu(zeta).
double eval_V(const MeasureSpec& mu, cplx z, const Resolution& res = {});

struct WeightField {
    std::vector<cplx> points;
    std::vector<double> U;  ///< empty unless requested
    std::vector<double> V;
    Resolution res;
};

WeightField weight_field(const MeasureSpec& mu, std::span<const cplx> points, bool want_U, bool want_V,
                         const Resolution& res = {}, int jobs = 1);

/// V_mu at the nodes of a disk rule. Radial disk parts are evaluated once per ring.
std::vector<double> v_on_rule(const MeasureSpec& mu, const DiskRule& rule, int jobs = 1);

/// Radial pieces for a radial density rho at x = |z|^2 (complement passed separately).
double radial_V(const DiskDensity& d, double x, double one_minus_x);
double radial_U(const DiskDensity& d, double x, double one_minus_x);

/// T_J(x) = sum_a x^a / ((J + a)(J + a + 1)) = int_0^1 t^(J-1) (1 - t) / (1 - x t) dt for J = 1..jmax.
/// T_J(1) = 1 / J.
std::vector<double> t_kernel(int jmax, double x);

/// int_D z^(j-1) conj(z)^(k-1) (1 - |z|^2) / |1 - conj(zeta) z|^2 dA(z) for j, k >= 1, zeta in the closed disk.
cplx v_moment(cplx zeta, int j, int k);

/// Gauss-Legendre rule in s on [0, 1] graded at s = 1 by the density's exponent,
/// weights already multiplied by rho(s).
struct RadialRule {
    std::vector<double> s;
    std::vector<double> one_minus_s;
    std::vector<double> weight;
};
RadialRule radial_rule(const DiskDensity& d, int n);

struct EnvelopeReport {
    int samples = 0;
    int violations = 0;
    int lower_violations = 0;
    int upper_violations = 0;
    /// violations of the weaker upper bound 2 mu / (1 - |z|), which the Poisson kernel of a
    /// circle atom respects; (1 - |z|^2) / |1 - conj(zeta) z|^2 <= (1 + r) / (1 - r)
    int weak_upper_violations = 0;
    double mass = 0.0;
    /// min over samples of V - lower and upper - V
    double min_lower_margin = 0.0;
    double min_upper_margin = 0.0;
    bool ok() const { return violations == 0; }
};

/// (1 - |z|^2) mu / 4 <= V_mu(z) <= 2 mu / (1 - |z|^2) with 1e-9 slack.
EnvelopeReport check_v_envelope(const MeasureSpec& mu, std::span<const cplx> samples, const Resolution& res = {});

struct KernelSample {
    cplx lambda;
    cplx zeta;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double ratio_refined = 0.0;
    double relative_change = 0.0;
};

struct KernelEstimateReport {
    double s = 0.0, r = 0.0, t = 0.0;
    std::vector<KernelSample> samples;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    double max_relative_change = 0.0;
    bool finite = true;
    bool stable(double tol = 0.05) const { return finite && max_relative_change < tol; }
};

struct KernelEstimateOptions {
    int n_r = 96;         ///< radial nodes of the graded tensor rule (interior zeta)
    int n_theta = 512;    ///< angular nodes
    int n_star = 96;      ///< nodes per direction of the boundary rule (zeta on the circle)
    int jobs = 1;
};

/// LHS = int_D (1 - |z|^2)^s / (|1 - lambda conj(z)|^r |1 - conj(zeta) z|^t) dA,
/// RHS = (1 - |lambda|^2)^(-(r - s - 2)) |1 - conj(zeta) lambda|^(-t),
/// at the base resolution and at doubled resolution.
KernelEstimateReport check_kernel_estimate(double s, double r, double t,
                                           std::span<const std::pair<cplx, cplx>> samples,
                                           const KernelEstimateOptions& opt = {});

/// log|(1 - conj(zeta) z) / (z - zeta)|^2 - (1 - |z|^2)(1 - |zeta|^2) / |1 - conj(zeta) z|^2,
/// minimum over the pairs. Pairs with z == zeta are skipped.
double log_poisson_gap(std::span<const std::pair<cplx, cplx>> pairs);

}  // namespace dmu
