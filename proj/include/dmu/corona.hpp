// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dmu/spaces.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dmu {

struct DeltaCertificate {
    double delta = 0.0;
    double grid_min = 0.0;   ///< min of |f| over the grid
    double lipschitz = 0.0;  ///< sum_j sum_k |coeff_k of f_j'|
    double spacing = 0.0;    ///< every point of the closed disk is this close to a grid node
    int n_r = 0;
    int n_theta = 0;
    cplx argmin;
};

/// delta = min_grid |f| - L * spacing over a polar grid of the closed disk (boundary ring included).
/// Throws DomainError when that is not positive.
DeltaCertificate certify_delta(std::span<const CPoly> f, int n_r = 400, int n_theta = 1024);

struct CoronaProblem {
    std::vector<CPoly> f;
    CPoly h;
    MeasureSpec mu;
    std::optional<double> delta;  ///< user supplied lower bound for inf |f|
};

/// phi_j = conj(f_j) / |f|^2 and the two derived fields, F(j, k) = phi_j dbar(phi_k) and
/// dF(j, k) = d(phi_j dbar(phi_k)). Only f and f' enter.
struct KoszulFields {
    std::vector<cplx> phi;
    Eigen::MatrixXcd F;
    Eigen::MatrixXcd dF;
    cplx h;  ///< h(z); the transformed densities are F(j, k) * h
};
KoszulFields koszul_fields(std::span<const CPoly> f, const CPoly& h, cplx z);

struct CoronaOptions {
    double radius = 0.95;     ///< evaluation grid stays inside |z| <= radius
    int rings = 25;
    int angles = 144;
    StarResolution star{};    ///< polar rule of each Cauchy transform
    std::optional<int> degree;  ///< fixed N_g; otherwise chosen from the fit residual
    int max_degree = 64;
    double fit_target = 1e-7;
    double refine_tol = 1e-6;  ///< allowed relative change of g under 1.5x star resolution
    int probes = 24;
    int jobs = 1;
    Resolution norm_res{};
};

struct CoronaSolution {
    int n = 0;
    std::vector<CPoly> f;
    CPoly h;
    std::string measure_label;
    double delta = 0.0;
    std::string delta_provenance;  ///< "grid+Lipschitz" or "user-supplied"
    CoronaOptions options;

    std::vector<cplx> grid;
    std::vector<std::vector<cplx>> g;          ///< g[j][i] at grid[i]
    /// max over the grid of |(a_jk - a_kj) + (a_kj - a_jk)|, zero by construction
    double antisymmetry_defect = 0.0;
    /// max |sum_j f_j g_j - h| / max|h| on the grid
    double grid_bezout_residual = 0.0;
    double koszul_defect = 0.0;  ///< relative size of sum_j f_j sum_k (a_jk - a_kj) f_k
    std::vector<CPoly> g_hat;
    int degree = 0;
    std::vector<double> fit_residual;  ///< max |g_hat_j - g_j| / max |g_j| on the grid
    double refinement_delta = 0.0;     ///< relative change of g at probe points under 1.5x star resolution
    std::vector<double> g_norm;        ///< ||g_hat_j||_D(mu)
    double h_norm = 0.0;
    double bound = 0.0;                ///< n^3 delta^-4 ||h||_D(mu)
    std::vector<double> ratio;         ///< g_norm / bound
};

/// Values of g_j at arbitrary points of the open disk using the solution's transform data.
std::vector<std::vector<cplx>> evaluate_g(const CoronaSolution& s, std::span<const cplx> points,
                                          std::optional<StarResolution> star = std::nullopt);
/// a_jk at arbitrary points, a[j * n + k][i]; diagonal entries left zero.
std::vector<std::vector<cplx>> transforms(std::span<const CPoly> f, const CPoly& h, std::span<const cplx> points,
                                          StarResolution star, int jobs = 1);

CoronaSolution corona_solve(const CoronaProblem& problem, const CoronaOptions& opt = {});

struct CoronaVerification {
    double bezout_residual = 0.0;      ///< max |sum f_j g_hat_j - h| / max|h| over the verification grid
    double grid_bezout_residual = 0.0; ///< same with grid values of g
    std::vector<double> dbar_residual; ///< max |dbar g_j| / max |g_j| at interior probes
    double dbar_step = 0.0;
    std::vector<double> fit_residual;
    std::vector<double> g_norm;
    std::vector<double> ratio;
    bool norms_finite = true;
    int verification_points = 0;
};
/// Verification grid: `rings` x `angles` polar grid of radius opt.radius.
CoronaVerification corona_verify(const CoronaSolution& s, const CoronaProblem& problem, int rings = 40, int angles = 200);

/// Polar grid {0} + rings r_i = radius * i / rings at `angles` equally spaced angles (offset by half a step
/// on odd rings).
std::vector<cplx> polar_grid(double radius, int rings, int angles);

}  // namespace dmu
