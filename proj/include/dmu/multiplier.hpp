// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dmu/spaces.hpp"

#include <span>
#include <vector>

namespace dmu {

struct CarlesonReport {
    /// largest lambda with A v = lambda G v over polynomials of degree <= N
    double constant = 0.0;
    int degree = 0;
    std::string nu_label;
    std::string mu_label;
    /// constant(N) - constant(N - 1); zero at N = 0
    double refinement_delta = 0.0;
    double gram_condition = 0.0;
};

/// Largest generalized eigenvalue of (A, G) with A(j, k) = int z^j conj(z)^k dnu, G the D(mu) Gram.
/// ν must not charge the circle.
CarlesonReport carleson_constant(const MeasureSpec& nu, const MeasureSpec& mu, int N, const Resolution& res = {});

/// Same with dnu = |psi|^2 V_mu dA, built from the V-moment matrix.
CarlesonReport carleson_constant_weighted(const CPoly& psi, const MeasureSpec& mu, int N, const Resolution& res = {});

/// sup over degree <= N polynomials p of ||phi p|| / ||p|| in the given space.
double multiplier_norm_lb(const CPoly& phi, const MeasureSpec& mu, int N, Space space = Space::Dmu,
                          const Resolution& res = {});

/// Operator norm of multiplication by z from degree <= N into degree <= N + 1.
double shift_norm(Space space, const MeasureSpec& mu, int N, const Resolution& res = {});

struct SupNorm {
    double value = 0.0;        ///< max found (a lower bound, attained at `argument`)
    double upper_bound = 0.0;  ///< grid max plus derivative bound times half the grid spacing
    double argument = 0.0;
};
/// sup over the circle of |phi|.
SupNorm sup_on_circle(const CPoly& phi, int grid = 4096);

struct MultiplierCertificate {
    SupNorm sup;
    CarlesonReport carleson;  ///< of |phi'|^2 V_mu dA
};
MultiplierCertificate multiplier_certificate(const CPoly& phi, const MeasureSpec& mu, int N, int grid = 4096,
                                             const Resolution& res = {});

/// Smallest eigenvalue of [(1 - conj(phi(w_i)) phi(w_j)) K_N(w_j, w_i)].
double pick_positivity(Space space, const MeasureSpec& mu, int N, const CPoly& phi, std::span<const cplx> points,
                       const Resolution& res = {});
double pick_positivity(const KernelApprox& kernel, const CPoly& phi, std::span<const cplx> points);

/// Largest generalized eigenvalue of the Hermitian pencil (A, B), B positive definite.
double max_generalized_eigenvalue(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

}  // namespace dmu
