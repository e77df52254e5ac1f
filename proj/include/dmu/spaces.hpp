// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dmu/measure.hpp"

#include <Eigen/Dense>

#include <span>
#include <string_view>
#include <vector>

namespace dmu {

/// Dmu: the V-weighted D(mu) inner product. Emu: the weighted Bergman form
/// |f(0)|^2 + int |f'|^2 (1 - |z|^2)^2 / V dA taken literally. CauchyDual: the norm carried over
/// from D(mu) by the Cauchy duality, ||U f|| = ||f||_D(mu).
enum class Space { H2, Dmu, Emu, CauchyDual };

std::string_view to_string(Space s);
Space parse_space(std::string_view text);

enum class NormMode { U, V, measure };
std::string_view to_string(NormMode m);
NormMode parse_norm_mode(std::string_view text);

enum class LocalMethod { boundary, area };

/// D_lambda(f) for |lambda| <= 1. The boundary method is exact coefficient arithmetic;
/// the area method integrates |f'|^2 against the weight of a unit point mass at lambda.
double local_dirichlet(const CPoly& f, cplx lambda, LocalMethod method = LocalMethod::boundary,
                       const Resolution& res = {});

/// ||f||^2 in D(mu) by the chosen route; the seminorm drops the H^2 part.
double dmu_norm_sq(const CPoly& f, const MeasureSpec& mu, NormMode mode = NormMode::V, const Resolution& res = {});
double dmu_seminorm_sq(const CPoly& f, const MeasureSpec& mu, NormMode mode = NormMode::V, const Resolution& res = {});

/// |f(0)|^2 + int |f'|^2 (1 - |z|^2)^2 / V_mu dA. Throws DomainError for the zero measure.
double emu_norm_sq(const CPoly& f, const MeasureSpec& mu, const Resolution& res = {});

/// int_D |f|^2 (1 - |z|^2) dA, exact.
double bergman_weighted_norm_sq(const CPoly& f);

/// Constants with c1 * emu <= h2 and emu >= c2 * bergman_weighted, derived from the V envelope.
struct SandwichConstants {
    double c1 = 0.0;
    double c2 = 0.0;
};
SandwichConstants emu_sandwich_constants(const MeasureSpec& mu, const Resolution& res = {});

/// W[p][q] = int_D z^p conj(z)^q V_mu(z) dA for 0 <= p, q <= P, assembled from exact moments of the
/// kernel against each part of mu.
Eigen::MatrixXcd v_moment_matrix(const MeasureSpec& mu, int P, const Resolution& res = {});

struct GramMatrix {
    Space space = Space::H2;
    std::string measure_label;
    int degree = 0;
    Eigen::MatrixXcd G;  ///< G(j, k) = <z^j, z^k>
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    double hermitian_defect = 0.0;
    /// CauchyDual only: change of the block when the inverted section is doubled.
    double truncation_delta = 0.0;
    double condition() const { return max_eigenvalue / min_eigenvalue; }
};

GramMatrix gram_matrix(Space space, const MeasureSpec& mu, int N, const Resolution& res = {});

/// sum_{j,k} f_j conj(g_k) G(j, k); coefficients beyond the Gram size must vanish.
cplx inner(const Eigen::MatrixXcd& G, const CPoly& f, const CPoly& g);

/// Truncated reproducing kernel K_N(z, w) = sum (G^-1)(k, j) z^j conj(w)^k.
struct KernelApprox {
    GramMatrix gram;
    Eigen::MatrixXcd inverse;
    cplx operator()(cplx z, cplx w) const;
};
KernelApprox kernel_approx(Space space, const MeasureSpec& mu, int N, const Resolution& res = {});
cplx kernel_eval(Space space, const MeasureSpec& mu, int N, cplx z, cplx w, const Resolution& res = {});

/// (U f)(lambda) = f(lambda) + lambda int f'(z) (1 - lambda conj(z))^-2 V_mu(z) dA(z).
/// Circle parts use closed forms; disk parts integrate a precomputed V field.
class CauchyDualTransform {
public:
    CauchyDualTransform(const MeasureSpec& mu, const Resolution& res = {}, int jobs = 1);
    cplx operator()(const CPoly& f, cplx lambda) const;

private:
    MeasureSpec mu_;
    Resolution res_;
    DiskRule rule_;
    std::vector<double> v_disk_;  ///< V of the disk-located parts at rule_ nodes
};

cplx cauchy_dual_transform(const CPoly& f, const MeasureSpec& mu, cplx lambda, const Resolution& res = {});

/// Taylor coefficients c_n = sum_j G(j, n) f_j of U f for n = 0..n_max (Gram route).
std::vector<cplx> cauchy_dual_coefficients(const CPoly& f, const MeasureSpec& mu, int n_max, const Resolution& res = {});

struct PairingCheck {
    cplx boundary_pairing;  ///< int_T p conj(U q), from coefficients of U q sampled on |lambda| = radius
    cplx inner_product;     ///< <p, q> in D(mu)
    double residual = 0.0;
    double scale = 0.0;  ///< ||p||_H2 ||q||_H2
    double radius = 0.0;
    int samples = 0;
};
PairingCheck duality_pairing_check(const CPoly& p, const CPoly& q, const MeasureSpec& mu, const Resolution& res = {},
                                   double radius = 0.6, int samples = 128);
PairingCheck duality_pairing_check(const CPoly& p, const CPoly& q, const CauchyDualTransform& U,
                                   const Eigen::MatrixXcd& gram, double radius = 0.6, int samples = 128);

/// ||f||^2_{L2(T)} + D-seminorms (measure route) of the analytic and anti-analytic parts.
double hd_norm_sq(const TrigPoly& f, const MeasureSpec& mu, const Resolution& res = {});

/// |sum |c_k|^2 - |p(0)|^2 - 2 int |p'|^2 log(1/|z|) dA|.
double green_check(const CPoly& p, const Resolution& res = {});

}  // namespace dmu
