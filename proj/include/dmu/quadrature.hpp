// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dmu/poly.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace dmu {

/// Input that lies outside the domain an operation is defined on.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computation that could not reach the accuracy it certifies.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gauss-Legendre nodes and weights mapped to [0, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Uniform rule on the unit circle against |dzeta| / 2pi.
/// Exact for trigonometric polynomials of degree <= n - 1.
struct CircleRule {
    std::vector<cplx> nodes;
    double weight = 0.0;
    int size() const { return static_cast<int>(nodes.size()); }
};
CircleRule circle_rule(int n);

/// Product rule on the disk against normalized area dA = ds dtheta / 2pi with s = |w|^2.
///
/// The radial factor is Gauss-Legendre in s. With grading p > 1 the radial nodes are
/// s = 1 - u^p for Gauss-Legendre u, which clusters nodes at the circle and turns
/// boundary behaviour (1 - s)^beta into a smooth function of u when p * beta is an
/// integer. With p = 1 the rule integrates w^a conj(w)^b exactly for a = b <= 2 n_r - 1
/// and |a - b| < n_theta.
struct DiskRule {
    int n_r = 0;
    int n_theta = 0;
    double grading = 1.0;
    std::vector<double> ring_s;       ///< s = |w|^2 per ring
    std::vector<double> ring_weight;  ///< radial weight per ring (sums to 1)
    std::vector<cplx> nodes;          ///< ring-major: node(i, l) = nodes[i * n_theta + l]
    std::vector<double> weights;
    int size() const { return static_cast<int>(nodes.size()); }
};
DiskRule disk_rule(int n_r, int n_theta, double grading = 1.0);

/// Resolution of the polar rules centred at a point (singular kernels).
struct StarResolution {
    int radial = 48;
    int angular = 128;
};

/// Quadrature resolution shared by the space, potential and corona modules.
struct Resolution {
    int n_r = 64;
    int n_theta = 128;
    int n_circle = 256;
    StarResolution star{};
    /// Radial node count of the one-dimensional rules used for radial densities.
    int n_radial_1d = 256;
};

cplx integrate(const CircleRule& rule, const std::function<cplx(cplx)>& f);
cplx integrate(const DiskRule& rule, const std::function<cplx(cplx)>& f);

/// Node of a polar rule centred at `center`: w = center + rho e^{i psi}
/// (or the boundary variant below). `weight` integrates against dA.
struct StarNode {
    cplx w;
    double rho;
    double psi;
    double weight;
};

/// Polar rule covering the whole disk, centred at an interior point.
/// Radial substitution rho = R(psi) t^power with Gauss-Legendre t; trapezoid in psi.
/// power >= 2 absorbs rho log(rho) behaviour at the centre.
std::vector<StarNode> interior_star_rule(cplx center, StarResolution res, int power = 2);

/// Polar rule centred at a boundary point zeta: w = zeta (1 - rho e^{i psi}),
/// psi in (-pi/2, pi/2), rho in [0, 2 cos psi]. On these nodes (1 - |w|^2) / |1 - conj(zeta) w|^2
/// equals (2 cos psi - rho) / rho.
std::vector<StarNode> boundary_star_rule(cplx zeta, StarResolution res);

/// Distance from an interior point to the unit circle along direction psi.
double ray_length(cplx center, double psi);

/// int_D log|(1 - conj(w) z) / (z - w)|^2 F(w) dA(w) for F bounded near z.
double log_kernel_integral(const std::function<double(cplx)>& F, cplx z, StarResolution res = {});

/// int_D F(w) (1 - |w|^2) / |1 - conj(zeta) w|^2 dA(w) for zeta on the unit circle.
double poisson_area_integral(const std::function<double(cplx)>& F, cplx zeta, StarResolution res = {});

/// Planar Cauchy transform int_D F(w) / (z - w) dA(w) at each target, using a polar rule
/// about the target where the kernel times the Jacobian is -e^{-i psi} / pi.
std::vector<cplx> cauchy_transform_field(const std::function<cplx(cplx)>& F, std::span<const cplx> targets,
                                         StarResolution res = {}, int jobs = 1);

/// Nodes and complex weights c_i such that sum_i c_i F(w_i) approximates the Cauchy transform
/// at `target`. Shared by all integrands evaluated at the same target.
struct CauchyRule {
    std::vector<cplx> nodes;
    std::vector<cplx> weights;
};
CauchyRule cauchy_rule(cplx target, StarResolution res);

}  // namespace dmu
