// SPDX-License-Identifier: Apache-2.0
#include "dmu/quadrature.hpp"

#include "dmu/parallel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dmu {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(cplx v, const char* where) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NumericalError(std::string(where) + ": non-finite integrand value at a node");
}

}  // namespace

GaussRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: node count must be positive");
    GaussRule g;
    g.nodes.resize(static_cast<std::size_t>(n));
    g.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1,1] -> [0,1]
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        g.nodes[lo] = 0.5 * (1.0 - x);
        g.nodes[hi] = 0.5 * (1.0 + x);
        g.weights[lo] = 0.5 * w;
        g.weights[hi] = 0.5 * w;
    }
    if (n == 1) {
        g.nodes[0] = 0.5;
        g.weights[0] = 1.0;
    }
    return g;
}

CircleRule circle_rule(int n) {
    if (n < 1) throw DomainError("circle_rule: node count must be positive");
    CircleRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) r.nodes[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * kPi * k / n);
    r.weight = 1.0 / n;
    return r;
}

DiskRule disk_rule(int n_r, int n_theta, double grading) {
    if (n_r < 1 || n_theta < 1) throw DomainError("disk_rule: node counts must be positive");
    if (!(grading >= 1.0)) throw DomainError("disk_rule: grading must be >= 1");
    DiskRule r;
    r.n_r = n_r;
    r.n_theta = n_theta;
    r.grading = grading;
    const GaussRule g = gauss_legendre(n_r);
    r.ring_s.resize(static_cast<std::size_t>(n_r));
    r.ring_weight.resize(static_cast<std::size_t>(n_r));
    for (int i = 0; i < n_r; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        if (grading == 1.0) {
            r.ring_s[ii] = g.nodes[ii];
            r.ring_weight[ii] = g.weights[ii];
        } else {
            const double u = g.nodes[ii];
            r.ring_s[ii] = 1.0 - std::pow(u, grading);
            r.ring_weight[ii] = g.weights[ii] * grading * std::pow(u, grading - 1.0);
        }
    }
    r.nodes.reserve(static_cast<std::size_t>(n_r) * n_theta);
    r.weights.reserve(static_cast<std::size_t>(n_r) * n_theta);
    for (int i = 0; i < n_r; ++i) {
        const double rad = std::sqrt(r.ring_s[static_cast<std::size_t>(i)]);
        for (int l = 0; l < n_theta; ++l) {
            r.nodes.push_back(std::polar(rad, 2.0 * kPi * l / n_theta));
            r.weights.push_back(r.ring_weight[static_cast<std::size_t>(i)] / n_theta);
        }
    }
    return r;
}

cplx integrate(const CircleRule& rule, const std::function<cplx(cplx)>& f) {
    cplx acc = 0.0;
    for (const auto& z : rule.nodes) {
        const cplx v = f(z);
        require_finite(v, "integrate(circle)");
        acc += v;
    }
    return acc * rule.weight;
}

cplx integrate(const DiskRule& rule, const std::function<cplx(cplx)>& f) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const cplx v = f(rule.nodes[i]);
        require_finite(v, "integrate(disk)");
        acc += rule.weights[i] * v;
    }
    return acc;
}

double ray_length(cplx center, double psi) {
    const cplx e = std::polar(1.0, psi);
    const double b = std::real(std::conj(center) * e);
    const double c = 1.0 - std::norm(center);
    const double root = std::sqrt(b * b + c);
    // Avoid cancellation in -b + root when b > 0.
    return b > 0.0 ? c / (b + root) : root - b;
}

std::vector<StarNode> interior_star_rule(cplx center, StarResolution res, int power) {
    if (std::abs(center) >= 1.0) throw DomainError("interior_star_rule: centre must lie in the open disk");
    if (res.radial < 1 || res.angular < 1) throw DomainError("interior_star_rule: bad resolution");
    const GaussRule g = gauss_legendre(res.radial);
    std::vector<StarNode> out;
    out.reserve(static_cast<std::size_t>(res.radial) * res.angular);
    const double dpsi = 2.0 * kPi / res.angular;
    for (int j = 0; j < res.angular; ++j) {
        const double psi = dpsi * j;
        const double R = ray_length(center, psi);
        const cplx e = std::polar(1.0, psi);
        for (int i = 0; i < res.radial; ++i) {
            const double t = g.nodes[static_cast<std::size_t>(i)];
            const double rho = R * std::pow(t, power);
            // rho drho = R^2 power t^(2 power - 1) dt; dA = rho drho dpsi / pi
            const double w = g.weights[static_cast<std::size_t>(i)] * R * R * power * std::pow(t, 2 * power - 1) *
                             dpsi / kPi;
            out.push_back({center + rho * e, rho, psi, w});
        }
    }
    return out;
}

std::vector<StarNode> boundary_star_rule(cplx zeta, StarResolution res) {
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw DomainError("boundary_star_rule: point must lie on the circle");
    const cplx z0 = zeta / std::abs(zeta);
    const GaussRule gt = gauss_legendre(res.radial);
    const GaussRule gp = gauss_legendre(res.angular);
    std::vector<StarNode> out;
    out.reserve(static_cast<std::size_t>(res.radial) * res.angular);
    for (int j = 0; j < res.angular; ++j) {
        const double psi = kPi * (gp.nodes[static_cast<std::size_t>(j)] - 0.5);
        const double wpsi = kPi * gp.weights[static_cast<std::size_t>(j)];
        const double L = 2.0 * std::cos(psi);
        const cplx e = std::polar(1.0, psi);
        for (int i = 0; i < res.radial; ++i) {
            const double t = gt.nodes[static_cast<std::size_t>(i)];
            const double rho = L * t;
            // rho drho = L^2 t dt
            const double w = gt.weights[static_cast<std::size_t>(i)] * L * L * t * wpsi / kPi;
            out.push_back({z0 * (1.0 - rho * e), rho, psi, w});
        }
    }
    return out;
}

double log_kernel_integral(const std::function<double(cplx)>& F, cplx z, StarResolution res) {
    if (std::abs(z) >= 1.0) throw DomainError("log_kernel_integral: point must lie in the open disk");
    double acc = 0.0;
    for (const auto& n : interior_star_rule(z, res, 3)) {
        const double f = F(n.w);
        if (!std::isfinite(f)) throw NumericalError("log_kernel_integral: non-finite integrand value at a node");
        if (f == 0.0) continue;
        const double kernel = std::log(std::norm(1.0 - std::conj(z) * n.w)) - 2.0 * std::log(n.rho);
        acc += n.weight * kernel * f;
    }
    return acc;
}

double poisson_area_integral(const std::function<double(cplx)>& F, cplx zeta, StarResolution res) {
    double acc = 0.0;
    for (const auto& n : boundary_star_rule(zeta, res)) {
        const double f = F(n.w);
        if (!std::isfinite(f)) throw NumericalError("poisson_area_integral: non-finite integrand value at a node");
        acc += n.weight * (2.0 * std::cos(n.psi) - n.rho) / n.rho * f;
    }
    return acc;
}

CauchyRule cauchy_rule(cplx target, StarResolution res) {
    if (std::abs(target) >= 1.0) throw DomainError("cauchy_transform: target must lie in the open disk");
    const GaussRule g = gauss_legendre(res.radial);
    CauchyRule r;
    r.nodes.reserve(static_cast<std::size_t>(res.radial) * res.angular);
    r.weights.reserve(static_cast<std::size_t>(res.radial) * res.angular);
    const double dpsi = 2.0 * kPi / res.angular;
    for (int j = 0; j < res.angular; ++j) {
        const double psi = dpsi * j;
        const double R = ray_length(target, psi);
        const cplx e = std::polar(1.0, psi);
        // F(w) / (z - w) dA = -e^{-i psi} F drho dpsi / pi
        const cplx kernel = -std::conj(e) * (R * dpsi / kPi);
        for (int i = 0; i < res.radial; ++i) {
            const double t = g.nodes[static_cast<std::size_t>(i)];
            r.nodes.push_back(target + R * t * e);
            r.weights.push_back(kernel * g.weights[static_cast<std::size_t>(i)]);
        }
    }
    return r;
}

std::vector<cplx> cauchy_transform_field(const std::function<cplx(cplx)>& F, std::span<const cplx> targets,
                                         StarResolution res, int jobs) {
    std::vector<cplx> out(targets.size());
    parallel_for(targets.size(), jobs, [&](std::size_t t) {
        const CauchyRule rule = cauchy_rule(targets[t], res);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const cplx v = F(rule.nodes[i]);
            require_finite(v, "cauchy_transform_field");
            acc += rule.weights[i] * v;
        }
        out[t] = acc;
    });
    return out;
}

}  // namespace dmu
