// SPDX-License-Identifier: Apache-2.0
#include "dmu/potential.hpp"

#include "dmu/parallel.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dmu {

namespace {

constexpr double kPi = std::numbers::pi;

double ts_integrate(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return 0.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b, 1e-14);
}

double poisson(cplx z, cplx zeta) { return (1.0 - std::norm(z)) / std::norm(1.0 - std::conj(zeta) * z); }

double circle_density_value(const MeasureSpec& mu, cplx z) {
    if (!mu.circle_density) return 0.0;
    return mu.circle_density->harmonic_extension(z).real();
}

void require_open_disk(cplx z, const char* where) {
    if (!(std::abs(z) < 1.0)) throw DomainError(std::string(where) + ": point must lie in the open disk");
}

}  // namespace

double radial_V(const DiskDensity& d, double x, double omx) {
    // angular mean of 1 / |1 - conj(w) z|^2 is 1 / (1 - x s); 1 - x s = omx + x (1 - s)
    return omx * radial_integral(d, [&](double, double oms) { return 1.0 / (omx + x * oms); });
}

double radial_U(const DiskDensity& d, double x, double omx) {
    // angular mean of log|(1 - conj(w) z)/(z - w)|^2 is -log(max(x, s))
    const double p = d.grading();
    // outer part s in [x, 1]: 1 - s = omx v^p
    auto outer = [&](double v) {
        const double vp = std::pow(v, p);
        const double oms = omx * vp;
        const double s = 1.0 - oms;
        const double jac = omx * p * std::pow(v, p - 1.0);
        if (jac == 0.0 || oms < 1e-300) return 0.0;
        return -std::log1p(-oms) * d.profile(s, oms) / oms * jac;
    };
    double u = ts_integrate(outer, 0.0, 1.0);
    if (x > 0.0) {
        // inner part s = x y, y in [0, 1]; 1 - s = omx + x (1 - y)
        auto inner = [&](double y) {
            const double s = x * y;
            const double oms = omx + x * (1.0 - y);
            return d.profile(s, oms) / oms * x;
        };
        u += -std::log(x) * ts_integrate(inner, 0.0, 1.0);
    }
    return u;
}

double eval_U(const MeasureSpec& mu, cplx z, const Resolution& res) {
    require_open_disk(z, "eval_U");
    const double x = std::norm(z);
    const double omx = 1.0 - x;
    double u = 0.0;
    for (const auto& a : mu.atoms) {
        if (a.on_circle()) {
            u += a.mass * poisson(z, a.location / std::abs(a.location));
        } else {
            if (z == a.location) return kInfiniteWeight;
            const double g = std::log(std::norm(1.0 - std::conj(a.location) * z) / std::norm(z - a.location));
            u += a.mass * g / (1.0 - std::norm(a.location));
        }
    }
    u += circle_density_value(mu, z);
    for (const auto& d : mu.disk_density) {
        if (d.is_radial()) {
            u += radial_U(d, x, omx);
        } else {
            auto f = [&](cplx w) {
                const double q = 1.0 - std::norm(w);
                return q > 0.0 ? d(w) / q : 0.0;
            };
            u += log_kernel_integral(f, z, res.star);
        }
    }
    return u;
}

double eval_V(const MeasureSpec& mu, cplx z, const Resolution& res) {
    require_open_disk(z, "eval_V");
    const double x = std::norm(z);
    const double omx = 1.0 - x;
    double v = 0.0;
    for (const auto& a : mu.atoms) v += a.mass * poisson(z, a.location);
    v += circle_density_value(mu, z);
    for (const auto& d : mu.disk_density) {
        if (d.is_radial()) {
            v += radial_V(d, x, omx);
        } else {
            const DiskRule rule = disk_rule(res.n_r, res.n_theta, d.grading());
            v += integrate(rule, [&](cplx w) { return cplx{d(w) * poisson(z, w)}; }).real();
        }
    }
    return v;
}

WeightField weight_field(const MeasureSpec& mu, std::span<const cplx> points, bool want_U, bool want_V,
                         const Resolution& res, int jobs) {
    WeightField wf;
    wf.points.assign(points.begin(), points.end());
    wf.res = res;
    if (want_U) wf.U.resize(points.size());
    if (want_V) wf.V.resize(points.size());
    parallel_for(points.size(), jobs, [&](std::size_t i) {
        if (want_U) wf.U[i] = eval_U(mu, points[i], res);
        if (want_V) wf.V[i] = eval_V(mu, points[i], res);
    });
    return wf;
}

std::vector<double> v_on_rule(const MeasureSpec& mu, const DiskRule& rule, int jobs) {
    std::vector<double> v(rule.nodes.size(), 0.0);
    // radial disk parts once per ring
    std::vector<double> ring(static_cast<std::size_t>(rule.n_r), 0.0);
    bool any_general = false;
    for (const auto& d : mu.disk_density) {
        if (!d.is_radial()) {
            any_general = true;
            continue;
        }
        parallel_for(ring.size(), jobs, [&](std::size_t i) {
            const double x = rule.ring_s[i];
            ring[i] += radial_V(d, x, 1.0 - x);
        });
    }
    Resolution res;
    parallel_for(rule.nodes.size(), jobs, [&](std::size_t n) {
        const cplx z = rule.nodes[n];
        double acc = ring[n / static_cast<std::size_t>(rule.n_theta)];
        for (const auto& a : mu.atoms) acc += a.mass * poisson(z, a.location);
        acc += circle_density_value(mu, z);
        if (any_general) {
            for (const auto& d : mu.disk_density) {
                if (d.is_radial()) continue;
                const DiskRule inner = disk_rule(res.n_r, res.n_theta, d.grading());
                acc += integrate(inner, [&](cplx w) { return cplx{d(w) * poisson(z, w)}; }).real();
            }
        }
        v[n] = acc;
    });
    return v;
}

std::vector<double> t_kernel(int jmax, double x) {
    if (jmax < 1) return {};
    std::vector<double> T(static_cast<std::size_t>(jmax));
    auto at = [&](int J) -> double& { return T[static_cast<std::size_t>(J - 1)]; };
    if (x >= 1.0 - 1e-15) {
        for (int J = 1; J <= jmax; ++J) at(J) = 1.0 / J;
        return T;
    }
    if (x <= 0.0) {
        for (int J = 1; J <= jmax; ++J) at(J) = 1.0 / (J * (J + 1.0));
        return T;
    }
    // Upward recursion amplifies errors by x^(-J); use it only while that stays below 1e3.
    const bool upward = x >= 0.5 && jmax * std::log(x) >= std::log(1e-3);
    if (upward) {
        at(1) = 1.0 / x + (1.0 - x) * std::log1p(-x) / (x * x);
        for (int J = 1; J < jmax; ++J) at(J + 1) = (at(J) - 1.0 / (J * (J + 1.0))) / x;
        return T;
    }
    double sum = 0.0, xa = 1.0;
    for (long a = 0; a < 10'000'000; ++a) {
        const double term = xa / ((jmax + a) * (jmax + a + 1.0));
        sum += term;
        if (term < 1e-18 * sum) break;
        xa *= x;
    }
    at(jmax) = sum;
    for (int J = jmax - 1; J >= 1; --J) at(J) = x * at(J + 1) + 1.0 / (J * (J + 1.0));
    return T;
}

cplx v_moment(cplx zeta, int j, int k) {
    if (j < 1 || k < 1) throw DomainError("v_moment: indices start at 1");
    const int J = std::max(j, k);
    double x = std::norm(zeta);
    if (x > 1.0) x = 1.0;
    const double TJ = t_kernel(J, x).back();
    if (j >= k) return std::pow(zeta, j - k) * TJ;
    return std::pow(std::conj(zeta), k - j) * TJ;
}

RadialRule radial_rule(const DiskDensity& d, int n) {
    const GaussRule g = gauss_legendre(n);
    const double p = d.grading();
    RadialRule r;
    r.s.resize(static_cast<std::size_t>(n));
    r.one_minus_s.resize(static_cast<std::size_t>(n));
    r.weight.resize(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        const double u = g.nodes[i];
        const double oms = std::pow(u, p);
        r.s[i] = 1.0 - oms;
        r.one_minus_s[i] = oms;
        r.weight[i] = g.weights[i] * p * std::pow(u, p - 1.0) * d.profile(r.s[i], oms);
    }
    return r;
}

EnvelopeReport check_v_envelope(const MeasureSpec& mu, std::span<const cplx> samples, const Resolution& res) {
    EnvelopeReport rep;
    rep.samples = static_cast<int>(samples.size());
    rep.mass = total_mass(mu, res);
    rep.min_lower_margin = rep.min_upper_margin = std::numeric_limits<double>::infinity();
    for (const cplx z : samples) {
        const double v = eval_V(mu, z, res);
        const double q = 1.0 - std::norm(z);
        const double lower = q * rep.mass / 4.0;
        const double upper = 2.0 * rep.mass / q;
        rep.min_lower_margin = std::min(rep.min_lower_margin, v - lower);
        rep.min_upper_margin = std::min(rep.min_upper_margin, upper - v);
        const bool lo = v < lower - 1e-9, hi = v > upper + 1e-9;
        rep.lower_violations += lo;
        rep.upper_violations += hi;
        if (lo || hi) ++rep.violations;
        if (v > 2.0 * rep.mass / (1.0 - std::abs(z)) + 1e-9) ++rep.weak_upper_violations;
    }
    return rep;
}

namespace {

double kernel_lhs_interior(double s, double r, double t, cplx lambda, cplx zeta, int n_r, int n_theta) {
    const DiskRule rule = disk_rule(n_r, n_theta, 2.0);
    double acc = 0.0;
    for (int i = 0; i < rule.n_r; ++i) {
        const double oms = 1.0 - rule.ring_s[static_cast<std::size_t>(i)];
        const double ws = std::pow(oms, s);
        for (int l = 0; l < rule.n_theta; ++l) {
            const std::size_t n = static_cast<std::size_t>(i) * rule.n_theta + l;
            const cplx z = rule.nodes[n];
            const double a = std::abs(1.0 - lambda * std::conj(z));
            const double b = std::abs(1.0 - std::conj(zeta) * z);
            acc += rule.weights[n] * ws / (std::pow(a, r) * std::pow(b, t));
        }
    }
    return acc;
}

double kernel_lhs_boundary(double s, double r, double t, cplx lambda, cplx zeta, int n) {
    // w = zeta (1 - rho e^{i psi}), rho = 2 cos(psi) tau, tau = sin^2(theta)
    const cplx z0 = zeta / std::abs(zeta);
    const GaussRule gt = gauss_legendre(n);
    const GaussRule gp = gauss_legendre(2 * n);
    double acc = 0.0;
    for (std::size_t j = 0; j < gp.nodes.size(); ++j) {
        const double psi = kPi * (gp.nodes[j] - 0.5);
        const double L = 2.0 * std::cos(psi);
        const cplx e = std::polar(1.0, psi);
        const double wpsi = kPi * gp.weights[j];
        for (std::size_t i = 0; i < gt.nodes.size(); ++i) {
            const double th = 0.5 * kPi * gt.nodes[i];
            const double wth = 0.5 * kPi * gt.weights[i];
            const double sn = std::sin(th), cs = std::cos(th);
            const double tau = sn * sn;
            const cplx w = z0 * (1.0 - L * tau * e);
            const double a = std::abs(1.0 - lambda * std::conj(w));
            // tau^(s+1-t) (1-tau)^s dtau = 2 sin^(2s+3-2t) cos^(2s+1) dtheta
            const double jac = 2.0 * std::pow(sn, 2.0 * s + 3.0 - 2.0 * t) * std::pow(cs, 2.0 * s + 1.0);
            acc += wpsi * wth * std::pow(L, 2.0 * s + 2.0 - t) * jac / std::pow(a, r);
        }
    }
    return acc / kPi;
}

double kernel_lhs(double s, double r, double t, cplx lambda, cplx zeta, int n_r, int n_theta, int n_star) {
    if (std::abs(zeta) >= 1.0 - kCircleTol) return kernel_lhs_boundary(s, r, t, lambda, zeta, n_star);
    return kernel_lhs_interior(s, r, t, lambda, zeta, n_r, n_theta);
}

}  // namespace

KernelEstimateReport check_kernel_estimate(double s, double r, double t,
                                           std::span<const std::pair<cplx, cplx>> samples,
                                           const KernelEstimateOptions& opt) {
    if (!(s > -1.0) || r < 0.0 || t < 0.0 || !(r + t - s > 2.0) || !(t < s + 2.0 && s + 2.0 < r))
        throw DomainError("check_kernel_estimate: need s > -1, r, t >= 0, r + t - s > 2 and t < s + 2 < r");
    KernelEstimateReport rep;
    rep.s = s;
    rep.r = r;
    rep.t = t;
    rep.samples.resize(samples.size());
    parallel_for(samples.size(), opt.jobs, [&](std::size_t i) {
        const auto [lambda, zeta] = samples[i];
        if (!(std::abs(lambda) < 1.0)) throw DomainError("check_kernel_estimate: lambda must lie in the open disk");
        if (std::abs(zeta) > 1.0 + kCircleTol) throw DomainError("check_kernel_estimate: zeta outside the closed disk");
        KernelSample& k = rep.samples[i];
        k.lambda = lambda;
        k.zeta = zeta;
        k.rhs = std::pow(1.0 - std::norm(lambda), -(r - s - 2.0)) * std::pow(std::abs(1.0 - std::conj(zeta) * lambda), -t);
        k.lhs = kernel_lhs(s, r, t, lambda, zeta, opt.n_r, opt.n_theta, opt.n_star);
        const double refined = kernel_lhs(s, r, t, lambda, zeta, 2 * opt.n_r, 2 * opt.n_theta, 2 * opt.n_star);
        k.ratio = k.lhs / k.rhs;
        k.ratio_refined = refined / k.rhs;
        k.relative_change = std::abs(k.ratio_refined - k.ratio) / std::abs(k.ratio_refined);
    });
    double sum = 0.0;
    for (const auto& k : rep.samples) {
        if (!std::isfinite(k.ratio) || !std::isfinite(k.ratio_refined)) rep.finite = false;
        rep.max_ratio = std::max(rep.max_ratio, k.ratio_refined);
        rep.max_relative_change = std::max(rep.max_relative_change, k.relative_change);
        sum += k.ratio_refined;
    }
    if (!rep.samples.empty()) rep.mean_ratio = sum / static_cast<double>(rep.samples.size());
    return rep;
}

double log_poisson_gap(std::span<const std::pair<cplx, cplx>> pairs) {
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& [z, zeta] : pairs) {
        if (z == zeta) continue;
        const double den = std::norm(1.0 - std::conj(zeta) * z);
        const double lhs = std::log(den / std::norm(z - zeta));
        const double rhs = (1.0 - std::norm(z)) * (1.0 - std::norm(zeta)) / den;
        gap = std::min(gap, lhs - rhs);
    }
    return gap;
}

}  // namespace dmu
