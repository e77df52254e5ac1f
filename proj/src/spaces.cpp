// SPDX-License-Identifier: Apache-2.0
#include "dmu/spaces.hpp"

#include "dmu/parallel.hpp"
#include "dmu/potential.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dmu {

namespace {

constexpr double kPi = std::numbers::pi;

bool on_circle(cplx z) { return std::abs(z) >= 1.0 - kCircleTol; }

cplx unit(cplx z) { return z / std::abs(z); }

Eigen::VectorXcd coeff_vector(const CPoly& f, int size) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(size);
    for (int k = 0; k <= f.degree() && k < size; ++k) v(k) = f[k];
    return v;
}

void finish(GramMatrix& g) {
    g.hermitian_defect = (g.G - g.G.adjoint()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd herm = 0.5 * (g.G + g.G.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    g.min_eigenvalue = es.eigenvalues().minCoeff();
    g.max_eigenvalue = es.eigenvalues().maxCoeff();
}

// int_D f'(z) conj(f'(z)) z^m dA for m >= 0
cplx derivative_moment(const CPoly& df, int m) {
    cplx acc = 0.0;
    for (int a = 0; a + m <= df.degree(); ++a) acc += df[a] * std::conj(df[a + m]) / static_cast<double>(a + m + 1);
    return acc;
}

// V of a rotation invariant measure at s = |z|^2.
double radial_measure_V(const MeasureSpec& mu, double s, double oms) {
    double v = 0.0;
    for (const auto& a : mu.atoms) v += a.mass * oms;  // atoms at the origin only
    if (mu.circle_density) v += mu.circle_density->coeff(0).real();
    for (const auto& d : mu.disk_density) v += radial_V(d, s, oms);
    return v;
}

Eigen::MatrixXcd dmu_gram(const MeasureSpec& mu, int N, const Resolution& res) {
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(N + 1, N + 1);
    if (N == 0) return G;
    const Eigen::MatrixXcd W = v_moment_matrix(mu, N - 1, res);
    for (int j = 1; j <= N; ++j)
        for (int k = 1; k <= N; ++k) G(j, k) += static_cast<double>(j) * k * W(j - 1, k - 1);
    return G;
}

Eigen::MatrixXcd emu_gram(const MeasureSpec& mu, int N, const Resolution& res) {
    if (mu.is_zero()) throw DomainError("E(mu) norm needs a nonzero measure (V vanishes)");
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    G(0, 0) = 1.0;
    if (N == 0) return G;
    const double p = suggested_grading(mu);
    if (mu.is_radial()) {
        const int n = std::max(res.n_radial_1d, 2 * N + 8);
        const GaussRule g = gauss_legendre(n);
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const double u = g.nodes[i];
            const double oms = std::pow(u, p);
            const double s = 1.0 - oms;
            const double w = g.weights[i] * p * std::pow(u, p - 1.0) * oms * oms / radial_measure_V(mu, s, oms);
            double sk = 1.0;  // s^(k-1)
            for (int k = 1; k <= N; ++k, sk *= s) G(k, k) += static_cast<double>(k) * k * sk * w;
        }
        return G;
    }
    const DiskRule rule = disk_rule(std::max(res.n_r, N + 8), std::max(res.n_theta, 2 * N + 8), p);
    const std::vector<double> V = v_on_rule(mu, rule);
    Eigen::VectorXcd zp(N);
    for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
        const cplx z = rule.nodes[n];
        const double q = 1.0 - std::norm(z);
        const double w = rule.weights[n] * q * q / V[n];
        cplx pw = 1.0;
        for (int j = 0; j < N; ++j, pw *= z) zp(j) = pw * static_cast<double>(j + 1);
        G.bottomRightCorner(N, N) += w * zp * zp.adjoint();
    }
    return G;
}

Eigen::MatrixXcd inverse_hpd(const Eigen::MatrixXcd& G) {
    Eigen::LLT<Eigen::MatrixXcd> llt(G);
    if (llt.info() != Eigen::Success) throw NumericalError("Gram matrix is not positive definite");
    return llt.solve(Eigen::MatrixXcd::Identity(G.rows(), G.cols()));
}

}  // namespace

std::string_view to_string(Space s) {
    switch (s) {
    case Space::H2: return "H2";
    case Space::Dmu: return "Dmu";
    case Space::Emu: return "Emu";
    case Space::CauchyDual: return "dual";
    }
    return "?";
}

Space parse_space(std::string_view t) {
    if (t == "H2" || t == "h2") return Space::H2;
    if (t == "Dmu" || t == "dmu" || t == "D") return Space::Dmu;
    if (t == "Emu" || t == "emu" || t == "E") return Space::Emu;
    if (t == "dual" || t == "cauchy-dual") return Space::CauchyDual;
    throw DomainError("unknown space '" + std::string(t) + "'");
}

std::string_view to_string(NormMode m) {
    switch (m) {
    case NormMode::U: return "U";
    case NormMode::V: return "V";
    case NormMode::measure: return "measure";
    }
    return "?";
}

NormMode parse_norm_mode(std::string_view t) {
    if (t == "U" || t == "u") return NormMode::U;
    if (t == "V" || t == "v") return NormMode::V;
    if (t == "measure") return NormMode::measure;
    throw DomainError("unknown norm mode '" + std::string(t) + "'");
}

double local_dirichlet(const CPoly& f, cplx lambda, LocalMethod method, const Resolution& res) {
    if (std::abs(lambda) > 1.0 + kCircleTol) throw DomainError("local_dirichlet: |lambda| > 1");
    if (method == LocalMethod::boundary) return h2_norm_sq(difference_quotient(f, lambda));
    const CPoly df = f.derivative();
    auto energy = [&](cplx z) { return std::norm(df(z)); };
    if (on_circle(lambda)) return poisson_area_integral(energy, unit(lambda), res.star);
    return log_kernel_integral(energy, lambda, res.star) / (1.0 - std::norm(lambda));
}

Eigen::MatrixXcd v_moment_matrix(const MeasureSpec& mu, int P, const Resolution& res) {
    const int n = P + 1;
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(n, n);
    if (n <= 0) return W;
    // M_{p+1,q+1}(zeta) = zeta^(p-q) T_{max+1}(|zeta|^2) for p >= q
    auto add_point = [&](cplx zeta, double mass) {
        const bool circ = on_circle(zeta);
        const cplx z = circ ? unit(zeta) : zeta;
        const std::vector<double> T = t_kernel(n, circ ? 1.0 : std::norm(z));
        std::vector<cplx> pw(static_cast<std::size_t>(n));
        pw[0] = 1.0;
        for (int d = 1; d < n; ++d) pw[static_cast<std::size_t>(d)] = pw[static_cast<std::size_t>(d - 1)] * z;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q <= p; ++q) {
                const cplx v = mass * pw[static_cast<std::size_t>(p - q)] * T[static_cast<std::size_t>(p)];
                W(p, q) += v;
                if (p != q) W(q, p) += std::conj(v);
            }
    };
    for (const auto& a : mu.atoms) add_point(a.location, a.mass);
    if (mu.circle_density) {
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) W(p, q) += mu.circle_density->coeff(q - p) / static_cast<double>(std::max(p, q) + 1);
    }
    for (const auto& d : mu.disk_density) {
        if (d.is_radial()) {
            const RadialRule rr = radial_rule(d, std::max(res.n_radial_1d, 2 * n + 8));
            for (std::size_t i = 0; i < rr.s.size(); ++i) {
                const std::vector<double> T = t_kernel(n, rr.s[i]);
                for (int p = 0; p < n; ++p) W(p, p) += rr.weight[i] * T[static_cast<std::size_t>(p)];
            }
        } else {
            const DiskRule rule = disk_rule(std::max(res.n_r, n + 8), std::max(res.n_theta, 2 * n + 8), d.grading());
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) add_point(rule.nodes[i], rule.weights[i] * d(rule.nodes[i]));
        }
    }
    return W;
}

double dmu_seminorm_sq(const CPoly& f, const MeasureSpec& mu, NormMode mode, const Resolution& res) {
    const int N = f.degree();
    if (N == 0) return 0.0;
    switch (mode) {
    case NormMode::V: {
        const Eigen::MatrixXcd G = dmu_gram(mu, N, res);
        return inner(G, f, f).real() - h2_norm_sq(f);
    }
    case NormMode::U: {
        const CPoly df = f.derivative();
        auto energy = [&](cplx z) { return std::norm(df(z)); };
        double acc = 0.0;
        for (const auto& a : mu.atoms) {
            if (on_circle(a.location))
                acc += a.mass * poisson_area_integral(energy, unit(a.location), res.star);
            else
                acc += a.mass * log_kernel_integral(energy, a.location, res.star) / (1.0 - std::norm(a.location));
        }
        if (mu.circle_density) {
            // U of the circle part is the harmonic extension sum c_m z^m + sum c_-m conj(z)^m
            const TrigPoly& c = *mu.circle_density;
            cplx s = c.coeff(0) * derivative_moment(df, 0);
            for (int m = 1; m <= c.order(); ++m) {
                const cplx Im = derivative_moment(df, m);
                s += c.coeff(m) * Im + c.coeff(-m) * std::conj(Im);
            }
            acc += s.real();
        }
        for (const auto& d : mu.disk_density) {
            if (d.is_radial()) {
                // int |(z^k)'|^2 U dA = int rho(t) (1 - t^k) / (1 - t) dt
                const RadialRule rr = radial_rule(d, std::max(res.n_radial_1d, 2 * N + 8));
                for (int k = 1; k <= N; ++k) {
                    double I = 0.0;
                    for (std::size_t i = 0; i < rr.s.size(); ++i) {
                        double geo = 0.0, sp = 1.0;
                        for (int j = 0; j < k; ++j, sp *= rr.s[i]) geo += sp;
                        I += rr.weight[i] * geo;
                    }
                    acc += std::norm(f[k]) * I;
                }
            } else {
                const DiskRule rule = disk_rule(res.n_r, res.n_theta, d.grading());
                MeasureSpec part{"", {}, std::nullopt, {d}};
                for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                    acc += rule.weights[i] * energy(rule.nodes[i]) * eval_U(part, rule.nodes[i], res);
            }
        }
        return acc;
    }
    case NormMode::measure: {
        double acc = 0.0;
        for (const auto& a : mu.atoms) acc += a.mass * local_dirichlet(f, a.location);
        if (mu.circle_density) {
            const TrigPoly& c = *mu.circle_density;
            const CircleRule rule = circle_rule(std::max(res.n_circle, 2 * N + 2 * c.order() + 2));
            acc += integrate(rule, [&](cplx z) { return local_dirichlet(f, z) * c(z); }).real();
        }
        for (const auto& d : mu.disk_density) {
            const DiskRule rule = disk_rule(std::max(res.n_r, N + 8), std::max(res.n_theta, 2 * N + 8), d.grading());
            acc += integrate(rule, [&](cplx w) { return cplx{local_dirichlet(f, w) * d(w)}; }).real();
        }
        return acc;
    }
    }
    return 0.0;
}

double dmu_norm_sq(const CPoly& f, const MeasureSpec& mu, NormMode mode, const Resolution& res) {
    return h2_norm_sq(f) + dmu_seminorm_sq(f, mu, mode, res);
}

double emu_norm_sq(const CPoly& f, const MeasureSpec& mu, const Resolution& res) {
    const Eigen::MatrixXcd G = emu_gram(mu, f.degree(), res);
    return inner(G, f, f).real();
}

double bergman_weighted_norm_sq(const CPoly& f) {
    double acc = 0.0;
    for (int k = 0; k <= f.degree(); ++k) acc += std::norm(f[k]) / ((k + 1.0) * (k + 2.0));
    return acc;
}

SandwichConstants emu_sandwich_constants(const MeasureSpec& mu, const Resolution& res) {
    // V >= (1-|z|^2) m / 4 gives emu <= max(1, 4/m) (|f(0)|^2 + int |f'|^2 (1-|z|^2)) <= max(1, 4/m) h2.
    // V <= 2m / (1-|z|) <= 4m / (1-|z|^2) (the Poisson kernel reaches (1+r)/(1-r), so the sharper
    // 2m / (1-|z|^2) is not available) gives emu >= |f(0)|^2 + (1/4m) int |f'|^2 (1-|z|^2)^3; both
    // sides are diagonal on monomials and the ratio to the weighted Bergman norm is >= min(2, 3/(8m)).
    const double m = total_mass(mu, res);
    if (!(m > 0.0)) throw DomainError("emu_sandwich_constants: zero measure");
    return {1.0 / std::max(1.0, 4.0 / m), std::min(2.0, 3.0 / (8.0 * m))};
}

cplx inner(const Eigen::MatrixXcd& G, const CPoly& f, const CPoly& g) {
    const int n = static_cast<int>(G.rows());
    if (f.degree() >= n || g.degree() >= n) throw DomainError("inner: polynomial degree exceeds Gram size");
    const Eigen::VectorXcd a = coeff_vector(f, n), b = coeff_vector(g, n);
    return (a.transpose() * G * b.conjugate())(0, 0);
}

GramMatrix gram_matrix(Space space, const MeasureSpec& mu, int N, const Resolution& res) {
    if (N < 0) throw DomainError("gram_matrix: negative degree");
    GramMatrix g;
    g.space = space;
    g.measure_label = mu.label;
    g.degree = N;
    switch (space) {
    case Space::H2:
        g.G = Eigen::MatrixXcd::Identity(N + 1, N + 1);
        break;
    case Space::Dmu:
        g.G = dmu_gram(mu, N, res);
        break;
    case Space::Emu:
        g.G = emu_gram(mu, N, res);
        break;
    case Space::CauchyDual: {
        // The dual norm of a coefficient vector c is c^T (G_D^-1) conj(c) over the full space; a
        // finite section of the inverse is approximated by inverting a larger section.
        const int extra = std::max(16, N);
        const Eigen::MatrixXcd a = inverse_hpd(dmu_gram(mu, N + extra, res)).topLeftCorner(N + 1, N + 1);
        const Eigen::MatrixXcd b = inverse_hpd(dmu_gram(mu, N + 2 * extra, res)).topLeftCorner(N + 1, N + 1);
        g.G = b;
        g.truncation_delta = (a - b).cwiseAbs().maxCoeff();
        break;
    }
    }
    finish(g);
    if (g.hermitian_defect > 1e-10 * std::max(1.0, g.G.cwiseAbs().maxCoeff()))
        throw NumericalError("gram_matrix: Hermitian defect above tolerance (quadrature under-resolved)");
    return g;
}

cplx KernelApprox::operator()(cplx z, cplx w) const {
    const int n = static_cast<int>(inverse.rows());
    Eigen::VectorXcd zp(n), wp(n);
    cplx a = 1.0, b = 1.0;
    for (int j = 0; j < n; ++j, a *= z, b *= std::conj(w)) {
        zp(j) = a;
        wp(j) = b;
    }
    // sum_{j,k} inv(k, j) z^j conj(w)^k
    return (wp.transpose() * inverse * zp)(0, 0);
}

KernelApprox kernel_approx(Space space, const MeasureSpec& mu, int N, const Resolution& res) {
    KernelApprox k;
    k.gram = gram_matrix(space, mu, N, res);
    if (!(k.gram.min_eigenvalue > 0.0)) throw NumericalError("kernel: Gram matrix is singular");
    k.inverse = inverse_hpd(k.gram.G);
    return k;
}

cplx kernel_eval(Space space, const MeasureSpec& mu, int N, cplx z, cplx w, const Resolution& res) {
    return kernel_approx(space, mu, N, res)(z, w);
}

CauchyDualTransform::CauchyDualTransform(const MeasureSpec& mu, const Resolution& res, int jobs)
    : mu_(mu), res_(res), rule_(disk_rule(res.n_r, res.n_theta, suggested_grading(mu))) {
    MeasureSpec disk_part{mu.label, {}, std::nullopt, mu.disk_density};
    for (const auto& a : mu.atoms)
        if (!on_circle(a.location)) disk_part.atoms.push_back(a);
    if (disk_part.is_zero())
        v_disk_.assign(rule_.nodes.size(), 0.0);
    else
        v_disk_ = v_on_rule(disk_part, rule_, jobs);
}

cplx CauchyDualTransform::operator()(const CPoly& f, cplx lambda) const {
    if (!(std::abs(lambda) < 1.0)) throw DomainError("cauchy_dual_transform: |lambda| must be < 1");
    cplx acc = 0.0;
    // circle atom zeta: lambda int f'(z) (1 - lambda conj z)^-2 P(z, zeta) dA = lambda Q_f(lambda; zeta) / (1 - lambda conj zeta)
    auto circle_term = [&](cplx zeta) { return difference_quotient(f, zeta)(lambda) / (1.0 - lambda * std::conj(zeta)); };
    for (const auto& a : mu_.atoms)
        if (on_circle(a.location)) acc += a.mass * circle_term(unit(a.location));
    if (mu_.circle_density) {
        const TrigPoly& c = *mu_.circle_density;
        // 1 / (1 - lambda conj zeta) has Fourier tail |lambda|^n
        const double r = std::abs(lambda);
        const int tail = r > 0.0 ? static_cast<int>(std::ceil(std::log(1e-17) / std::log(r))) : 1;
        const int n = std::max(res_.n_circle, tail + f.degree() + 2 * c.order() + 2);
        const CircleRule rule = circle_rule(n);
        acc += integrate(rule, [&](cplx z) { return c(z) * circle_term(z); });
    }
    const CPoly df = f.derivative();
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
        if (v_disk_[i] == 0.0) continue;
        const cplx z = rule_.nodes[i];
        const cplx k = 1.0 - lambda * std::conj(z);
        acc += rule_.weights[i] * df(z) * v_disk_[i] / (k * k);
    }
    return f(lambda) + lambda * acc;
}

cplx cauchy_dual_transform(const CPoly& f, const MeasureSpec& mu, cplx lambda, const Resolution& res) {
    return CauchyDualTransform(mu, res)(f, lambda);
}

std::vector<cplx> cauchy_dual_coefficients(const CPoly& f, const MeasureSpec& mu, int n_max, const Resolution& res) {
    const int N = std::max(f.degree(), n_max);
    const Eigen::MatrixXcd G = dmu_gram(mu, N, res);
    const Eigen::VectorXcd a = coeff_vector(f, N + 1);
    const Eigen::VectorXcd c = G.transpose() * a;
    return std::vector<cplx>(c.data(), c.data() + n_max + 1);
}

PairingCheck duality_pairing_check(const CPoly& p, const CPoly& q, const CauchyDualTransform& U,
                                   const Eigen::MatrixXcd& gram, double radius, int samples) {
    PairingCheck out;
    out.radius = radius;
    out.samples = samples;
    // Taylor coefficients of U q up to deg p from samples on |lambda| = radius
    std::vector<cplx> values(static_cast<std::size_t>(samples));
    for (int l = 0; l < samples; ++l)
        values[static_cast<std::size_t>(l)] = U(q, std::polar(radius, 2.0 * kPi * l / samples));
    cplx pairing = 0.0;
    for (int n = 0; n <= p.degree(); ++n) {
        cplx c = 0.0;
        for (int l = 0; l < samples; ++l) c += values[static_cast<std::size_t>(l)] * std::polar(1.0, -2.0 * kPi * l * n / samples);
        c /= static_cast<double>(samples) * std::pow(radius, n);
        pairing += p[n] * std::conj(c);
    }
    out.boundary_pairing = pairing;
    out.inner_product = inner(gram, p, q);
    out.residual = std::abs(out.boundary_pairing - out.inner_product);
    out.scale = std::sqrt(h2_norm_sq(p) * h2_norm_sq(q));
    return out;
}

PairingCheck duality_pairing_check(const CPoly& p, const CPoly& q, const MeasureSpec& mu, const Resolution& res,
                                   double radius, int samples) {
    const CauchyDualTransform U(mu, res);
    const Eigen::MatrixXcd G = dmu_gram(mu, std::max(p.degree(), q.degree()), res);
    return duality_pairing_check(p, q, U, G, radius, samples);
}

double hd_norm_sq(const TrigPoly& f, const MeasureSpec& mu, const Resolution& res) {
    return f.l2_norm_sq() + dmu_seminorm_sq(f.analytic_part(), mu, NormMode::measure, res) +
           dmu_seminorm_sq(f.antianalytic_part(), mu, NormMode::measure, res);
}

double green_check(const CPoly& p, const Resolution& res) {
    return std::abs(h2_norm_sq(p) - h2_norm_green(p, res.star.radial, res.star.angular));
}

}  // namespace dmu
