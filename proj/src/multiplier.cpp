// SPDX-License-Identifier: Apache-2.0
#include "dmu/multiplier.hpp"

#include "dmu/potential.hpp"

#include <boost/math/tools/minima.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace dmu {

namespace {

constexpr double kPi = std::numbers::pi;

// Quadratic forms below act on x = conj(a) for a coefficient vector a, so that
// sum a_j conj(a_k) M(j, k) = x^H M x and the pencils stay Hermitian without transposes.

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& M) { return 0.5 * (M + M.adjoint()); }

// int z^j conj(z)^k dnu for j, k <= N
Eigen::MatrixXcd embedding_matrix(const MeasureSpec& nu, int N, const Resolution& res) {
    if (nu.has_circle_part()) throw DomainError("carleson_constant: nu must not charge the unit circle");
    const int n = N + 1;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd zp(n);
    auto add_point = [&](cplx z, double mass) {
        cplx pw = 1.0;
        for (int j = 0; j < n; ++j, pw *= z) zp(j) = pw;
        A += mass * zp * zp.adjoint();
    };
    for (const auto& a : nu.atoms) add_point(a.location, a.mass);
    for (const auto& d : nu.disk_density) {
        if (d.is_radial()) {
            const RadialRule rr = radial_rule(d, std::max(res.n_radial_1d, 2 * n + 8));
            for (std::size_t i = 0; i < rr.s.size(); ++i) {
                double sj = 1.0;
                for (int j = 0; j < n; ++j, sj *= rr.s[i]) A(j, j) += rr.weight[i] * sj;
            }
        } else {
            const DiskRule rule = disk_rule(std::max(res.n_r, n + 8), std::max(res.n_theta, 2 * n + 8), d.grading());
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) add_point(rule.nodes[i], rule.weights[i] * d(rule.nodes[i]));
        }
    }
    return A;
}

// int z^j conj(z)^k |psi|^2 V_mu dA for j, k <= N from the V-moment matrix
Eigen::MatrixXcd weighted_v_matrix(const CPoly& psi, const MeasureSpec& mu, int N, const Resolution& res) {
    const int dp = psi.degree();
    const Eigen::MatrixXcd W = v_moment_matrix(mu, N + dp, res);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (int j = 0; j <= N; ++j)
        for (int k = 0; k <= N; ++k) {
            cplx acc = 0.0;
            for (int a = 0; a <= dp; ++a)
                for (int b = 0; b <= dp; ++b) acc += psi[a] * std::conj(psi[b]) * W(j + a, k + b);
            A(j, k) = acc;
        }
    return A;
}

Eigen::MatrixXcd gram_for(Space space, const MeasureSpec& mu, int N, const Resolution& res, double* condition = nullptr) {
    const GramMatrix g = gram_matrix(space, mu, N, res);
    if (!(g.min_eigenvalue > 0.0)) throw NumericalError("Gram matrix is singular");
    if (condition) *condition = g.condition();
    return g.G;
}

CarlesonReport carleson_from(const std::function<Eigen::MatrixXcd(int)>& A_of, const MeasureSpec& mu, int N,
                             const Resolution& res, std::string nu_label) {
    if (N < 0) throw DomainError("carleson_constant: negative degree");
    CarlesonReport r;
    r.degree = N;
    r.nu_label = std::move(nu_label);
    r.mu_label = mu.label;
    const Eigen::MatrixXcd G = gram_for(Space::Dmu, mu, N, res, &r.gram_condition);
    const Eigen::MatrixXcd A = A_of(N);
    r.constant = std::max(0.0, max_generalized_eigenvalue(A, G));
    if (N > 0) {
        const double prev = std::max(0.0, max_generalized_eigenvalue(A.topLeftCorner(N, N), G.topLeftCorner(N, N)));
        r.refinement_delta = r.constant - prev;
    }
    return r;
}

}  // namespace

double max_generalized_eigenvalue(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::LLT<Eigen::MatrixXcd> llt(hermitian_part(B));
    if (llt.info() != Eigen::Success) throw NumericalError("generalized eigenproblem: Gram is not positive definite");
    // whiten: C = L^-1 A L^-H
    const auto L = llt.matrixL();
    Eigen::MatrixXcd C = L.solve(hermitian_part(A));
    C = L.solve(C.adjoint().eval()).adjoint().eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(C), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

CarlesonReport carleson_constant(const MeasureSpec& nu, const MeasureSpec& mu, int N, const Resolution& res) {
    return carleson_from([&](int n) { return embedding_matrix(nu, n, res); }, mu, N, res, nu.label);
}

CarlesonReport carleson_constant_weighted(const CPoly& psi, const MeasureSpec& mu, int N, const Resolution& res) {
    return carleson_from([&](int n) { return weighted_v_matrix(psi, mu, n, res); }, mu, N, res, "|psi|^2 V dA");
}

double multiplier_norm_lb(const CPoly& phi, const MeasureSpec& mu, int N, Space space, const Resolution& res) {
    if (N < 0) throw DomainError("multiplier_norm_lb: negative degree");
    const int d = phi.degree();
    const Eigen::MatrixXcd Gs = gram_for(space, mu, N, res);
    const Eigen::MatrixXcd Gb = gram_for(space, mu, N + d, res);
    // T maps coefficients of p to those of phi p; conj(T) acts on x = conj(a)
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N + d + 1, N + 1);
    for (int k = 0; k <= N; ++k)
        for (int i = 0; i <= d; ++i) T(i + k, k) = std::conj(phi[i]);
    const Eigen::MatrixXcd num = T.adjoint() * Gb * T;
    return std::sqrt(std::max(0.0, max_generalized_eigenvalue(num, Gs)));
}

double shift_norm(Space space, const MeasureSpec& mu, int N, const Resolution& res) {
    return multiplier_norm_lb(CPoly::monomial(1), mu, N, space, res);
}

SupNorm sup_on_circle(const CPoly& phi, int grid) {
    if (grid < 8) throw DomainError("sup_on_circle: grid too small");
    auto mod = [&](double t) { return std::abs(phi(std::polar(1.0, t))); };
    const double h = 2.0 * kPi / grid;
    double best = -1.0;
    int at = 0;
    for (int l = 0; l < grid; ++l) {
        const double v = mod(l * h);
        if (v > best) {
            best = v;
            at = l;
        }
    }
    // | |phi| | is Lipschitz in theta with constant sum k |phi_k|
    double lip = 0.0;
    for (int k = 1; k <= phi.degree(); ++k) lip += k * std::abs(phi[k]);
    SupNorm out;
    out.upper_bound = best + lip * h / 2.0;
    const auto [t, negv] = boost::math::tools::brent_find_minima([&](double x) { return -mod(x); }, (at - 1) * h,
                                                                 (at + 1) * h, 52);
    if (-negv > best) {
        out.value = -negv;
        out.argument = std::remainder(t, 2.0 * kPi);
    } else {
        out.value = best;
        out.argument = at * h;
    }
    out.upper_bound = std::max(out.upper_bound, out.value);
    return out;
}

MultiplierCertificate multiplier_certificate(const CPoly& phi, const MeasureSpec& mu, int N, int grid,
                                             const Resolution& res) {
    MultiplierCertificate c;
    c.sup = sup_on_circle(phi, grid);
    c.carleson = carleson_constant_weighted(phi.derivative(), mu, N, res);
    c.carleson.nu_label = "|phi'|^2 V dA";
    return c;
}

double pick_positivity(const KernelApprox& kernel, const CPoly& phi, std::span<const cplx> points) {
    const int n = static_cast<int>(points.size());
    if (n == 0) throw DomainError("pick_positivity: no points");
    for (const auto& w : points)
        if (!(std::abs(w) < 1.0)) throw DomainError("pick_positivity: points must lie in the open disk");
    Eigen::MatrixXcd P(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx wi = points[static_cast<std::size_t>(i)], wj = points[static_cast<std::size_t>(j)];
            P(i, j) = (1.0 - std::conj(phi(wi)) * phi(wj)) * kernel(wj, wi);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(P), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double pick_positivity(Space space, const MeasureSpec& mu, int N, const CPoly& phi, std::span<const cplx> points,
                       const Resolution& res) {
    return pick_positivity(kernel_approx(space, mu, N, res), phi, points);
}

}  // namespace dmu
