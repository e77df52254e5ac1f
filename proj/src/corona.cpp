// SPDX-License-Identifier: Apache-2.0
#include "dmu/corona.hpp"

#include "dmu/parallel.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dmu {

namespace {

constexpr double kPi = std::numbers::pi;

// Scratch for one point: values and derivatives of every f_l.
struct Jet {
    std::vector<cplx> f, df;
    double S = 0.0;  // sum |f_l|^2
    cplx A, B;       // A = sum f_l' conj(f_l) = dS, B = sum f_l conj(f_l') = dbar S
    double C = 0.0;  // sum |f_l'|^2
};

void fill_jet(std::span<const CPoly> f, std::span<const CPoly> df, cplx z, Jet& J) {
    const std::size_t n = f.size();
    J.f.resize(n);
    J.df.resize(n);
    J.S = J.C = 0.0;
    J.A = J.B = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        J.f[l] = f[l](z);
        J.df[l] = df[l](z);
        J.S += std::norm(J.f[l]);
        J.C += std::norm(J.df[l]);
        J.A += J.df[l] * std::conj(J.f[l]);
    }
    J.B = std::conj(J.A);
}

// phi_j dbar(phi_k) = conj(f_j f_k') / S^2 - conj(f_j f_k) B / S^3
cplx phi_dbar_phi(const Jet& J, std::size_t j, std::size_t k) {
    const double S2 = J.S * J.S;
    return std::conj(J.f[j] * J.df[k]) / S2 - std::conj(J.f[j] * J.f[k]) * J.B / (S2 * J.S);
}

std::vector<CPoly> derivatives(std::span<const CPoly> f) {
    std::vector<CPoly> d;
    d.reserve(f.size());
    for (const auto& p : f) d.push_back(p.derivative());
    return d;
}

double max_abs(std::span<const cplx> v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

// min |f| over the polar grid r = i / n_r (i = 0..n_r), theta = 2 pi l / n_theta
std::pair<double, cplx> grid_min_modulus(std::span<const CPoly> f, int n_r, int n_theta) {
    double m = std::numeric_limits<double>::infinity();
    cplx at = 0.0;
    for (int i = 0; i <= n_r; ++i) {
        const double r = static_cast<double>(i) / n_r;
        const int na = i == 0 ? 1 : n_theta;
        for (int l = 0; l < na; ++l) {
            const cplx z = std::polar(r, 2.0 * kPi * l / n_theta);
            double s = 0.0;
            for (const auto& p : f) s += std::norm(p(z));
            if (s < m) {
                m = s;
                at = z;
            }
        }
    }
    return {std::sqrt(m), at};
}

struct Fit {
    CPoly poly;
    double residual = 0.0;
};

// least squares in the basis (z / R)^k over the grid
Fit fit_poly(std::span<const cplx> grid, std::span<const cplx> values, int degree, double R) {
    const Eigen::Index m = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd B(m, degree + 1);
    Eigen::VectorXcd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const cplx u = grid[static_cast<std::size_t>(i)] / R;
        cplx p = 1.0;
        for (int k = 0; k <= degree; ++k, p *= u) B(i, k) = p;
        y(i) = values[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXcd b = B.colPivHouseholderQr().solve(y);
    const Eigen::VectorXcd r = B * b - y;
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) c[static_cast<std::size_t>(k)] = b(k) / std::pow(R, k);
    const double scale = std::max(max_abs(values), 1e-300);
    return {CPoly(std::move(c)), r.cwiseAbs().maxCoeff() / scale};
}

}  // namespace

std::vector<cplx> polar_grid(double radius, int rings, int angles) {
    std::vector<cplx> out{0.0};
    for (int i = 1; i <= rings; ++i) {
        const double r = radius * i / rings;
        const double off = (i % 2) * 0.5;
        for (int l = 0; l < angles; ++l) out.push_back(std::polar(r, 2.0 * kPi * (l + off) / angles));
    }
    return out;
}

DeltaCertificate certify_delta(std::span<const CPoly> f, int n_r, int n_theta) {
    if (f.empty()) throw DomainError("certify_delta: empty corona data");
    if (n_r < 1 || n_theta < 3) throw DomainError("certify_delta: grid too coarse");
    DeltaCertificate c;
    c.n_r = n_r;
    c.n_theta = n_theta;
    std::tie(c.grid_min, c.argmin) = grid_min_modulus(f, n_r, n_theta);
    // |f| is Lipschitz with constant sqrt(sum L_j^2) <= sum L_j, L_j = sup |f_j'| <= sum |coeffs of f_j'|
    for (const auto& p : f) {
        const CPoly d = p.derivative();
        for (int k = 0; k <= d.degree(); ++k) c.lipschitz += std::abs(d[k]);
    }
    // radial half step plus the half arc at radius <= 1
    c.spacing = 0.5 / n_r + kPi / n_theta;
    c.delta = c.grid_min - c.lipschitz * c.spacing;
    if (!(c.delta > 0.0))
        throw DomainError("certify_delta: corona condition not verifiable at this resolution (min |f| on grid " +
                          std::to_string(c.grid_min) + ")");
    return c;
}

KoszulFields koszul_fields(std::span<const CPoly> f, const CPoly& h, cplx z) {
    const std::size_t n = f.size();
    const std::vector<CPoly> df = derivatives(f);
    Jet J;
    fill_jet(f, df, z, J);
    if (!(J.S > 0.0)) throw DomainError("koszul_fields: |f(z)| = 0");
    KoszulFields out;
    out.h = h(z);
    out.phi.resize(n);
    out.F.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    out.dF.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const double S = J.S, S3 = S * S * S;
    for (std::size_t j = 0; j < n; ++j) {
        out.phi[j] = std::conj(J.f[j]) / S;
        for (std::size_t k = 0; k < n; ++k) {
            const auto jj = static_cast<Eigen::Index>(j), kk = static_cast<Eigen::Index>(k);
            out.F(jj, kk) = phi_dbar_phi(J, j, k);
            // d of conj(f_j f_k') S^-2 and of conj(f_j f_k) B S^-3, using dB = C
            out.dF(jj, kk) = -2.0 * J.A * std::conj(J.f[j] * J.df[k]) / S3 -
                             std::conj(J.f[j] * J.f[k]) * (J.C / S3 - 3.0 * J.A * J.B / (S3 * S));
        }
    }
    return out;
}

std::vector<std::vector<cplx>> transforms(std::span<const CPoly> f, const CPoly& h, std::span<const cplx> points,
                                          StarResolution star, int jobs) {
    const std::size_t n = f.size();
    std::vector<std::vector<cplx>> a(n * n, std::vector<cplx>(points.size(), cplx{0.0}));
    if (n < 2) return a;
    const std::vector<CPoly> df = derivatives(f);
    parallel_for(points.size(), jobs, [&](std::size_t t) {
        const CauchyRule rule = cauchy_rule(points[t], star);
        Jet J;
        std::vector<cplx> acc(n * n, cplx{0.0});
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            fill_jet(f, df, rule.nodes[i], J);
            if (!(J.S > 0.0)) throw NumericalError("corona: |f| vanishes at a quadrature node");
            const cplx wh = rule.weights[i] * h(rule.nodes[i]);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (j != k) acc[j * n + k] += wh * phi_dbar_phi(J, j, k);
        }
        for (std::size_t jk = 0; jk < n * n; ++jk) a[jk][t] = acc[jk];
    });
    return a;
}

namespace {

struct GridEval {
    std::vector<std::vector<cplx>> g;
    double antisymmetry = 0.0;
    double koszul = 0.0;
};

GridEval assemble_g(std::span<const CPoly> f, const CPoly& h, std::span<const cplx> points, StarResolution star,
                    int jobs) {
    const std::size_t n = f.size();
    const auto a = transforms(f, h, points, star, jobs);
    GridEval out;
    out.g.assign(n, std::vector<cplx>(points.size()));
    double kscale = 0.0;
    for (std::size_t t = 0; t < points.size(); ++t) {
        const cplx z = points[t];
        double S = 0.0;
        std::vector<cplx> fv(n);
        for (std::size_t l = 0; l < n; ++l) {
            fv[l] = f[l](z);
            S += std::norm(fv[l]);
        }
        const cplx hz = h(z);
        cplx cancel = 0.0;
        double cabs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            cplx corr = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                const cplx D = a[j * n + k][t] - a[k * n + j][t];
                const cplx Dt = a[k * n + j][t] - a[j * n + k][t];
                out.antisymmetry = std::max(out.antisymmetry, std::abs(D + Dt));
                corr += D * fv[k];
                cabs += std::abs(fv[j] * D * fv[k]);
            }
            out.g[j][t] = std::conj(fv[j]) / S * hz + corr;
            cancel += fv[j] * corr;
        }
        out.koszul = std::max(out.koszul, std::abs(cancel));
        kscale = std::max(kscale, cabs);
    }
    out.koszul = kscale > 0.0 ? out.koszul / kscale : 0.0;
    return out;
}

double dmu_norm(const CPoly& p, const MeasureSpec& mu, const Resolution& res) {
    return std::sqrt(dmu_norm_sq(p, mu, NormMode::V, res));
}

}  // namespace

std::vector<std::vector<cplx>> evaluate_g(const CoronaSolution& s, std::span<const cplx> points,
                                          std::optional<StarResolution> star) {
    return assemble_g(s.f, s.h, points, star.value_or(s.options.star), s.options.jobs).g;
}

CoronaSolution corona_solve(const CoronaProblem& problem, const CoronaOptions& opt) {
    if (problem.f.empty()) throw DomainError("corona_solve: need at least one f_j");
    if (!(opt.radius > 0.0 && opt.radius < 1.0)) throw DomainError("corona_solve: grid radius must lie in (0, 1)");
    if (opt.rings < 1 || opt.angles < 3) throw DomainError("corona_solve: grid too coarse");
    CoronaSolution s;
    s.n = static_cast<int>(problem.f.size());
    s.f = problem.f;
    s.h = problem.h;
    s.measure_label = problem.mu.label;
    s.options = opt;

    if (problem.delta) {
        const double d = *problem.delta;
        const double m = grid_min_modulus(problem.f, 400, 1024).first;
        if (!(d > 0.0)) throw DomainError("corona_solve: delta must be positive");
        if (d > m * (1.0 + 1e-12)) throw DomainError("corona_solve: delta exceeds min |f| on the grid");
        s.delta = d;
        s.delta_provenance = "user-supplied";
    } else {
        s.delta = certify_delta(problem.f).delta;
        s.delta_provenance = "grid+Lipschitz";
    }

    s.grid = polar_grid(opt.radius, opt.rings, opt.angles);
    GridEval ge = assemble_g(s.f, s.h, s.grid, opt.star, opt.jobs);
    s.g = std::move(ge.g);
    s.antisymmetry_defect = ge.antisymmetry;
    s.koszul_defect = ge.koszul;
    {
        double worst = 0.0, hmax = 0.0;
        for (std::size_t t = 0; t < s.grid.size(); ++t) {
            cplx acc = -s.h(s.grid[t]);
            for (int j = 0; j < s.n; ++j) acc += s.f[static_cast<std::size_t>(j)](s.grid[t]) * s.g[static_cast<std::size_t>(j)][t];
            worst = std::max(worst, std::abs(acc));
            hmax = std::max(hmax, std::abs(s.h(s.grid[t])));
        }
        s.grid_bezout_residual = hmax > 0.0 ? worst / hmax : worst;
    }

    // probe points spread over the grid, recomputed at a finer star rule
    {
        std::vector<cplx> probes;
        const std::size_t stride = std::max<std::size_t>(1, s.grid.size() / static_cast<std::size_t>(std::max(1, opt.probes)));
        std::vector<std::size_t> idx;
        for (std::size_t t = stride / 2; t < s.grid.size() && idx.size() < static_cast<std::size_t>(opt.probes); t += stride) {
            idx.push_back(t);
            probes.push_back(s.grid[t]);
        }
        const StarResolution fine{opt.star.radial * 3 / 2, opt.star.angular * 3 / 2};
        const auto gf = assemble_g(s.f, s.h, probes, fine, opt.jobs).g;
        double worst = 0.0;
        for (int j = 0; j < s.n; ++j) {
            const auto& gj = s.g[static_cast<std::size_t>(j)];
            const double scale = std::max(max_abs(gj), 1e-300);
            for (std::size_t p = 0; p < idx.size(); ++p)
                worst = std::max(worst, std::abs(gf[static_cast<std::size_t>(j)][p] - gj[idx[p]]) / scale);
        }
        s.refinement_delta = worst;
        if (worst > opt.refine_tol)
            throw NumericalError("corona_solve: transforms changed by " + std::to_string(worst) +
                                 " under refinement of the star rule");
    }

    int deg = 0;
    for (const auto& p : s.f) deg += p.degree();
    int N = opt.degree ? *opt.degree : std::min(opt.max_degree, s.h.degree() + deg + 16);
    if (N < 0) throw DomainError("corona_solve: negative fit degree");
    for (;;) {
        s.g_hat.clear();
        s.fit_residual.clear();
        for (const auto& gj : s.g) {
            Fit fit = fit_poly(s.grid, gj, N, opt.radius);
            s.g_hat.push_back(std::move(fit.poly));
            s.fit_residual.push_back(fit.residual);
        }
        const double worst = *std::max_element(s.fit_residual.begin(), s.fit_residual.end());
        if (opt.degree || worst < opt.fit_target || N >= opt.max_degree) break;
        N = std::min(opt.max_degree, N + 8);
    }
    s.degree = N;

    s.h_norm = dmu_norm(s.h, problem.mu, opt.norm_res);
    s.bound = std::pow(s.n, 3) * std::pow(s.delta, -4) * s.h_norm;
    for (const auto& gh : s.g_hat) {
        const double v = dmu_norm(gh, problem.mu, opt.norm_res);
        s.g_norm.push_back(v);
        s.ratio.push_back(s.bound > 0.0 ? v / s.bound : 0.0);
    }
    return s;
}

CoronaVerification corona_verify(const CoronaSolution& s, const CoronaProblem& problem, int rings, int angles) {
    CoronaVerification v;
    const std::vector<cplx> grid = polar_grid(s.options.radius, rings, angles);
    v.verification_points = static_cast<int>(grid.size());
    double worst = 0.0, hmax = 0.0;
    for (const auto& z : grid) {
        cplx acc = -s.h(z);
        for (int j = 0; j < s.n; ++j) acc += s.f[static_cast<std::size_t>(j)](z) * s.g_hat[static_cast<std::size_t>(j)](z);
        worst = std::max(worst, std::abs(acc));
        hmax = std::max(hmax, std::abs(s.h(z)));
    }
    v.bezout_residual = hmax > 0.0 ? worst / hmax : worst;
    v.grid_bezout_residual = s.grid_bezout_residual;

    // central differences of g at interior points: dbar = (d/dx + i d/dy) / 2
    const double step = 1e-3;
    v.dbar_step = step;
    std::vector<cplx> centres;
    for (double r : {0.2, 0.5, 0.8})
        for (int l = 0; l < 8; ++l) centres.push_back(std::polar(r * s.options.radius, 2.0 * kPi * (l + 0.25) / 8));
    std::vector<cplx> stencil;
    for (const auto& c : centres)
        for (cplx d : {cplx{step, 0}, cplx{-step, 0}, cplx{0, step}, cplx{0, -step}}) stencil.push_back(c + d);
    const auto gs = evaluate_g(s, stencil);
    for (int j = 0; j < s.n; ++j) {
        const auto& gj = gs[static_cast<std::size_t>(j)];
        double m = 0.0;
        for (std::size_t c = 0; c < centres.size(); ++c) {
            const cplx dx = (gj[4 * c] - gj[4 * c + 1]) / (2.0 * step);
            const cplx dy = (gj[4 * c + 2] - gj[4 * c + 3]) / (2.0 * step);
            m = std::max(m, std::abs(0.5 * (dx + cplx{0, 1} * dy)));
        }
        const double scale = std::max(max_abs(s.g[static_cast<std::size_t>(j)]), 1e-300);
        v.dbar_residual.push_back(m / scale);
    }

    v.fit_residual = s.fit_residual;
    const double hn = std::sqrt(dmu_norm_sq(s.h, problem.mu, NormMode::V, s.options.norm_res));
    const double bound = std::pow(s.n, 3) * std::pow(s.delta, -4) * hn;
    for (const auto& gh : s.g_hat) {
        const double n = std::sqrt(dmu_norm_sq(gh, problem.mu, NormMode::V, s.options.norm_res));
        v.g_norm.push_back(n);
        v.ratio.push_back(bound > 0.0 ? n / bound : 0.0);
        if (!std::isfinite(n)) v.norms_finite = false;
    }
    return v;
}

}  // namespace dmu
