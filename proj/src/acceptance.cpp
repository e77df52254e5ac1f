// SPDX-License-Identifier: Apache-2.0
#include "dmu/acceptance.hpp"

#include "dmu/corona.hpp"
#include "dmu/multiplier.hpp"
#include "dmu/potential.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace dmu {

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool ok = false;
    std::string detail;
    std::string known_issue;  ///< set when a failure is fully explained by a documented defect of the criterion
};

struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome(std::mt19937&, int jobs)> run;
};

std::string sci(double v) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(2) << v;
    return s.str();
}

std::string fix(double v, int digits = 6) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

cplx random_in_disk(std::mt19937& rng, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

// a quarter of the samples on the circle, the rest uniform by area
cplx random_in_closed_disk(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < 0.25) return std::polar(1.0, 2.0 * kPi * u(rng));
    return random_in_disk(rng, 1.0);
}

CPoly random_poly(std::mt19937& rng, int max_degree, int min_degree = 0) {
    std::uniform_int_distribution<int> deg(min_degree, max_degree);
    std::normal_distribution<double> g(0.0, 1.0);
    const int d = deg(rng);
    std::vector<cplx> c(static_cast<std::size_t>(d) + 1);
    for (auto& x : c) x = {g(rng), g(rng)};
    if (c.back() == cplx{0.0}) c.back() = 1.0;
    return CPoly(std::move(c));
}

std::vector<MeasureSpec> presets() {
    return {hardy_measure(), dirichlet_measure(), alpha_measure(0.5), atoms_measure({{{1.0, 0.0}, 1.0}}, "atom(1)")};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome dirichlet_weights(std::mt19937& rng, int) {
    Resolution res;
    res.n_circle = 256;
    const MeasureSpec mu = dirichlet_measure();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const cplx z = random_in_disk(rng, 0.9);
        worst = std::max({worst, std::abs(eval_U(mu, z, res) - 1.0), std::abs(eval_V(mu, z, res) - 1.0)});
    }
    return {worst <= 1e-8, "max |U-1|, |V-1| = " + sci(worst) + " (tol 1e-8)"};
}

Outcome monomial_norms(std::mt19937&, int) {
    const MeasureSpec mu = dirichlet_measure();
    double worst = 0.0;
    for (int k = 0; k <= 8; ++k)
        for (NormMode m : {NormMode::U, NormMode::V, NormMode::measure})
            worst = std::max(worst, rel(dmu_norm_sq(CPoly::monomial(k), mu, m), 1.0 + k));
    return {worst <= 1e-6, "max relative error over k = 0..8 and modes U, V, measure = " + sci(worst) + " (tol 1e-6)"};
}

Outcome local_dirichlet_exactness(std::mt19937& rng, int) {
    double exact = 0.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k <= 10; ++k) {
        const CPoly zk = CPoly::monomial(k);
        exact = std::max(exact, std::abs(local_dirichlet(zk, 0.0) - (k == 0 ? 0.0 : 1.0)));
        for (int l = 0; l < 4; ++l)
            exact = std::max(exact, std::abs(local_dirichlet(zk, std::polar(1.0, 2.0 * kPi * u(rng))) - k));
    }
    double worst = 0.0;
    for (int i = 0; i < 30; ++i) {
        const CPoly f = random_poly(rng, 10, 1);
        const cplx lambda = random_in_closed_disk(rng);
        const double b = local_dirichlet(f, lambda, LocalMethod::boundary);
        const double a = local_dirichlet(f, lambda, LocalMethod::area);
        worst = std::max(worst, rel(a, b));
    }
    return {exact <= 1e-12 && worst <= 1e-5,
            "boundary exactness " + sci(exact) + " (tol 1e-12); area vs boundary on 30 pairs " + sci(worst) + " (tol 1e-5)"};
}

Outcome shift_identity(std::mt19937& rng, int) {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const CPoly g = random_poly(rng, 10);
        const cplx lambda = random_in_closed_disk(rng);
        const CPoly Lg = backward_shift(g);
        const double lhs = local_dirichlet(g, lambda);
        const double rhs = std::norm(Lg(lambda)) + local_dirichlet(Lg, lambda);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(lhs, 1e-300));
    }
    return {worst <= 1e-10, "max relative defect " + sci(worst) + " (tol 1e-10)"};
}

Outcome green_identity(std::mt19937& rng, int) {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const CPoly p = random_poly(rng, 12);
        worst = std::max(worst, green_check(p) / h2_norm_sq(p));
    }
    return {worst <= 1e-8, "max relative defect " + sci(worst) + " (tol 1e-8)"};
}

Outcome pairing(std::mt19937& rng, int jobs) {
    std::ostringstream d;
    bool ok = true;
    for (const auto& mu : presets()) {
        const Resolution res;
        const CauchyDualTransform U(mu, res, jobs);
        const Eigen::MatrixXcd G = gram_matrix(Space::Dmu, mu, 8, res).G;
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const CPoly p = random_poly(rng, 8), q = random_poly(rng, 8);
            const PairingCheck c = duality_pairing_check(p, q, U, G);
            worst = std::max(worst, c.residual / c.scale);
        }
        ok = ok && worst <= 1e-8;
        d << mu.label << " " << sci(worst) << "; ";
    }
    d << "(tol 1e-8 ||p|| ||q||)";
    return {ok, d.str()};
}

Outcome envelope(std::mt19937& rng, int) {
    std::ostringstream d;
    bool ok = true, explained = true;
    for (const auto& mu : presets()) {
        std::vector<cplx> pts;
        for (int i = 0; i < 200; ++i) pts.push_back(random_in_disk(rng, 0.999));
        const EnvelopeReport r = check_v_envelope(mu, pts);
        ok = ok && r.ok();
        // the only admissible failure: upper bound exceeded by mass near the circle while the
        // weaker 2 mu / (1 - |z|) still holds
        if (!r.ok()) explained = explained && r.lower_violations == 0 && r.weak_upper_violations == 0;
        d << mu.label << " violations " << r.lower_violations << " lower/" << r.upper_violations << " upper (weak "
          << r.weak_upper_violations << "), margins " << sci(r.min_lower_margin) << "/" << sci(r.min_upper_margin)
          << "; ";
    }
    Outcome o{ok, d.str(), {}};
    if (!ok && explained)
        o.known_issue = "upper bound 2 mu/(1-|z|^2) is false near circle mass: V of a unit atom at 1 is (1+r)/(1-r) at z = r";
    return o;
}

Outcome shift_contraction(std::mt19937&, int) {
    std::ostringstream d;
    bool ok = true;
    for (const auto& mu : presets()) {
        double worst = 0.0, literal = 0.0;
        for (int N = 0; N <= 20; ++N) worst = std::max(worst, shift_norm(Space::CauchyDual, mu, N));
        literal = shift_norm(Space::Emu, mu, 20);
        ok = ok && worst <= 1.0 + 1e-8;
        d << mu.label << " " << fix(worst, 12) << " [literal weighted form " << fix(literal, 4) << "]; ";
    }
    d << "(tol 1 + 1e-8, dual norm)";
    return {ok, d.str()};
}

Outcome pick(std::mt19937& rng, int) {
    std::vector<cplx> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(random_in_disk(rng, 0.5));
    const std::vector<CPoly> phis{CPoly::monomial(1), CPoly::monomial(2), CPoly(std::vector<cplx>{0.0, 0.5, 0.5})};
    std::ostringstream d;
    bool ok = true;
    for (const auto& mu : {dirichlet_measure(), hardy_measure()}) {
        const KernelApprox K = kernel_approx(Space::CauchyDual, mu, 20);
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& phi : phis) worst = std::min(worst, pick_positivity(K, phi, pts));
        ok = ok && worst >= -1e-6;
        d << mu.label << " min eig " << sci(worst) << "; ";
    }
    d << "(tol -1e-6)";
    return {ok, d.str()};
}

Outcome kernel_ratio(std::mt19937& rng, int jobs) {
    std::vector<std::pair<cplx, cplx>> samples{{0.0, 0.0}};
    for (int i = 0; i < 20; ++i) samples.push_back({random_in_disk(rng, 0.95), random_in_closed_disk(rng)});
    KernelEstimateOptions opt;
    opt.jobs = jobs;
    const KernelEstimateReport r = check_kernel_estimate(0.5, 3.0, 2.0, samples, opt);
    const double origin = std::abs(r.samples[0].ratio_refined - 1.0 / 1.5);
    const bool ok = r.finite && r.max_relative_change < 0.05 && origin <= 1e-8;
    return {ok, "max ratio " + fix(r.max_ratio, 4) + ", max change under refinement " + sci(r.max_relative_change) +
                    " (tol 5%), origin error " + sci(origin) + " (tol 1e-8)"};
}

Outcome corona_end_to_end(std::mt19937&, int jobs) {
    const std::vector<CPoly> f{CPoly::monomial(1), CPoly(std::vector<cplx>{1.0, -0.5})};
    // oracle for the corona constant: |z|^2 + |1 - z/2|^2 is smallest at z = 2/5 with value 4/5
    const DeltaCertificate cert = certify_delta(f);
    std::ostringstream d;
    bool ok = std::abs(cert.grid_min * cert.grid_min - 0.8) < 1e-9;
    d << "grid min |f|^2 " << fix(cert.grid_min * cert.grid_min, 9) << "; ";
    for (const auto& mu : {dirichlet_measure(), atoms_measure({{{1.0, 0.0}, 1.0}}, "atom(1)"), alpha_measure(0.5)}) {
        const CoronaProblem P{f, CPoly::constant(1.0), mu, std::sqrt(0.8)};
        CoronaOptions opt;
        opt.jobs = jobs;
        const CoronaSolution s = corona_solve(P, opt);
        const CoronaVerification v = corona_verify(s, P);
        const double dbar = *std::max_element(v.dbar_residual.begin(), v.dbar_residual.end());
        const double fit = *std::max_element(v.fit_residual.begin(), v.fit_residual.end());
        const double ratio = *std::max_element(v.ratio.begin(), v.ratio.end());
        const bool here = v.bezout_residual <= 1e-6 && dbar <= 1e-4 && fit <= 1e-6 && v.norms_finite && ratio <= 1.0;
        ok = ok && here;
        d << mu.label << ": bezout " << sci(v.bezout_residual) << " dbar " << sci(dbar) << " fit " << sci(fit)
          << " ratio " << fix(ratio, 4) << " (N_g " << s.degree << "); ";
    }
    return {ok, d.str()};
}

Outcome corona_invariants(std::mt19937& rng, int jobs) {
    const std::vector<CPoly> f{CPoly::monomial(1), CPoly(std::vector<cplx>{1.0, -0.5})};
    std::ostringstream d;
    bool ok = true;

    double partition = 0.0;
    for (int i = 0; i < 100; ++i) {
        const cplx z = random_in_disk(rng, 1.0);
        const KoszulFields k = koszul_fields(f, CPoly::constant(1.0), z);
        cplx s = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) s += f[j](z) * k.phi[j];
        partition = std::max(partition, std::abs(s - 1.0));
    }
    ok = ok && partition <= 1e-12;
    d << "partition " << sci(partition) << "; ";

    CoronaOptions opt;
    opt.jobs = jobs;
    opt.rings = 12;
    opt.angles = 64;
    const MeasureSpec mu = dirichlet_measure();
    const CPoly h1 = CPoly(std::vector<cplx>{1.0, {0.0, 0.5}}), h2 = CPoly(std::vector<cplx>{0.0, 0.0, 2.0});
    const CoronaSolution s1 = corona_solve({f, h1, mu, std::nullopt}, opt);
    const CoronaSolution s2 = corona_solve({f, h2, mu, std::nullopt}, opt);
    const CoronaSolution s12 = corona_solve({f, h1 + h2, mu, std::nullopt}, opt);
    ok = ok && s1.koszul_defect <= 1e-10 && s12.koszul_defect <= 1e-10;
    d << "koszul " << sci(std::max(s1.koszul_defect, s12.koszul_defect)) << "; ";

    double lin = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
        for (std::size_t t = 0; t < s1.grid.size(); ++t) {
            lin = std::max(lin, std::abs(s12.g[j][t] - s1.g[j][t] - s2.g[j][t]));
            scale = std::max(scale, std::abs(s12.g[j][t]));
        }
    lin /= scale;
    ok = ok && lin <= 1e-9;
    d << "linearity " << sci(lin) << "; ";

    const CoronaSolution sd = corona_solve({f, h1 * 2.0, mu, std::nullopt}, opt);
    double dbl = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) dbl = std::max(dbl, rel(sd.g_norm[j], 2.0 * s1.g_norm[j]));
    ok = ok && dbl <= 1e-8;
    d << "scaling " << sci(dbl) << "; ";

    // dbar of a_12 by central differences against phi_1 dbar(phi_2) h
    const double step = 1e-3;
    double inv = 0.0;
    for (int i = 0; i < 8; ++i) {
        const cplx c = random_in_disk(rng, 0.8);
        const std::vector<cplx> st{c + step, c - step, c + cplx{0, step}, c - cplx{0, step}};
        const auto a = transforms(f, h1, st, opt.star);
        const auto& a12 = a[1];
        const cplx dbar = 0.5 * ((a12[0] - a12[1]) + cplx{0, 1} * (a12[2] - a12[3])) / (2.0 * step);
        const KoszulFields k = koszul_fields(f, h1, c);
        const cplx want = k.F(0, 1) * k.h;
        inv = std::max(inv, std::abs(dbar - want) / std::abs(want));
    }
    ok = ok && inv <= 1e-4;
    d << "dbar inversion " << sci(inv) << "; ";

    const std::vector<CPoly> one{CPoly::constant(1.0)};
    const CPoly h = CPoly(std::vector<cplx>{0.5, {1.0, -1.0}, 0.25});
    const CoronaProblem P1{one, h, mu, std::nullopt};
    const CoronaSolution s = corona_solve(P1, opt);
    const CoronaVerification v = corona_verify(s, P1);
    double gh = 0.0;
    for (std::size_t t = 0; t < s.grid.size(); ++t) gh = std::max(gh, std::abs(s.g[0][t] - h(s.grid[t])));
    const bool trivial = gh <= 1e-10 && v.bezout_residual <= 1e-10 && v.fit_residual[0] <= 1e-10 &&
                         std::abs(v.ratio[0] - 1.0) <= 1e-8 && s.delta == 1.0;
    ok = ok && trivial;
    d << "n=1: |g-h| " << sci(gh) << " ratio " << fix(v.ratio[0], 12);
    return {ok, d.str()};
}

Outcome multiplier_coherence(std::mt19937&, int) {
    const MeasureSpec mu = dirichlet_measure();
    const CPoly z = CPoly::monomial(1);
    const double lb = multiplier_norm_lb(z, mu, 20);
    const MultiplierCertificate c = multiplier_certificate(z, mu, 20);
    const bool ok = lb >= 1.0 && lb <= std::sqrt(2.0) * (1.0 + 1e-12) && std::abs(c.sup.value - 1.0) <= 1e-12 &&
                    c.carleson.constant <= 1.0 + 1e-6;
    return {ok, "norm lb " + fix(lb, 10) + " in [1, sqrt 2]; sup_T " + fix(c.sup.value, 12) + "; Carleson " +
                    fix(c.carleson.constant, 10) + " (tol 1 + 1e-6)"};
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "dirichlet weights U = V = 1", 1.0, dirichlet_weights},
        {2, "monomial norms 1 + k, three modes", 10.0, monomial_norms},
        {3, "local Dirichlet exactness and area route", 30.0, local_dirichlet_exactness},
        {4, "backward shift identity", 5.0, shift_identity},
        {5, "Green identity for the H2 norm", 5.0, green_identity},
        {6, "Cauchy duality pairing", 60.0, pairing},
        {7, "V envelope", 5.0, envelope},
        {8, "shift contraction on E(mu)", 30.0, shift_contraction},
        {9, "Pick positivity", 30.0, pick},
        {10, "kernel integral ratio (1/2, 3, 2)", 60.0, kernel_ratio},
        {11, "corona end to end", 300.0, corona_end_to_end},
        {12, "corona invariants", 60.0, corona_invariants},
        {13, "Carleson and multiplier coherence", 30.0, multiplier_coherence},
    };
    return all;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream* progress) {
    std::vector<CriterionResult> out;
    for (const auto& c : criteria()) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), c.id) == opt.only.end()) continue;
        // each criterion draws from its own stream so that subsets reproduce the full run
        std::mt19937 rng(opt.seed + static_cast<unsigned>(c.id));
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.limit_seconds = c.limit;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Outcome o = c.run(rng, opt.jobs);
            r.numerics_ok = o.ok;
            r.detail = o.detail;
            r.known_issue = o.known_issue;
        } catch (const std::exception& e) {
            r.numerics_ok = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.passed = r.numerics_ok && r.seconds < r.limit_seconds;
        if (r.numerics_ok && !r.passed) r.detail += " [runtime limit exceeded]";
        if (progress) *progress << format_result(r) << std::endl;
        out.push_back(std::move(r));
    }
    return out;
}

int unexpected_failures(const std::vector<CriterionResult>& results) {
    int n = 0;
    for (const auto& r : results) n += (!r.passed && r.known_issue.empty()) ? 1 : 0;
    return n;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream s;
    s << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << std::left << std::setw(44) << r.name
      << std::right << std::fixed << std::setprecision(2) << std::setw(8) << r.seconds << "s / " << std::setprecision(0)
      << r.limit_seconds << "s  " << r.detail;
    if (!r.passed && !r.known_issue.empty()) s << " [known: " << r.known_issue << "]";
    return s.str();
}

}  // namespace dmu
