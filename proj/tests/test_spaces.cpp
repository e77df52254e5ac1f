#include "dmu/spaces.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace dmu;

namespace {

CPoly random_poly(std::mt19937& rng, int degree) {
    std::normal_distribution<double> g;
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = {g(rng), g(rng)};
    return CPoly(c);
}

constexpr NormMode kModes[] = {NormMode::U, NormMode::V, NormMode::measure};

}  // namespace

TEST_CASE("monomial norms in closed form") {
    for (int k = 0; k <= 6; ++k) {
        const CPoly f = CPoly::monomial(k);
        for (NormMode m : kModes) CHECK(dmu_norm_sq(f, dirichlet_measure(), m) == doctest::Approx(1.0 + k).epsilon(1e-8));
        // hardy, U = 1 - |z|^2: k^2 int s^(k-1) (1 - s) ds = k / (k + 1)
        CHECK(dmu_norm_sq(f, hardy_measure(), NormMode::U) == doctest::Approx(1.0 + k / (k + 1.0)).epsilon(1e-8));
        CHECK(dmu_norm_sq(f, hardy_measure(), NormMode::measure) == doctest::Approx(1.0 + k / (k + 1.0)).epsilon(1e-8));
        // hardy, V = (1 - s) sum s^a / ((a + 1)(a + 2)): k^2 sum 1 / ((a + 1)(a + 2)(k + a)(k + a + 1))
        double series = 0.0;
        for (int a = 0; k > 0 && a < 200000; ++a) series += 1.0 / ((a + 1.0) * (a + 2.0) * (k + a) * (k + a + 1.0));
        CHECK(dmu_norm_sq(f, hardy_measure(), NormMode::V) == doctest::Approx(1.0 + k * k * series).epsilon(1e-8));
        CHECK(dmu_norm_sq(f, atoms_measure({{{1.0, 0.0}, 1.0}}), NormMode::measure) == doctest::Approx(1.0 + k));
    }
}

TEST_CASE("U and measure routes agree; the V route is an equivalent norm below them") {
    std::mt19937 rng(2);
    const MeasureSpec mus[] = {alpha_measure(0.5), atoms_measure({{{0.4, -0.2}, 1.5}}),
                               merge(hardy_measure(), atoms_measure({{std::polar(1.0, 2.0), 0.5}}))};
    for (const auto& mu : mus) {
        const CPoly f = random_poly(rng, 5);
        const double u = dmu_norm_sq(f, mu, NormMode::U), w = dmu_norm_sq(f, mu, NormMode::measure);
        CHECK(std::abs(u - w) <= 1e-6 * w);
        // U >= V pointwise, since the log kernel dominates the Poisson factor
        const double su = dmu_seminorm_sq(f, mu, NormMode::U), sv = dmu_seminorm_sq(f, mu, NormMode::V);
        CHECK(sv > 0.0);
        CHECK(su / sv >= 1.0 - 1e-8);
    }
}

TEST_CASE("local Dirichlet integral on the circle is the H2 norm of the difference quotient") {
    std::mt19937 rng(4);
    for (int t = 0; t < 6; ++t) {
        const CPoly f = random_poly(rng, 2 + t);
        const cplx zeta = std::polar(1.0, 0.9 * t);
        const double want = h2_norm_sq(difference_quotient(f, zeta));
        CHECK(local_dirichlet(f, zeta) == doctest::Approx(want).epsilon(1e-12));
        CHECK(local_dirichlet(f, zeta, LocalMethod::area) == doctest::Approx(want).epsilon(1e-5));
    }
}

TEST_CASE("multiplying by z adds the L2(mu) norm for circle measures") {
    std::mt19937 rng(6);
    const MeasureSpec mu = merge(MeasureSpec{"c", {}, TrigPoly(std::vector<cplx>{0.4, 1.0, 0.4}), {}},
                                 atoms_measure({{std::polar(1.0, -1.0), 0.5}}));
    for (int t = 0; t < 4; ++t) {
        const CPoly f = random_poly(rng, 4);
        double l2 = 0.5 * std::norm(f(std::polar(1.0, -1.0)));
        const int n = 64;
        for (int l = 0; l < n; ++l) {
            const double th = 2.0 * std::numbers::pi * l / n;
            l2 += std::norm(f(std::polar(1.0, th))) * (1.0 + 0.8 * std::cos(th)) / n;
        }
        const CPoly zf = CPoly::monomial(1) * f;
        CHECK(dmu_seminorm_sq(zf, mu) - dmu_seminorm_sq(f, mu) == doctest::Approx(l2).epsilon(1e-9));
    }
}

TEST_CASE("Gram matrices reproduce norms and the kernel reproduces values") {
    std::mt19937 rng(8);
    for (Space s : {Space::H2, Space::Dmu, Space::Emu}) {
        const GramMatrix g = gram_matrix(s, hardy_measure(), 6);
        CHECK(g.hermitian_defect < 1e-12);
        CHECK(g.min_eigenvalue > 0.0);
        const CPoly f = random_poly(rng, 6);
        if (s == Space::Dmu) CHECK(inner(g.G, f, f).real() == doctest::Approx(dmu_norm_sq(f, hardy_measure())).epsilon(1e-10));
        if (s == Space::Emu) CHECK(inner(g.G, f, f).real() == doctest::Approx(emu_norm_sq(f, hardy_measure())).epsilon(1e-10));
        const KernelApprox K = kernel_approx(s, hardy_measure(), 6);
        const cplx w{0.3, -0.5};
        std::vector<cplx> kc(7);
        for (int j = 0; j <= 6; ++j)
            for (int k = 0; k <= 6; ++k) kc[j] += K.inverse(k, j) * std::pow(std::conj(w), k);
        const CPoly Kw(kc);
        CHECK(std::abs(inner(g.G, f, Kw) - f(w)) < 1e-9 * (1.0 + std::abs(f(w))));
        CHECK(std::abs(Kw(0.7) - K(0.7, w)) < 1e-12);
    }
    CHECK_THROWS_AS(inner(Eigen::MatrixXcd::Identity(2, 2), CPoly::monomial(3), CPoly::monomial(0)), DomainError);
}

TEST_CASE("Cauchy dual transform on the Dirichlet space multiplies z^k by 1 + k") {
    // V = 1: lambda int k z^(k-1) (1 - lambda conj z)^-2 dA = k lambda^k
    const CauchyDualTransform U(dirichlet_measure());
    for (int k = 0; k <= 5; ++k)
        for (cplx lam : {cplx{0.2, 0.1}, cplx{-0.5, 0.4}}) {
            const cplx want = (1.0 + k) * std::pow(lam, k);
            CHECK(std::abs(U(CPoly::monomial(k), lam) - want) < 1e-10);
        }
}

TEST_CASE("Cauchy dual transform: quadrature route matches the Gram coefficients") {
    std::mt19937 rng(10);
    for (const MeasureSpec& mu : {hardy_measure(), alpha_measure(0.5)}) {
        const CPoly f = random_poly(rng, 4);
        const auto c = cauchy_dual_coefficients(f, mu, 40);
        const cplx lam{0.3, 0.2};
        cplx series = 0.0;
        for (int n = 40; n >= 0; --n) series = series * lam + c[n];
        CHECK(std::abs(cauchy_dual_transform(f, mu, lam) - series) < 1e-8);
        const PairingCheck p = duality_pairing_check(f, random_poly(rng, 3), mu);
        CHECK(p.residual < 1e-8 * p.scale);
    }
}

TEST_CASE("sandwich constants bound the weighted form") {
    std::mt19937 rng(12);
    for (const MeasureSpec& mu : {hardy_measure(), dirichlet_measure(), alpha_measure(0.5),
                                  atoms_measure({{{1.0, 0.0}, 1.0}}), atoms_measure({{{0.2, 0.0}, 4.0}})}) {
        const SandwichConstants c = emu_sandwich_constants(mu);
        for (int t = 0; t < 4; ++t) {
            const CPoly f = random_poly(rng, 6);
            const double e = emu_norm_sq(f, mu);
            CHECK(c.c1 * e <= h2_norm_sq(f) * (1.0 + 1e-9));
            CHECK(e >= c.c2 * bergman_weighted_norm_sq(f) * (1.0 - 1e-9));
        }
    }
    const MeasureSpec zero = parse_measure_preset("zero");
    CHECK_THROWS_AS(emu_norm_sq(CPoly::monomial(1), zero), DomainError);
    CHECK_THROWS_AS(emu_sandwich_constants(zero), DomainError);
}

TEST_CASE("hd norm splits over the analytic and anti-analytic parts") {
    std::mt19937 rng(14);
    const MeasureSpec mu = alpha_measure(0.5);
    const CPoly f1 = random_poly(rng, 4);
    CPoly f2 = random_poly(rng, 3);
    f2 = f2 - CPoly::constant(f2[0]);
    const double want = dmu_norm_sq(f1, mu, NormMode::measure) + dmu_norm_sq(f2, mu, NormMode::measure);
    CHECK(hd_norm_sq(TrigPoly::from_parts(f1, f2), mu) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("Green identity residual and name parsing") {
    std::mt19937 rng(16);
    CHECK(green_check(random_poly(rng, 7)) < 1e-8);
    for (Space s : {Space::H2, Space::Dmu, Space::Emu, Space::CauchyDual}) CHECK(parse_space(to_string(s)) == s);
    for (NormMode m : kModes) CHECK(parse_norm_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_space("bergman"), DomainError);
    CHECK_THROWS_AS(parse_norm_mode("x"), DomainError);
}
