#include "dmu/potential.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace dmu;

namespace {

// sum_a x^a / ((a+1)(a+2)) in closed form
double t1_closed(double x) {
    if (x == 0.0) return 0.5;
    return ((1.0 - x) * std::log1p(-x) + x) / (x * x);
}

double poisson(cplx z, cplx zeta) { return (1.0 - std::norm(z)) / std::norm(1.0 - std::conj(zeta) * z); }

double log_kernel(cplx z, cplx w) { return std::log(std::norm(1.0 - std::conj(w) * z) / std::norm(z - w)); }

// Composite Simpson in r, trapezoid in theta; plenty for smooth integrands.
cplx brute_disk(const std::function<cplx(cplx)>& f, int nr = 2000, int nt = 256) {
    const double h = 1.0 / nr;
    cplx acc = 0.0;
    for (int i = 0; i <= nr; ++i) {
        const double r = i * h;
        const double sw = (i == 0 || i == nr) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        cplx ring = 0.0;
        for (int t = 0; t < nt; ++t) ring += f(std::polar(r, 2.0 * std::numbers::pi * t / nt));
        acc += sw * r * ring / double(nt);
    }
    return 2.0 * acc * h / 3.0;
}

}  // namespace

TEST_CASE("circle density 1 gives U = V = 1") {
    for (cplx z : {cplx{0.0}, cplx{0.5, 0.3}, cplx{-0.9, 0.0}}) {
        CHECK(eval_U(dirichlet_measure(), z) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(eval_V(dirichlet_measure(), z) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("hardy weights against closed forms") {
    for (double r : {0.0, 0.2, 0.55, 0.9, 0.99}) {
        const cplx z = std::polar(r, 1.1);
        const double x = r * r;
        CHECK(eval_U(hardy_measure(), z) == doctest::Approx(1.0 - x).epsilon(1e-10));
        CHECK(eval_V(hardy_measure(), z) == doctest::Approx((1.0 - x) * t1_closed(x)).epsilon(1e-10));
    }
}

TEST_CASE("atoms: Poisson and logarithmic kernels") {
    const cplx a{0.3, -0.4}, c = std::polar(1.0, 0.8);
    const MeasureSpec mu = atoms_measure({{a, 0.7}, {c, 1.3}});
    for (cplx z : {cplx{0.0}, cplx{0.1, 0.6}, cplx{-0.5, -0.5}}) {
        const double U = 0.7 * log_kernel(z, a) / (1.0 - std::norm(a)) + 1.3 * poisson(z, c);
        const double V = 0.7 * poisson(z, a) + 1.3 * poisson(z, c);
        CHECK(eval_U(mu, z) == doctest::Approx(U).epsilon(1e-12));
        CHECK(eval_V(mu, z) == doctest::Approx(V).epsilon(1e-12));
    }
    CHECK(eval_U(mu, a) == kInfiniteWeight);
    CHECK_THROWS_AS(eval_V(mu, cplx{1.0, 0.0}), DomainError);
}

TEST_CASE("alpha weights match brute-force area integrals") {
    const MeasureSpec mu = alpha_measure(0.3);
    const DiskDensity& d = mu.disk_density[0];
    for (cplx z : {cplx{0.2, 0.1}, cplx{-0.4, 0.3}}) {
        // substitute |w| = 1 - u^10: (1 - |w|^2)^(-0.3) u^8 is u^5 times a smooth factor
        auto g = [&](cplx v) {
            const double u = std::abs(v);
            if (u == 0.0) return cplx{0.0};
            const double u10 = std::pow(u, 10), rw = 1.0 - u10;
            const cplx w = std::polar(rw, std::arg(v));
            // dA(w) = rw drw dt / pi, drw = 10 u^9 du, and the oracle measures u du dt / pi
            return cplx{poisson(z, w) * d.profile(rw * rw, u10 * (2.0 - u10)) * rw * 10.0 * std::pow(u, 8)};
        };
        const double V = brute_disk(g).real();
        CHECK(eval_V(mu, z) == doctest::Approx(V).epsilon(1e-7));
    }
}

TEST_CASE("t_kernel against the series and its value at 1") {
    for (double x : {0.0, 0.3, 0.9}) {
        const auto T = t_kernel(6, x);
        for (int J = 1; J <= 6; ++J) {
            double s = 0.0;
            for (int a = 0; a < 4000; ++a) s += std::pow(x, a) / ((J + a) * (J + a + 1.0));
            CHECK(T[J - 1] == doctest::Approx(s).epsilon(1e-12));
        }
    }
    const auto T1 = t_kernel(5, 1.0);
    for (int J = 1; J <= 5; ++J) CHECK(T1[J - 1] == doctest::Approx(1.0 / J).epsilon(1e-13));
}

TEST_CASE("v_moment against brute force") {
    for (cplx zeta : {cplx{0.0}, cplx{0.3, 0.2}, cplx{-0.5, 0.0}}) {
        for (int j = 1; j <= 4; ++j)
            for (int k = 1; k <= 4; ++k) {
                const cplx want = brute_disk([&](cplx z) {
                    return std::pow(z, j - 1) * std::pow(std::conj(z), k - 1) * poisson(z, zeta);
                });
                CHECK(std::abs(v_moment(zeta, j, k) - want) < 1e-9);
            }
    }
    CHECK(std::abs(v_moment(0.0, 3, 3) - 1.0 / 12.0) < 1e-14);
    CHECK(std::abs(v_moment(0.0, 2, 3)) < 1e-14);
    // moments must stay finite with zeta on the circle
    CHECK(std::isfinite(std::abs(v_moment(std::polar(1.0, 0.4), 5, 2))));
}

TEST_CASE("V envelope holds for measures without circle atoms") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<cplx> pts;
    for (int i = 0; i < 200; ++i) pts.push_back(std::polar(std::sqrt(U(rng)) * 0.999, 2.0 * std::numbers::pi * U(rng)));
    for (const MeasureSpec& mu : {hardy_measure(), dirichlet_measure(), alpha_measure(0.5),
                                  atoms_measure({{{0.3, 0.3}, 2.0}})}) {
        const EnvelopeReport r = check_v_envelope(mu, pts);
        CHECK(r.samples == 200);
        CHECK(r.lower_violations == 0);
        CHECK(r.weak_upper_violations == 0);
    }
    // a circle atom breaks only the sharper upper bound, near the atom
    const EnvelopeReport atom = check_v_envelope(atoms_measure({{{1.0, 0.0}, 1.0}}), std::vector<cplx>{{0.9, 0.0}});
    CHECK(atom.upper_violations == 1);
    CHECK(atom.weak_upper_violations == 0);
}

TEST_CASE("kernel estimate at the origin is exact") {
    const std::vector<std::pair<cplx, cplx>> samples{{0.0, 0.0}, {{0.5, 0.2}, {0.1, 0.9}}};
    const auto r = check_kernel_estimate(0.5, 3.0, 2.0, samples);
    REQUIRE(r.samples.size() == 2);
    // lambda = zeta = 0: int (1 - |z|^2)^s dA = 1 / (s + 1)
    CHECK(r.samples[0].lhs == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(r.samples[0].rhs == doctest::Approx(1.0));
    CHECK(r.stable());
}

TEST_CASE("log kernel dominates the Poisson factor") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<std::pair<cplx, cplx>> pairs;
    for (int i = 0; i < 500; ++i)
        pairs.push_back({std::polar(std::sqrt(U(rng)) * 0.99, 6.3 * U(rng)), std::polar(std::sqrt(U(rng)), 6.3 * U(rng))});
    CHECK(log_poisson_gap(pairs) >= -1e-12);
}

TEST_CASE("weight_field does not depend on the thread count") {
    std::vector<cplx> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(std::polar(0.02 * i, 0.37 * i));
    const MeasureSpec mu = merge(alpha_measure(0.5), atoms_measure({{{0.0, 1.0}, 0.5}}));
    const WeightField a = weight_field(mu, pts, true, true, {}, 1);
    const WeightField b = weight_field(mu, pts, true, true, {}, 3);
    CHECK(a.U == b.U);
    CHECK(a.V == b.V);
}
