#include "dmu/parallel.hpp"
#include "dmu/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dmu;

TEST_CASE("Gauss-Legendre on [0, 1] integrates x^k exactly up to 2n - 1") {
    for (int n : {1, 4, 17}) {
        const GaussRule g = gauss_legendre(n);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * std::pow(g.nodes[i], k);
            CHECK(acc == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("circle rule is exact for trigonometric degree below n") {
    const CircleRule r = circle_rule(16);
    for (int m = -15; m <= 15; ++m) {
        const cplx v = integrate(r, [m](cplx z) { return std::pow(z, m); });
        CHECK(std::abs(v - (m == 0 ? 1.0 : 0.0)) < 1e-14);
    }
}

TEST_CASE("disk rule moments and grading") {
    const DiskRule r = disk_rule(8, 8);
    for (int a = 0; a <= 7; ++a) {
        const cplx v = integrate(r, [a](cplx w) { return cplx{std::pow(std::norm(w), a)}; });
        CHECK(v.real() == doctest::Approx(1.0 / (a + 1)).epsilon(1e-13));
    }
    CHECK(std::abs(integrate(r, [](cplx w) { return w * w; })) < 1e-14);
    // (1 - |w|^2)^(-1/2) integrates to 2; grading 2 turns it into a polynomial in u
    const DiskRule g = disk_rule(16, 4, 2.0);
    const cplx v = integrate(g, [](cplx w) { return cplx{1.0 / std::sqrt(1.0 - std::norm(w))}; });
    CHECK(v.real() == doctest::Approx(2.0).epsilon(1e-12));
    double wsum = 0.0;
    for (double w : g.ring_weight) wsum += w;
    CHECK(wsum == doctest::Approx(1.0));
}

TEST_CASE("logarithmic kernel of the area measure is 1 - |z|^2") {
    for (cplx z : {cplx{0.0}, cplx{0.3, 0.1}, cplx{-0.7, 0.2}, cplx{0.0, 0.95}}) {
        const double v = log_kernel_integral([](cplx) { return 1.0; }, z);
        CHECK(v == doctest::Approx(1.0 - std::norm(z)).epsilon(1e-10));
    }
}

TEST_CASE("Poisson weighted area integral of 1 is 1") {
    for (double t : {0.0, 1.0, 2.5}) {
        const double v = poisson_area_integral([](cplx) { return 1.0; }, std::polar(1.0, t));
        CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("planar Cauchy transform of 1 and of w") {
    const std::vector<cplx> targets{0.0, {0.4, -0.3}, {-0.1, 0.9}};
    const auto one = cauchy_transform_field([](cplx) { return cplx{1.0}; }, targets);
    const auto lin = cauchy_transform_field([](cplx w) { return w; }, targets, {}, 2);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        CHECK(std::abs(one[i] - std::conj(targets[i])) < 1e-12);
        CHECK(std::abs(lin[i] - (std::norm(targets[i]) - 1.0)) < 1e-12);
    }
    CHECK_THROWS_AS(cauchy_rule(1.0, {}), DomainError);
}

TEST_CASE("dbar of the Cauchy transform recovers a smooth density") {
    auto F = [](cplx w) { return std::exp(w) * std::conj(w) + 1.0 / (2.0 - std::conj(w)); };
    const double h = 1e-3;
    for (cplx c : {cplx{0.1, 0.2}, cplx{-0.5, 0.3}, cplx{0.6, -0.6}}) {
        const std::vector<cplx> st{c + h, c - h, c + cplx{0, h}, c - cplx{0, h}};
        const auto a = cauchy_transform_field(F, st);
        const cplx dbar = 0.5 * ((a[0] - a[1]) + cplx{0, 1} * (a[2] - a[3])) / (2.0 * h);
        CHECK(std::abs(dbar - F(c)) < 1e-5 * std::abs(F(c)));
    }
}

TEST_CASE("parallel_for visits each index once and rethrows") {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw NumericalError("x"); }), NumericalError);
}
