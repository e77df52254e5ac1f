#include "dmu/poly.hpp"

#include <doctest.h>

#include <random>

using namespace dmu;

namespace {

CPoly random_poly(std::mt19937& rng, int degree) {
    std::normal_distribution<double> g;
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = {g(rng), g(rng)};
    return CPoly(c);
}

// Horner-free oracle: sum c_k z^k with explicit powers
cplx naive_eval(const CPoly& p, cplx z) {
    cplx acc = 0.0;
    for (int k = 0; k <= p.degree(); ++k) acc += p[k] * std::pow(z, k);
    return acc;
}

}  // namespace

TEST_CASE("trailing zeros are trimmed and the zero polynomial keeps one coefficient") {
    CHECK(CPoly(std::vector<cplx>{1.0, 2.0, 0.0, 0.0}).degree() == 1);
    CHECK(CPoly(std::vector<cplx>{0.0, 0.0}).is_zero());
    CHECK(CPoly().degree() == 0);
    CHECK(CPoly::monomial(3)[3] == cplx{1.0});
    CHECK(CPoly::monomial(3)[7] == cplx{0.0});
}

TEST_CASE("evaluation, products and derivatives agree with naive formulas") {
    std::mt19937 rng(3);
    for (int t = 0; t < 20; ++t) {
        const CPoly p = random_poly(rng, 7), q = random_poly(rng, 4);
        const cplx z{0.3 * t / 20.0 - 0.2, 0.7 - 0.05 * t};
        CHECK(std::abs(p(z) - naive_eval(p, z)) < 1e-12);
        CHECK(std::abs((p * q)(z) - p(z) * q(z)) < 1e-11);
        CHECK(std::abs((p + q)(z) - p(z) - q(z)) < 1e-13);
        const double h = 1e-6;
        const cplx fd = (p(z + h) - p(z - h)) / (2.0 * h);
        CHECK(std::abs(p.derivative()(z) - fd) < 1e-6);
        CHECK(poly_eval(p, z) == p(z));
    }
}

TEST_CASE("difference quotient satisfies f - f(lambda) = (z - lambda) Q") {
    std::mt19937 rng(5);
    for (int t = 0; t < 30; ++t) {
        const CPoly f = random_poly(rng, 1 + t % 10);
        const cplx lambda = std::polar(0.1 + 0.03 * t, 0.7 * t);
        const CPoly Q = difference_quotient(f, lambda);
        CHECK(Q.degree() == f.degree() - 1);
        const CPoly lhs = f - CPoly::constant(f(lambda));
        const CPoly rhs = CPoly(std::vector<cplx>{-lambda, 1.0}) * Q;
        for (int k = 0; k <= f.degree(); ++k) CHECK(std::abs(lhs[k] - rhs[k]) < 1e-12);
    }
    // constants have zero quotient
    CHECK(difference_quotient(CPoly::constant(3.0), 0.5).is_zero());
}

TEST_CASE("backward shift drops the constant and shifts down") {
    const CPoly f(std::vector<cplx>{2.0, 3.0, {0.0, 1.0}});
    const CPoly L = backward_shift(f);
    CHECK(L.degree() == 1);
    CHECK(L[0] == cplx{3.0});
    CHECK(L[1] == cplx{0.0, 1.0});
    CHECK(backward_shift(difference_quotient(f, 0.0)) == backward_shift(backward_shift(f)));
}

TEST_CASE("H2 norm: coefficient sum matches the Green form") {
    CHECK(h2_norm_sq(CPoly::monomial(5, {3.0, 4.0})) == doctest::Approx(25.0));
    std::mt19937 rng(11);
    for (int d = 0; d <= 12; ++d) {
        const CPoly p = random_poly(rng, d);
        const double a = h2_norm_sq(p), b = h2_norm_green(p);
        CHECK(std::abs(a - b) <= 1e-8 * a);
    }
}

TEST_CASE("trigonometric polynomials split into analytic and anti-analytic parts") {
    const CPoly f1(std::vector<cplx>{1.0, {0.5, -0.25}, 2.0});
    const CPoly f2(std::vector<cplx>{0.0, {0.0, 1.0}, 0.0, 0.5});
    const TrigPoly u = TrigPoly::from_parts(f1, f2);
    CHECK(u.order() == 3);
    CHECK(u.analytic_part() == f1);
    CHECK(u.antianalytic_part() == f2);
    for (int l = 0; l < 12; ++l) {
        const cplx zeta = std::polar(1.0, 0.5 * l);
        CHECK(std::abs(u(zeta) - (f1(zeta) + std::conj(f2(zeta)))) < 1e-13);
        CHECK(std::abs(u.harmonic_extension(zeta) - u(zeta)) < 1e-13);
    }
    const cplx z{0.2, -0.4};
    CHECK(std::abs(u.harmonic_extension(z) - (f1(z) + std::conj(f2(z)))) < 1e-13);
    CHECK(u.l2_norm_sq() == doctest::Approx(h2_norm_sq(f1) + h2_norm_sq(f2)));
    CHECK_FALSE(u.is_real());
    CHECK(TrigPoly::from_parts(f1, CPoly(std::vector<cplx>{0.0, f1[1], f1[2]})).is_real());
}
