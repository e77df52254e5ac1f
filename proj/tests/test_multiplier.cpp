#include "dmu/multiplier.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dmu;

TEST_CASE("Carleson constants with diagonal oracles") {
    const MeasureSpec zero = parse_measure_preset("zero");
    CHECK(carleson_constant(zero, dirichlet_measure(), 6).constant == doctest::Approx(0.0));
    // |p(0)|^2 <= ||p||^2 with equality for constants
    CHECK(carleson_constant(atoms_measure({{0.0, 1.0}}), dirichlet_measure(), 6).constant ==
          doctest::Approx(1.0).epsilon(1e-12));
    // diagonal: 1 / ((k + 1)(k + 2)) against 1 + k, largest at k = 0
    const CarlesonReport r = carleson_constant(hardy_measure(), dirichlet_measure(), 8);
    CHECK(r.constant == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(r.degree == 8);
    CHECK(std::abs(r.refinement_delta) < 1e-10);
    CHECK_THROWS_AS(carleson_constant(dirichlet_measure(), hardy_measure(), 4), DomainError);
}

TEST_CASE("weighted Carleson constant with psi = 1 and V = 1 is the area measure") {
    const CarlesonReport r = carleson_constant_weighted(CPoly::constant(1.0), dirichlet_measure(), 8);
    CHECK(r.constant == doctest::Approx(1.0).epsilon(1e-10));
    // scaling psi scales the constant quadratically
    const CarlesonReport r3 = carleson_constant_weighted(CPoly::constant(3.0), dirichlet_measure(), 8);
    CHECK(r3.constant == doctest::Approx(9.0).epsilon(1e-10));
}

TEST_CASE("multiplier norm lower bounds") {
    for (int N : {0, 3, 10}) CHECK(multiplier_norm_lb(CPoly::monomial(1), dirichlet_measure(), N) == doctest::Approx(std::sqrt(2.0)));
    CHECK(multiplier_norm_lb(CPoly::constant({0.0, 2.5}), hardy_measure(), 5) == doctest::Approx(2.5));
    const CPoly phi(std::vector<cplx>{0.5, {0.0, 0.3}, -0.2});
    double prev = 0.0;
    for (int N = 0; N <= 12; N += 3) {
        const double v = multiplier_norm_lb(phi, alpha_measure(0.5), N);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    CHECK(shift_norm(Space::H2, hardy_measure(), 10) == doctest::Approx(1.0));
    CHECK(shift_norm(Space::Dmu, dirichlet_measure(), 10) == doctest::Approx(std::sqrt(2.0)));
    CHECK(shift_norm(Space::CauchyDual, atoms_measure({{{1.0, 0.0}, 1.0}}), 10) <= 1.0 + 1e-8);
}

TEST_CASE("sup on the circle") {
    const SupNorm s = sup_on_circle(CPoly(std::vector<cplx>{1.0, 0.5}));
    CHECK(s.value == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(std::abs(s.argument) < 1e-6);
    CHECK(s.upper_bound >= s.value);
    CHECK(s.upper_bound - s.value < 1e-3);
    // |1 + z^3 e^{i}| peaks where 3 t + 1 = 0 mod 2 pi
    const SupNorm t = sup_on_circle(CPoly(std::vector<cplx>{1.0, 0.0, 0.0, std::polar(1.0, 1.0)}));
    CHECK(t.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(std::exp(cplx{0.0, 3.0 * t.argument + 1.0}) - 1.0) < 1e-6);
}

TEST_CASE("certificate for the shift on the Dirichlet space") {
    const MultiplierCertificate c = multiplier_certificate(CPoly::monomial(1), dirichlet_measure(), 8);
    CHECK(c.sup.value == doctest::Approx(1.0));
    CHECK(c.carleson.constant == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Pick matrices") {
    std::vector<cplx> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(std::polar(0.1 + 0.07 * i, 1.3 * i));
    CHECK(pick_positivity(Space::H2, hardy_measure(), 40, CPoly::monomial(1, 0.5), pts) > -1e-10);
    // |phi(0.6)| = 1.2 > 1 makes the diagonal entry at 0.6 negative
    pts.push_back(0.6);
    CHECK(pick_positivity(Space::H2, hardy_measure(), 40, CPoly::monomial(1, 2.0), pts) < 0.0);
}

TEST_CASE("generalized eigenvalue against a diagonal pencil") {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(3, 3), B = Eigen::MatrixXcd::Zero(3, 3);
    A.diagonal() << 1.0, 6.0, 2.0;
    B.diagonal() << 1.0, 4.0, 0.5;
    CHECK(max_generalized_eigenvalue(A, B) == doctest::Approx(4.0));
    // invariant under a common congruence
    Eigen::MatrixXcd S(3, 3);
    S << 1.0, cplx{0.2, 0.1}, 0.0, 0.0, 1.0, 0.3, cplx{0.0, -0.4}, 0.0, 1.0;
    CHECK(max_generalized_eigenvalue(S.adjoint() * A * S, S.adjoint() * B * S) == doctest::Approx(4.0));
}
