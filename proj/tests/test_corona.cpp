#include "dmu/corona.hpp"

#include <doctest.h>

#include <cmath>

using namespace dmu;

namespace {

CPoly P(std::vector<cplx> c) { return CPoly(std::move(c)); }

CoronaOptions small_options() {
    CoronaOptions o;
    o.rings = 10;
    o.angles = 48;
    o.probes = 8;
    return o;
}

}  // namespace

TEST_CASE("certify_delta") {
    const std::vector<CPoly> one{CPoly::constant(1.0)};
    const DeltaCertificate c1 = certify_delta(one);
    CHECK(c1.delta == doctest::Approx(1.0));
    CHECK(c1.lipschitz == 0.0);

    const std::vector<CPoly> z{CPoly::monomial(1)};
    CHECK_THROWS_AS(certify_delta(z), DomainError);

    // |z|^2 + |1 - z/2|^2 is smallest at z = 2/5, value 4/5
    const std::vector<CPoly> pair{CPoly::monomial(1), P({1.0, -0.5})};
    const DeltaCertificate c = certify_delta(pair);
    CHECK(c.grid_min * c.grid_min == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(std::abs(c.argmin - 0.4) < 1e-9);
    CHECK(c.delta > 0.0);
    CHECK(c.delta <= c.grid_min);
    CHECK(c.delta == doctest::Approx(c.grid_min - c.lipschitz * c.spacing));
}

TEST_CASE("Koszul fields: partition of unity and derivative") {
    const std::vector<CPoly> f{P({0.3, 1.0}), P({1.0, 0.0, {0.0, -0.4}}), P({0.2, 0.2, 0.2})};
    const CPoly h = P({1.0, 2.0});
    const double eps = 1e-6;
    for (cplx z : {cplx{0.1, 0.2}, cplx{-0.6, 0.3}, cplx{0.0, -0.9}}) {
        const KoszulFields k = koszul_fields(f, h, z);
        cplx sum = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) sum += f[j](z) * k.phi[j];
        CHECK(std::abs(sum - 1.0) < 1e-14);
        CHECK(std::abs(k.h - h(z)) < 1e-15);
        const KoszulFields xp = koszul_fields(f, h, z + eps), xm = koszul_fields(f, h, z - eps);
        const KoszulFields yp = koszul_fields(f, h, z + cplx{0, eps}), ym = koszul_fields(f, h, z - cplx{0, eps});
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                // F = phi_a dbar(phi_b)
                const cplx dbar_phi = 0.5 * ((xp.phi[b] - xm.phi[b]) + cplx{0, 1} * (yp.phi[b] - ym.phi[b])) / (2.0 * eps);
                CHECK(std::abs(k.F(a, b) - k.phi[a] * dbar_phi) < 1e-7);
                const cplx d = 0.5 * ((xp.F(a, b) - xm.F(a, b)) - cplx{0, 1} * (yp.F(a, b) - ym.F(a, b))) / (2.0 * eps);
                CHECK(std::abs(k.dF(a, b) - d) < 1e-6);
            }
    }
}

TEST_CASE("single generator returns h") {
    CoronaProblem p{{CPoly::constant(2.0)}, P({1.0, 0.5, -0.25}), hardy_measure(), std::nullopt};
    const CoronaSolution s = corona_solve(p, small_options());
    REQUIRE(s.g_hat.size() == 1);
    for (cplx z : {cplx{0.0}, cplx{0.5, 0.5}, cplx{-0.9, 0.0}}) CHECK(std::abs(s.g_hat[0](z) - 0.5 * p.h(z)) < 1e-10);
    CHECK(s.delta == doctest::Approx(2.0));
}

TEST_CASE("corona solution: Bezout, antisymmetry, linearity, thread independence") {
    const std::vector<CPoly> f{CPoly::monomial(1), P({1.0, -0.5})};
    const CPoly h1 = CPoly::constant(1.0), h2 = P({0.0, {0.0, 1.0}, 0.3});
    CoronaOptions o = small_options();
    o.degree = 24;

    const CoronaSolution s1 = corona_solve({f, h1, dirichlet_measure(), std::nullopt}, o);
    const CoronaSolution s2 = corona_solve({f, h2, dirichlet_measure(), std::nullopt}, o);
    const CoronaSolution s12 = corona_solve({f, h1 + h2, dirichlet_measure(), std::nullopt}, o);
    CHECK(s1.delta_provenance == "grid+Lipschitz");
    CHECK(s1.antisymmetry_defect < 1e-12);
    CHECK(s1.koszul_defect < 1e-12);
    CHECK(s1.refinement_delta < o.refine_tol);
    for (std::size_t t = 0; t < s1.grid.size(); ++t)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(s12.g[j][t] - s1.g[j][t] - s2.g[j][t]) < 1e-10);

    const CoronaVerification v = corona_verify(s1, {f, h1, dirichlet_measure(), std::nullopt});
    CHECK(v.bezout_residual < 1e-8);
    CHECK(v.norms_finite);
    for (double d : v.dbar_residual) CHECK(d < 1e-4);
    CHECK(s1.bound == doctest::Approx(8.0 * std::pow(s1.delta, -4.0) * s1.h_norm));

    o.jobs = 3;
    const CoronaSolution s3 = corona_solve({f, h1, dirichlet_measure(), std::nullopt}, o);
    CHECK(s3.g == s1.g);
}

TEST_CASE("user-supplied delta is checked against the grid") {
    const std::vector<CPoly> f{CPoly::monomial(1), P({1.0, -0.5})};
    CoronaOptions o = small_options();
    o.degree = 20;
    const CoronaSolution s = corona_solve({f, CPoly::constant(1.0), hardy_measure(), std::sqrt(0.8)}, o);
    CHECK(s.delta_provenance == "user-supplied");
    CHECK_THROWS_AS(corona_solve({f, CPoly::constant(1.0), hardy_measure(), 0.95}, o), DomainError);
    CHECK_THROWS_AS(corona_solve({f, CPoly::constant(1.0), hardy_measure(), -1.0}, o), DomainError);
}

TEST_CASE("polar grid") {
    const auto g = polar_grid(0.9, 5, 12);
    CHECK(g.size() == 61);
    CHECK(g[0] == cplx{0.0});
    for (cplx z : g) CHECK(std::abs(z) <= 0.9 + 1e-15);
}
