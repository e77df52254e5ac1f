#include "dmu/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace dmu;

TEST_CASE("measure round trip") {
    MeasureSpec mu = merge(alpha_measure(0.25), atoms_measure({{{0.1, 0.2}, 0.5}, {{0.0, 1.0}, 2.0}}));
    mu.circle_density = TrigPoly(std::vector<cplx>{{0.1, -0.2}, 1.0, {0.1, 0.2}});
    const MeasureSpec back = measure_from_json(measure_to_json(mu));
    CHECK(back.atoms.size() == 2);
    CHECK(back.atoms[1].location == cplx{0.0, 1.0});
    REQUIRE(back.disk_density.size() == 1);
    CHECK(back.disk_density[0].alpha_value() == 0.25);
    CHECK(total_mass(back) == doctest::Approx(total_mass(mu)));
    CHECK(measure_to_json(back) == measure_to_json(mu));
}

TEST_CASE("measure JSON forms") {
    CHECK(measure_from_json(json("hardy")).label == "hardy");
    const json hardy_obj = json::parse(R"({"label": "h2", "disk_density": {"kind": "hardy", "scale": 2}})");
    CHECK(total_mass(measure_from_json(hardy_obj)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(measure_from_json(json::parse(R"({"atoms": [[2, 0, 1]]})")), DomainError);
    CHECK_THROWS_AS(measure_from_json(json::parse(R"({"disk_density": {"kind": "lebesgue"}})")), DomainError);
    CHECK_THROWS_AS(measure_from_json(json::parse(R"({"atoms": [[0, 0]]})")), DomainError);
    CHECK_THROWS_AS(measure_from_json(json(3)), DomainError);
}

TEST_CASE("polynomials and trigonometric polynomials") {
    const CPoly p(std::vector<cplx>{1.0, {0.0, -2.0}, 0.5});
    CHECK(poly_from_json(poly_to_json(p)) == p);
    CHECK(load_poly("[[1,0],[0,-2],[0.5,0]]") == p);
    CHECK_THROWS_AS(poly_from_json(json::parse("[[1]]")), DomainError);
    CHECK_THROWS_AS(poly_from_json(json::parse(R"("z")")), DomainError);
    const TrigPoly t = trig_from_json(json::parse("[[-1, 0.5, 0], [0, 2, 0], [1, 0.5, 0]]"));
    CHECK(t.order() == 1);
    CHECK(t.coeff(-1) == cplx{0.5});
    CHECK(t.is_real());
}

TEST_CASE("corona problem and solution round trip") {
    const json pj = json::parse(R"({"measure": "dirichlet", "f": [[[0,0],[1,0]], [[1,0],[-0.5,0]]], "h": [[1,0]]})");
    const CoronaProblem p = problem_from_json(pj);
    CHECK(p.f.size() == 2);
    CHECK_FALSE(p.delta.has_value());
    CoronaOptions o;
    o.rings = 6;
    o.angles = 24;
    o.probes = 4;
    o.degree = 12;
    const CoronaSolution s = corona_solve(p, o);
    const CoronaSolution back = solution_from_json(solution_to_json(s));
    CHECK(back.degree == s.degree);
    CHECK(back.g_hat == s.g_hat);
    CHECK(back.grid == s.grid);
    CHECK(back.options.rings == 6);
    CHECK(solution_to_json(back) == solution_to_json(s));
    CHECK_THROWS_AS(problem_from_json(json::parse(R"({"measure": "hardy", "h": [[1,0]]})")), DomainError);
}

TEST_CASE("files, inline JSON and presets") {
    const std::string path = "dmu_test_io_measure.json";
    {
        std::ofstream f(path);
        f << measure_to_json(hardy_measure()).dump();
    }
    CHECK(load_measure(path).label == "hardy");
    CHECK(load_measure("alpha:0.5").label == alpha_measure(0.5).label);
    CHECK(load_measure(R"({"label": "x", "atoms": [[0, 0, 1]]})").atoms.size() == 1);
    {
        std::ofstream f(path);
        f << "{ not json";
    }
    CHECK_THROWS_AS(read_json_file(path), DomainError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_json_file("no/such/file.json"), DomainError);
    CHECK(timestamp().back() == 'Z');
}
