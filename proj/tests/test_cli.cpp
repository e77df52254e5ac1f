#include "dmu/cli.hpp"
#include "dmu/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace dmu;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const RunConfig& cfg) {
    std::ostringstream out, err;
    const int code = dispatch(cfg, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("norm of z^3 on the Dirichlet space is 4") {
    RunConfig cfg;
    cfg.command = "norm";
    cfg.poly = "[[0,0],[0,0],[0,0],[1,0]]";
    const Run r = run(cfg);
    REQUIRE(r.code == kExitOk);
    const json j = json::parse(r.out);
    CHECK(j.begin().key() == "timestamp");
    CHECK(j["value"].get<double>() == doctest::Approx(4.0));
    CHECK(j.contains("refinement_delta"));
}

TEST_CASE("bad input exits with 2") {
    RunConfig cfg;
    cfg.command = "norm";
    cfg.poly = "[[1";
    const Run r = run(cfg);
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("input error") != std::string::npos);
    cfg.poly = "[[1,0]]";
    cfg.measure = "alpha:2";
    CHECK(run(cfg).code == kExitInput);
    cfg.measure = "hardy";
    cfg.res.n_r = 0;
    CHECK_THROWS_AS(validate(cfg), DomainError);
}

TEST_CASE("weight CSV header and rows") {
    RunConfig cfg;
    cfg.command = "weight";
    cfg.points = "[[0,0],[0.5,0]]";
    const Run r = run(cfg);
    REQUIRE(r.code == kExitOk);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# generated ", 0) == 0);
    std::getline(in, line);
    CHECK(line.rfind("# measure=", 0) == 0);
    std::getline(in, line);
    CHECK(line == "re,im,U,V");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("corona solve with one unit generator returns h") {
    RunConfig cfg;
    cfg.command = "corona solve";
    cfg.problem = R"({"measure": "hardy", "f": [[[1,0]]], "h": [[0.5,0],[0,1]]})";
    cfg.degree = 8;
    const Run r = run(cfg);
    REQUIRE(r.code == kExitOk);
    const json j = json::parse(r.out);
    const CPoly g = poly_from_json(j["solution"]["g_hat"][0]);
    CHECK(std::abs(g[0] - cplx{0.5}) < 1e-10);
    CHECK(std::abs(g[1] - cplx{0.0, 1.0}) < 1e-10);
    CHECK(std::abs(g[2]) < 1e-10);
}

TEST_CASE("reports are identical apart from the timestamp line") {
    auto strip = [](const std::string& s) {
        std::istringstream in(s);
        std::string line, out;
        while (std::getline(in, line))
            if (line.find("\"timestamp\"") == std::string::npos && line.rfind("# generated", 0) != 0) out += line + "\n";
        return out;
    };
    RunConfig cfg;
    cfg.command = "mult-norm";
    cfg.measure = "alpha:0.5";
    cfg.poly = "[[0.5,0],[0,0.3]]";
    cfg.degree = 6;
    const Run a = run(cfg);
    cfg.jobs = 3;
    const Run b = run(cfg);
    REQUIRE(a.code == kExitOk);
    CHECK(strip(a.out) == strip(b.out));
    cfg.command = "weight";
    cfg.jobs = 1;
    const Run c = run(cfg);
    cfg.jobs = 4;
    CHECK(strip(c.out) == strip(run(cfg).out));
}
