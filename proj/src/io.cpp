// SPDX-License-Identifier: Apache-2.0
#include "dmu/io.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dmu {

namespace {

double number(const json& j, const char* what) {
    if (!j.is_number()) throw DomainError(std::string("expected a number for ") + what);
    return j.get<double>();
}

cplx pair_to_cplx(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw DomainError("expected [re, im]");
    return {number(j[0], "re"), number(j[1], "im")};
}

json cplx_to_pair(cplx z) { return json::array({z.real(), z.imag()}); }

json cplx_list(std::span<const cplx> v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(cplx_to_pair(z));
    return a;
}

std::vector<cplx> cplx_list_from(const json& j) {
    if (!j.is_array()) throw DomainError("expected a list of [re, im]");
    std::vector<cplx> v;
    for (const auto& e : j) v.push_back(pair_to_cplx(e));
    return v;
}

DiskDensity density_from_json(const json& j) {
    if (!j.is_object()) throw DomainError("disk_density entries must be objects");
    const std::string kind = j.value("kind", "");
    const double scale = j.contains("scale") ? number(j["scale"], "scale") : 1.0;
    if (!(scale > 0.0)) throw DomainError("disk_density scale must be positive");
    if (kind == "hardy") return DiskDensity::hardy(scale);
    if (kind == "alpha") {
        if (!j.contains("alpha")) throw DomainError("alpha disk density needs \"alpha\"");
        return DiskDensity::alpha(number(j["alpha"], "alpha"), scale);
    }
    throw DomainError("unknown disk_density kind '" + kind + "'");
}

bool looks_like_json(const std::string& s) {
    const auto p = s.find_first_not_of(" \t\r\n");
    return p != std::string::npos && (s[p] == '{' || s[p] == '[');
}

}  // namespace

MeasureSpec measure_from_json(const json& j) {
    if (j.is_string()) return parse_measure_preset(j.get<std::string>());
    if (!j.is_object()) throw DomainError("measure must be an object or a preset string");
    MeasureSpec mu;
    mu.label = j.value("label", "custom");
    if (j.contains("atoms")) {
        for (const auto& a : j["atoms"]) {
            if (!a.is_array() || a.size() != 3) throw DomainError("atoms entries are [re, im, mass]");
            mu.atoms.push_back({{number(a[0], "atom re"), number(a[1], "atom im")}, number(a[2], "atom mass")});
        }
    }
    if (j.contains("circle_density") && !j["circle_density"].is_null()) {
        const json& c = j["circle_density"];
        if (!c.contains("coeffs")) throw DomainError("circle_density needs \"coeffs\"");
        mu.circle_density = trig_from_json(c["coeffs"]);
    }
    if (j.contains("disk_density") && !j["disk_density"].is_null()) {
        const json& d = j["disk_density"];
        if (d.is_array())
            for (const auto& e : d) mu.disk_density.push_back(density_from_json(e));
        else
            mu.disk_density.push_back(density_from_json(d));
    }
    require_valid(mu);
    return mu;
}

json measure_to_json(const MeasureSpec& mu) {
    json j;
    j["label"] = mu.label;
    json atoms = json::array();
    for (const auto& a : mu.atoms) atoms.push_back({a.location.real(), a.location.imag(), a.mass});
    j["atoms"] = atoms;
    if (mu.circle_density) {
        json c = json::array();
        const int M = mu.circle_density->order();
        for (int m = -M; m <= M; ++m) {
            const cplx v = mu.circle_density->coeff(m);
            if (v != cplx{0.0}) c.push_back({m, v.real(), v.imag()});
        }
        j["circle_density"] = {{"coeffs", c}};
    } else {
        j["circle_density"] = nullptr;
    }
    json d = json::array();
    for (const auto& part : mu.disk_density) {
        switch (part.kind()) {
        case DiskDensity::Kind::hardy:
            d.push_back({{"kind", "hardy"}, {"scale", part.scale()}});
            break;
        case DiskDensity::Kind::alpha:
            d.push_back({{"kind", "alpha"}, {"alpha", part.alpha_value()}, {"scale", part.scale()}});
            break;
        default:
            d.push_back({{"kind", part.tag()}, {"serializable", false}});
        }
    }
    j["disk_density"] = d;
    return j;
}

CPoly poly_from_json(const json& j) {
    if (j.is_object() && j.contains("coeffs")) return poly_from_json(j["coeffs"]);
    if (!j.is_array() || j.empty()) throw DomainError("polynomial must be a nonempty list of [re, im]");
    return CPoly(cplx_list_from(j));
}

json poly_to_json(const CPoly& p) { return cplx_list(p.coeffs()); }

TrigPoly trig_from_json(const json& j) {
    if (!j.is_array()) throw DomainError("trigonometric polynomial must be a list of [m, re, im]");
    int M = 0;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer())
            throw DomainError("trigonometric coefficients are [m, re, im] with integer m");
        M = std::max(M, std::abs(e[0].get<int>()));
    }
    std::vector<cplx> c(static_cast<std::size_t>(2 * M + 1), cplx{0.0});
    for (const auto& e : j) c[static_cast<std::size_t>(e[0].get<int>() + M)] += cplx{number(e[1], "re"), number(e[2], "im")};
    return TrigPoly(std::move(c));
}

CoronaProblem problem_from_json(const json& j) {
    if (!j.is_object()) throw DomainError("problem must be an object");
    for (const char* key : {"measure", "f", "h"})
        if (!j.contains(key)) throw DomainError(std::string("problem is missing \"") + key + "\"");
    CoronaProblem p;
    p.mu = j["measure"].is_string() && std::filesystem::exists(j["measure"].get<std::string>())
               ? load_measure(j["measure"].get<std::string>())
               : measure_from_json(j["measure"]);
    if (!j["f"].is_array() || j["f"].empty()) throw DomainError("problem \"f\" must be a nonempty list of polynomials");
    for (const auto& e : j["f"]) p.f.push_back(poly_from_json(e));
    p.h = poly_from_json(j["h"]);
    if (j.contains("delta") && !j["delta"].is_null()) p.delta = number(j["delta"], "delta");
    return p;
}

json resolution_to_json(const Resolution& r) {
    return {{"n_r", r.n_r},
            {"n_theta", r.n_theta},
            {"n_circle", r.n_circle},
            {"star_radial", r.star.radial},
            {"star_angular", r.star.angular},
            {"n_radial_1d", r.n_radial_1d}};
}

json solution_to_json(const CoronaSolution& s) {
    json j;
    j["n"] = s.n;
    json f = json::array();
    for (const auto& p : s.f) f.push_back(poly_to_json(p));
    j["f"] = f;
    j["h"] = poly_to_json(s.h);
    j["measure"] = s.measure_label;
    j["delta"] = s.delta;
    j["delta_provenance"] = s.delta_provenance;
    const auto& o = s.options;
    j["options"] = {{"radius", o.radius},
                    {"rings", o.rings},
                    {"angles", o.angles},
                    {"star_radial", o.star.radial},
                    {"star_angular", o.star.angular},
                    {"fixed_degree", o.degree ? json(*o.degree) : json(nullptr)},
                    {"max_degree", o.max_degree},
                    {"fit_target", o.fit_target},
                    {"refine_tol", o.refine_tol},
                    {"norm_resolution", resolution_to_json(o.norm_res)}};
    j["degree"] = s.degree;
    json gh = json::array();
    for (const auto& p : s.g_hat) gh.push_back(poly_to_json(p));
    j["g_hat"] = gh;
    j["fit_residual"] = s.fit_residual;
    j["refinement_delta"] = s.refinement_delta;
    j["grid_bezout_residual"] = s.grid_bezout_residual;
    j["antisymmetry_defect"] = s.antisymmetry_defect;
    j["koszul_defect"] = s.koszul_defect;
    j["g_norm"] = s.g_norm;
    j["h_norm"] = s.h_norm;
    j["bound"] = s.bound;
    j["ratio"] = s.ratio;
    j["grid"] = cplx_list(s.grid);
    json g = json::array();
    for (const auto& gj : s.g) g.push_back(cplx_list(gj));
    j["g"] = g;
    return j;
}

CoronaSolution solution_from_json(const json& j) {
    try {
        CoronaSolution s;
        s.n = j.at("n").get<int>();
        for (const auto& p : j.at("f")) s.f.push_back(poly_from_json(p));
        s.h = poly_from_json(j.at("h"));
        s.measure_label = j.value("measure", "");
        s.delta = j.at("delta").get<double>();
        s.delta_provenance = j.value("delta_provenance", "");
        const json& o = j.at("options");
        s.options.radius = o.at("radius").get<double>();
        s.options.rings = o.at("rings").get<int>();
        s.options.angles = o.at("angles").get<int>();
        s.options.star = {o.at("star_radial").get<int>(), o.at("star_angular").get<int>()};
        if (!o.at("fixed_degree").is_null()) s.options.degree = o["fixed_degree"].get<int>();
        s.options.max_degree = o.at("max_degree").get<int>();
        s.options.fit_target = o.at("fit_target").get<double>();
        s.options.refine_tol = o.at("refine_tol").get<double>();
        if (o.contains("norm_resolution")) {
            const json& r = o["norm_resolution"];
            s.options.norm_res.n_r = r.at("n_r").get<int>();
            s.options.norm_res.n_theta = r.at("n_theta").get<int>();
            s.options.norm_res.n_circle = r.at("n_circle").get<int>();
            s.options.norm_res.star = {r.at("star_radial").get<int>(), r.at("star_angular").get<int>()};
            s.options.norm_res.n_radial_1d = r.at("n_radial_1d").get<int>();
        }
        s.degree = j.at("degree").get<int>();
        for (const auto& p : j.at("g_hat")) s.g_hat.push_back(poly_from_json(p));
        s.fit_residual = j.at("fit_residual").get<std::vector<double>>();
        s.refinement_delta = j.at("refinement_delta").get<double>();
        s.grid_bezout_residual = j.at("grid_bezout_residual").get<double>();
        s.antisymmetry_defect = j.value("antisymmetry_defect", 0.0);
        s.koszul_defect = j.value("koszul_defect", 0.0);
        s.g_norm = j.at("g_norm").get<std::vector<double>>();
        s.h_norm = j.at("h_norm").get<double>();
        s.bound = j.at("bound").get<double>();
        s.ratio = j.at("ratio").get<std::vector<double>>();
        s.grid = cplx_list_from(j.at("grid"));
        for (const auto& gj : j.at("g")) s.g.push_back(cplx_list_from(gj));
        if (static_cast<int>(s.f.size()) != s.n || static_cast<int>(s.g_hat.size()) != s.n ||
            static_cast<int>(s.g.size()) != s.n)
            throw DomainError("solution: inconsistent number of functions");
        return s;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed solution: ") + e.what());
    }
}

json verification_to_json(const CoronaVerification& v) {
    return {{"bezout_residual", v.bezout_residual},
            {"grid_bezout_residual", v.grid_bezout_residual},
            {"dbar_residual", v.dbar_residual},
            {"dbar_step", v.dbar_step},
            {"fit_residual", v.fit_residual},
            {"g_norm", v.g_norm},
            {"ratio", v.ratio},
            {"norms_finite", v.norms_finite},
            {"verification_points", v.verification_points}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DomainError("malformed JSON in '" + path + "': " + e.what());
    }
}

json load_json_arg(const std::string& arg) {
    if (looks_like_json(arg)) {
        try {
            return json::parse(arg);
        } catch (const json::parse_error& e) {
            throw DomainError(std::string("malformed inline JSON: ") + e.what());
        }
    }
    return read_json_file(arg);
}

MeasureSpec load_measure(const std::string& arg) {
    if (looks_like_json(arg) || std::filesystem::is_regular_file(arg)) {
        try {
            return measure_from_json(load_json_arg(arg));
        } catch (const json::exception& e) {
            throw DomainError(std::string("malformed measure: ") + e.what());
        }
    }
    return parse_measure_preset(arg);
}

CPoly load_poly(const std::string& arg) {
    try {
        return poly_from_json(load_json_arg(arg));
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed polynomial: ") + e.what());
    }
}

std::string timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace dmu
