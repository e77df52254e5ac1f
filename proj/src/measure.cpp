// SPDX-License-Identifier: Apache-2.0
#include "dmu/measure.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace dmu {

bool Atom::on_circle() const { return std::abs(location) >= 1.0 - kCircleTol; }

DiskDensity DiskDensity::hardy(double scale) {
    DiskDensity d;
    d.kind_ = Kind::hardy;
    d.scale_ = scale;
    // (1 - x) T_1(x) in V carries (1 - x) log(1 - x); grading 2 smooths it.
    d.grading_ = 2.0;
    d.tag_ = "hardy";
    return d;
}

DiskDensity DiskDensity::alpha(double a, double scale) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha preset needs 0 < alpha < 1");
    DiskDensity d;
    d.kind_ = Kind::alpha;
    d.alpha_ = a;
    d.scale_ = scale;
    d.grading_ = 2.0 / (1.0 - a);
    d.tag_ = "alpha";
    return d;
}

DiskDensity DiskDensity::radial(Profile profile, double grading, std::string tag) {
    DiskDensity d;
    d.kind_ = Kind::radial;
    d.profile_ = std::move(profile);
    d.grading_ = grading;
    d.tag_ = std::move(tag);
    return d;
}

DiskDensity DiskDensity::general(Field field, double grading, std::string tag) {
    DiskDensity d;
    d.kind_ = Kind::general;
    d.field_ = std::move(field);
    d.grading_ = grading;
    d.tag_ = std::move(tag);
    return d;
}

double DiskDensity::profile(double s, double oms) const {
    switch (kind_) {
    case Kind::hardy:
        return scale_ * oms;
    case Kind::alpha:
        return scale_ * (1.0 - alpha_) * std::pow(oms, -alpha_) * (oms + alpha_ * s);
    case Kind::radial:
        return scale_ * profile_(s, oms);
    case Kind::general:
        break;
    }
    throw DomainError("profile() called on a non-radial disk density");
}

double DiskDensity::operator()(cplx w) const {
    if (kind_ == Kind::general) return scale_ * field_(w);
    const double s = std::norm(w);
    return profile(s, 1.0 - s);
}

DiskDensity DiskDensity::scaled(double factor) const {
    DiskDensity d = *this;
    d.scale_ *= factor;
    return d;
}

bool MeasureSpec::is_zero() const {
    if (!atoms.empty() || !disk_density.empty()) return false;
    if (!circle_density) return true;
    const int M = circle_density->order();
    for (int m = -M; m <= M; ++m)
        if (circle_density->coeff(m) != cplx{0.0}) return false;
    return true;
}

bool MeasureSpec::is_radial() const {
    for (const auto& a : atoms)
        if (a.location != cplx{0.0}) return false;
    if (circle_density) {
        const int M = circle_density->order();
        for (int m = -M; m <= M; ++m)
            if (m != 0 && circle_density->coeff(m) != cplx{0.0}) return false;
    }
    return std::all_of(disk_density.begin(), disk_density.end(), [](const auto& d) { return d.is_radial(); });
}

bool MeasureSpec::has_circle_part() const {
    if (circle_density && !MeasureSpec{"", {}, circle_density, {}}.is_zero()) return true;
    return std::any_of(atoms.begin(), atoms.end(), [](const Atom& a) { return a.on_circle(); });
}

MeasureSpec hardy_measure() { return {"hardy", {}, std::nullopt, {DiskDensity::hardy()}}; }

MeasureSpec dirichlet_measure() { return {"dirichlet", {}, TrigPoly::constant(1.0), {}}; }

MeasureSpec alpha_measure(double a) {
    std::ostringstream label;
    label << "alpha(" << a << ")";
    return {label.str(), {}, std::nullopt, {DiskDensity::alpha(a)}};
}

MeasureSpec atoms_measure(std::vector<Atom> atoms, std::string label) {
    MeasureSpec mu{std::move(label), std::move(atoms), std::nullopt, {}};
    for (const auto& a : mu.atoms) {
        if (!(a.mass > 0.0)) throw DomainError("invalid atom: mass must be positive");
        if (!(std::abs(a.location) <= 1.0 + kCircleTol)) throw DomainError("invalid atom: location outside the closed disk");
    }
    return mu;
}

MeasureSpec make_measure(std::string_view preset, std::span<const double> params) {
    if (preset == "hardy") return hardy_measure();
    if (preset == "dirichlet") return dirichlet_measure();
    if (preset == "alpha") {
        if (params.size() != 1) throw DomainError("alpha preset takes exactly one parameter");
        return alpha_measure(params[0]);
    }
    if (preset == "atoms") {
        if (params.empty() || params.size() % 3 != 0) throw DomainError("atoms preset takes (re, im, mass) triples");
        std::vector<Atom> atoms;
        for (std::size_t i = 0; i < params.size(); i += 3) atoms.push_back({{params[i], params[i + 1]}, params[i + 2]});
        return atoms_measure(std::move(atoms));
    }
    if (preset == "zero") return {"zero", {}, std::nullopt, {}};
    throw DomainError("unknown preset '" + std::string(preset) + "'");
}

MeasureSpec parse_measure_preset(std::string_view text) {
    const auto colon = text.find(':');
    std::string_view name = text.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            std::string_view tok = rest.substr(0, comma);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size())
                throw DomainError("bad number '" + std::string(tok) + "' in measure preset");
            params.push_back(v);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
    }
    if (name == "atom") name = "atoms";
    return make_measure(name, params);
}

MeasureSpec merge(const MeasureSpec& a, const MeasureSpec& b) {
    MeasureSpec out;
    out.label = a.label + "+" + b.label;
    out.atoms = a.atoms;
    out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
    if (a.circle_density && b.circle_density)
        out.circle_density = *a.circle_density + *b.circle_density;
    else if (a.circle_density)
        out.circle_density = a.circle_density;
    else
        out.circle_density = b.circle_density;
    out.disk_density = a.disk_density;
    out.disk_density.insert(out.disk_density.end(), b.disk_density.begin(), b.disk_density.end());
    return out;
}

double radial_integral(const DiskDensity& d, const std::function<double(double, double)>& g) {
    // s = 1 - u^p so that 1 - s = u^p is exact and boundary powers become smooth in u.
    const double p = d.grading();
    auto integrand = [&](double u) {
        const double oms = std::pow(u, p);
        const double s = 1.0 - oms;
        const double jac = p * std::pow(u, p - 1.0);
        // near u = 0 the graded integrand vanishes like a power of u
        if (jac == 0.0 || oms < 1e-300) return 0.0;
        return d.profile(s, oms) * g(s, oms) * jac;
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(integrand, 0.0, 1.0, 1e-14);
}

double total_mass(const MeasureSpec& mu, const Resolution& res) {
    double m = 0.0;
    for (const auto& a : mu.atoms) m += a.mass;
    if (mu.circle_density) m += mu.circle_density->coeff(0).real();
    for (const auto& d : mu.disk_density) {
        if (d.is_radial()) {
            m += radial_integral(d, [](double, double) { return 1.0; });
        } else {
            const DiskRule rule = disk_rule(res.n_r, res.n_theta, d.grading());
            m += integrate(rule, [&](cplx w) { return cplx{d(w)}; }).real();
        }
    }
    return m;
}

std::vector<std::string> validate_measure(const MeasureSpec& mu, const Resolution& res) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
        const auto& a = mu.atoms[i];
        if (!std::isfinite(std::abs(a.location)) || std::abs(a.location) > 1.0 + kCircleTol)
            out.push_back("atom outside closed disk (index " + std::to_string(i) + ")");
        if (!(a.mass > 0.0) || !std::isfinite(a.mass))
            out.push_back("atom mass not positive (index " + std::to_string(i) + ")");
    }
    if (mu.circle_density) {
        if (!mu.circle_density->is_real(1e-12)) out.push_back("circle density not real");
        const CircleRule rule = circle_rule(std::max(res.n_circle, 2 * mu.circle_density->order() + 1));
        for (const auto& z : rule.nodes) {
            if ((*mu.circle_density)(z).real() < -1e-10) {
                out.push_back("negative density at node");
                break;
            }
        }
    }
    for (const auto& d : mu.disk_density) {
        const DiskRule rule = disk_rule(res.n_r, res.n_theta, d.grading());
        bool negative = false, nonfinite = false;
        for (const auto& w : rule.nodes) {
            const double v = d(w);
            if (!std::isfinite(v)) nonfinite = true;
            else if (v < -1e-10) negative = true;
        }
        if (negative) out.push_back("negative disk density at node (" + d.tag() + ")");
        if (nonfinite) out.push_back("non-finite disk density at node (" + d.tag() + ")");
    }
    if (out.empty()) {
        const double m = total_mass(mu, res);
        if (!std::isfinite(m)) out.push_back("total mass not finite");
    }
    return out;
}

void require_valid(const MeasureSpec& mu, const Resolution& res) {
    const auto report = validate_measure(mu, res);
    if (report.empty()) return;
    std::string msg = "invalid measure '" + mu.label + "':";
    for (const auto& r : report) msg += " " + r + ";";
    throw DomainError(msg);
}

double suggested_grading(const MeasureSpec& mu) {
    double p = 1.0;
    for (const auto& d : mu.disk_density) p = std::max(p, d.grading());
    return p;
}

}  // namespace dmu
