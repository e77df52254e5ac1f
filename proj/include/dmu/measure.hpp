// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dmu/poly.hpp"
#include "dmu/quadrature.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dmu {

/// Point mass. Locations with |location| >= 1 - kCircleTol count as circle atoms.
struct Atom {
    cplx location;
    double mass = 0.0;
    bool on_circle() const;
};

inline constexpr double kCircleTol = 1e-12;

/// Density on the open disk against normalized area dA.
///
/// Radial densities are described by a profile rho(s, 1 - s) with s = |w|^2; passing the
/// complement separately keeps boundary singularities like (1 - s)^(-alpha) accurate.
/// `grading` is the exponent for graded disk rules that makes the density smooth in the
/// graded variable (see disk_rule).
class DiskDensity {
public:
    using Profile = std::function<double(double s, double one_minus_s)>;
    using Field = std::function<double(cplx)>;

    enum class Kind { hardy, alpha, radial, general };

    /// (1 - |w|^2) * scale
    static DiskDensity hardy(double scale = 1.0);
    /// scale * (1 - a)(1 - s)^(-a) [(1 - s) + a s]
    static DiskDensity alpha(double a, double scale = 1.0);
    static DiskDensity radial(Profile profile, double grading = 1.0, std::string tag = "radial");
    static DiskDensity general(Field field, double grading = 1.0, std::string tag = "custom");

    Kind kind() const { return kind_; }
    bool is_radial() const { return kind_ != Kind::general; }
    double alpha_value() const { return alpha_; }
    double scale() const { return scale_; }
    double grading() const { return grading_; }
    const std::string& tag() const { return tag_; }

    double operator()(cplx w) const;
    /// Radial profile; only valid when is_radial().
    double profile(double s, double one_minus_s) const;
    DiskDensity scaled(double factor) const;

private:
    Kind kind_ = Kind::hardy;
    double alpha_ = 0.0;
    double scale_ = 1.0;
    double grading_ = 1.0;
    std::string tag_;
    Profile profile_;
    Field field_;
};

/// Finite positive Borel measure on the closed disk: atoms, a density on the circle against
/// |dzeta| / 2pi, and a sum of densities on the open disk.
struct MeasureSpec {
    std::string label;
    std::vector<Atom> atoms;
    std::optional<TrigPoly> circle_density;
    std::vector<DiskDensity> disk_density;

    bool is_zero() const;
    /// True when every part is invariant under rotation.
    bool is_radial() const;
    bool has_circle_part() const;
};

MeasureSpec hardy_measure();
MeasureSpec dirichlet_measure();
MeasureSpec alpha_measure(double a);
MeasureSpec atoms_measure(std::vector<Atom> atoms, std::string label = "atoms");

/// Preset by name: "hardy", "dirichlet", "alpha" (params = {a}), "atoms" (params = re, im, mass triples).
MeasureSpec make_measure(std::string_view preset, std::span<const double> params = {});

/// Short text form used on the command line: "hardy", "dirichlet", "alpha:0.5",
/// "atom:1,0,1" (re, im, mass; repeat the triple for several atoms), "zero".
MeasureSpec parse_measure_preset(std::string_view text);

MeasureSpec merge(const MeasureSpec& a, const MeasureSpec& b);

/// Integral of rho(s) g(s) over s in [0, 1] (tanh-sinh); g receives (s, 1 - s).
double radial_integral(const DiskDensity& d, const std::function<double(double, double)>& g);

double total_mass(const MeasureSpec& mu, const Resolution& res = {});

/// Violated invariants, empty when valid.
std::vector<std::string> validate_measure(const MeasureSpec& mu, const Resolution& res = {});

/// Throws DomainError listing the violations.
void require_valid(const MeasureSpec& mu, const Resolution& res = {});

/// Largest grading exponent among the disk parts (1 when there are none).
double suggested_grading(const MeasureSpec& mu);

}  // namespace dmu
