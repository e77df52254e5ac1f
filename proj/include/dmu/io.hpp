// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dmu/corona.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace dmu {

using json = nlohmann::ordered_json;

/// {"label", "atoms": [[re, im, mass]], "circle_density": {"coeffs": [[m, re, im]]},
///  "disk_density": {"kind": "hardy" | "alpha", "alpha", "scale"} or a list of those}
MeasureSpec measure_from_json(const json& j);
json measure_to_json(const MeasureSpec& mu);

/// [[re, im], ...], coefficient k first-index order
CPoly poly_from_json(const json& j);
json poly_to_json(const CPoly& p);

/// [[m, re, im], ...]
TrigPoly trig_from_json(const json& j);

/// {measure, f: [poly], h: poly, delta?}
CoronaProblem problem_from_json(const json& j);

json solution_to_json(const CoronaSolution& s);
CoronaSolution solution_from_json(const json& j);
json verification_to_json(const CoronaVerification& v);
json resolution_to_json(const Resolution& r);

/// Parses a file; malformed JSON raises DomainError.
json read_json_file(const std::string& path);

/// A path to a JSON file, inline JSON, or (measures only) a preset string such as "alpha:0.5".
MeasureSpec load_measure(const std::string& arg);
CPoly load_poly(const std::string& arg);
json load_json_arg(const std::string& arg);

/// UTC time in ISO 8601, the only nondeterministic field of a report.
std::string timestamp();

}  // namespace dmu
