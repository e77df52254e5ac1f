// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dmu/quadrature.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dmu {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitInput = 2;

struct RunConfig {
    std::string command;  ///< "weight", ..., "corona solve", "corona verify", "selftest"
    std::string measure = "dirichlet";
    std::string nu;
    std::string poly;
    std::string poly_q;
    std::string trig;
    std::string points;
    std::string problem;
    std::string solution;
    std::string out;
    std::string space = "Dmu";
    std::string mode = "all";
    std::string method = "both";
    std::string lambda = "0,0";
    Resolution res{};
    std::optional<int> degree;
    std::optional<double> grid_radius;
    double tol = 1e-8;
    int jobs = 1;
    std::vector<int> only;
};

/// Checks sizes and tolerances; throws DomainError.
void validate(const RunConfig& cfg);

/// Runs one command; reports go to cfg.out or `out`. Returns an exit code.
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and dispatches.
int run_cli(int argc, char** argv);

}  // namespace dmu
