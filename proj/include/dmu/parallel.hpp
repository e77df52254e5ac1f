// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace dmu {

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Each index is visited once;
/// results written per index make the outcome independent of scheduling.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body);

/// Worker count from MU_CORONA_JOBS, or 1 when unset or malformed.
int default_jobs();

}  // namespace dmu
