// Copyright 2026 The empc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace empc {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Fast self-checks of the dynamics, integrator and ensemble update
/// (inertia/Coriolis identities, hover fixed point, energy conservation,
/// RK4 order, square-root/direct agreement, trajectory message, linear-Gaussian
/// posterior). Deterministic for a given seed.
std::vector<CheckResult> run_property_checks(unsigned seed = 1);

/// Prints one PASS/FAIL line per check; returns true when all pass.
bool report(const std::vector<CheckResult>& results, std::ostream& out);

} // namespace empc
