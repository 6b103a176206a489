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

#include <vector>

#include "empc/dynamics.hpp"

namespace empc {

struct IntegratorConfig {
    double dt = 0.25;   // control cycle, s
    int substeps = 5;   // RK4 steps per cycle

    void validate() const;
};

/// One classical RK4 step of dx/dt = f(x) for any vector type.
template <typename Vec, typename Deriv>
Vec rk4_step(const Vec& x, double h, Deriv&& f)
{
    const Vec k1 = f(x);
    const Vec k2 = f(Vec(x + 0.5 * h * k1));
    const Vec k3 = f(Vec(x + 0.5 * h * k2));
    const Vec k4 = f(Vec(x + h * k3));
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Quadrotor RK4 step with u held constant. Throws PropagationError on a
/// non-finite derivative or result.
QuadState rk4_step(const QuadState& x, const ControlInput& u, const QuadParams& p, double h);

/// Advance one control cycle (cfg.substeps RK4 steps of cfg.dt / substeps).
QuadState advance(const QuadState& x, const ControlInput& u, const IntegratorConfig& cfg,
                  const QuadParams& p);

/// Zero-order-hold trajectory x_0 .. x_N on the cycle grid.
std::vector<QuadState> simulate_zoh(const QuadState& x0, const ControlInput& u, int steps,
                                    const IntegratorConfig& cfg, const QuadParams& p);

} // namespace empc
