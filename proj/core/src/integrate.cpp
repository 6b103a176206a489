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

#include "empc/integrate.hpp"

#include <string>

#include "empc/errors.hpp"

namespace empc {

void IntegratorConfig::validate() const
{
    if (!(dt > 0.0)) throw InvalidArgument("integrator dt must be positive");
    if (substeps < 1) throw InvalidArgument("integrator substeps must be >= 1");
}

QuadState rk4_step(const QuadState& x, const ControlInput& u, const QuadParams& p, double h)
{
    if (!(h > 0.0)) throw InvalidArgument("rk4_step: step must be positive");
    const auto f = [&](const QuadState& s) {
        QuadState d = state_derivative(s, u, p);
        if (!d.allFinite()) throw PropagationError("non-finite state derivative");
        return d;
    };
    QuadState next = rk4_step(x, h, f);
    if (!next.allFinite()) throw PropagationError("non-finite state after RK4 step");
    return next;
}

QuadState advance(const QuadState& x, const ControlInput& u, const IntegratorConfig& cfg,
                  const QuadParams& p)
{
    const double h = cfg.dt / cfg.substeps;
    QuadState s = x;
    for (int i = 0; i < cfg.substeps; ++i) s = rk4_step(s, u, p, h);
    return s;
}

std::vector<QuadState> simulate_zoh(const QuadState& x0, const ControlInput& u, int steps,
                                    const IntegratorConfig& cfg, const QuadParams& p)
{
    if (steps < 1) throw InvalidArgument("simulate_zoh: need at least one step");
    cfg.validate();
    std::vector<QuadState> traj;
    traj.reserve(static_cast<std::size_t>(steps) + 1);
    traj.push_back(x0);
    for (int n = 0; n < steps; ++n) traj.push_back(advance(traj.back(), u, cfg, p));
    return traj;
}

} // namespace empc
