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

#include "empc/forecast_model.hpp"

#include "empc/errors.hpp"

namespace empc {

QuadrotorModel::QuadrotorModel(QuadParams params, IntegratorConfig integrator)
    : params_(std::move(params)), integrator_(integrator)
{
    params_.validate();
    integrator_.validate();
}

Eigen::VectorXd QuadrotorModel::propagate(const Eigen::VectorXd& x0, const Eigen::VectorXd& u,
                                          int steps) const
{
    if (x0.size() != 12 || u.size() != 4) {
        throw DimensionError("QuadrotorModel expects a 12-state and 4 rotor inputs");
    }
    if (steps < 1) throw InvalidArgument("propagate: need at least one step");
    QuadState s = x0;
    const ControlInput w2 = u;
    for (int n = 0; n < steps; ++n) s = advance(s, w2, integrator_, params_);
    return s;
}

} // namespace empc
