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

#include <Eigen/Dense>

#include "empc/dynamics.hpp"
#include "empc/integrate.hpp"

namespace empc {

/// Black-box forward model seen by the controller: it can only be simulated.
/// No Jacobian or adjoint is ever requested.
class ForecastModel {
public:
    virtual ~ForecastModel() = default;

    virtual Eigen::Index state_dim() const = 0;
    virtual Eigen::Index control_dim() const = 0;

    /// State after \p steps control cycles with \p u held constant.
    /// Must be safe to call concurrently.
    virtual Eigen::VectorXd propagate(const Eigen::VectorXd& x0, const Eigen::VectorXd& u,
                                      int steps) const = 0;
};

/// Quadrotor rigid body integrated with fixed-step RK4 under zero-order hold.
class QuadrotorModel final : public ForecastModel {
public:
    QuadrotorModel(QuadParams params, IntegratorConfig integrator);

    Eigen::Index state_dim() const override { return 12; }
    Eigen::Index control_dim() const override { return 4; }

    Eigen::VectorXd propagate(const Eigen::VectorXd& x0, const Eigen::VectorXd& u,
                              int steps) const override;

    const QuadParams& params() const noexcept { return params_; }
    const IntegratorConfig& integrator() const noexcept { return integrator_; }

private:
    QuadParams params_;
    IntegratorConfig integrator_;
};

} // namespace empc
