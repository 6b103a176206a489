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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "empc/errors.hpp"
#include "empc/integrate.hpp"

namespace {

using empc::IntegratorConfig;
using empc::QuadParams;
using empc::QuadState;
namespace st = empc::state;

} // namespace

TEST(Rk4, SingleStepOnDecay)
{
    // 1 - h + h^2/2 - h^3/6 + h^4/24 at h = 0.1
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 1.0);
    const Eigen::VectorXd y = empc::rk4_step(x, 0.1, [](const Eigen::VectorXd& v) { return Eigen::VectorXd(-v); });
    EXPECT_NEAR(y(0), 0.9048375, 1e-15);
}

TEST(Rk4, OrderFourOnOscillator)
{
    auto f = [](const Eigen::Vector2d& v) { return Eigen::Vector2d(v(1), -v(0)); };
    auto err = [&](int n) {
        Eigen::Vector2d x(1.0, 0.0);
        const double h = 1.0 / n;
        for (int i = 0; i < n; ++i) x = empc::rk4_step(x, h, f);
        return std::abs(x(0) - std::cos(1.0));
    };
    const double order = std::log2(err(20) / err(40));
    EXPECT_NEAR(order, 4.0, 0.1);
}

TEST(Integrator, ConfigValidation)
{
    IntegratorConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.dt = 0.0;
    EXPECT_THROW(cfg.validate(), empc::InvalidArgument);
    cfg = IntegratorConfig{};
    cfg.substeps = 0;
    EXPECT_THROW(cfg.validate(), empc::InvalidArgument);
}

TEST(Integrator, FreeFallOneSecond)
{
    const QuadParams p;
    IntegratorConfig cfg;
    cfg.dt = 1.0;
    const QuadState x = empc::advance(QuadState::Zero(), empc::ControlInput::Zero(), cfg, p);
    EXPECT_NEAR(x(st::z), -4.905, 1e-12);
    EXPECT_NEAR(x(st::vz), -9.81, 1e-12);
}

TEST(Integrator, HoverStaysPut)
{
    const QuadParams p;
    const auto traj = empc::simulate_zoh(QuadState::Zero(), empc::ControlInput::Constant(p.hover_trim()), 40,
                                         IntegratorConfig{}, p);
    ASSERT_EQ(traj.size(), 41u);
    EXPECT_LE(traj.back().cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Integrator, SemigroupOnCycleGrid)
{
    const QuadParams p;
    const IntegratorConfig cfg;
    QuadState x0 = QuadState::Zero();
    x0(st::phi) = 0.05;
    x0(st::vx) = 0.2;
    const empc::ControlInput u(4.8, 5.0, 4.9, 5.1);
    const auto traj = empc::simulate_zoh(x0, u, 3, cfg, p);
    QuadState x = x0;
    for (int n = 1; n <= 3; ++n) {
        x = empc::advance(x, u, cfg, p);
        EXPECT_EQ(x, traj[n]);
    }
    EXPECT_EQ(traj.front(), x0);
}

TEST(Integrator, SubstepsConverge)
{
    const QuadParams p;
    QuadState x0 = QuadState::Zero();
    x0.segment<3>(st::dphi) << 0.3, -0.4, 0.8;
    const empc::ControlInput u(5.2, 4.7, 5.0, 4.9);
    IntegratorConfig coarse{0.25, 5}, fine{0.25, 10}, finest{0.25, 80};
    const QuadState ref = empc::advance(x0, u, finest, p);
    const double e1 = (empc::advance(x0, u, coarse, p) - ref).norm();
    const double e2 = (empc::advance(x0, u, fine, p) - ref).norm();
    EXPECT_GT(e1 / e2, 12.0);
}

TEST(Integrator, NonFiniteStateThrows)
{
    const QuadParams p;
    QuadState x = QuadState::Zero();
    const empc::ControlInput u = empc::ControlInput::Constant(std::numeric_limits<double>::max());
    EXPECT_THROW(empc::rk4_step(x, u, p, 0.05), empc::PropagationError);
    x(st::vx) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(empc::rk4_step(x, empc::ControlInput::Zero(), p, 0.05), empc::PropagationError);
}
