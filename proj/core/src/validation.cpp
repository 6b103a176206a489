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

#include "empc/validation.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <vector>

#include "empc/controller.hpp"
#include "empc/dynamics.hpp"
#include "empc/integrate.hpp"

namespace empc {

namespace {

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

CheckResult check(std::string name, double value, double tol)
{
    return {std::move(name), value <= tol, fmt(value) + " <= " + fmt(tol)};
}

// Free fall with linear drag, vz' = -g - a vz / m; z(t) closed form.
double drag_fall_error(int steps_per_second, const QuadParams& p)
{
    const double h = 1.0 / steps_per_second;
    QuadState x = QuadState::Zero();
    for (int i = 0; i < steps_per_second; ++i) x = rk4_step(x, ControlInput::Zero(), p, h);
    const double c = p.a_drag.z() / p.m;
    const double z_exact = -p.g / c * 1.0 + p.g / (c * c) * (1.0 - std::exp(-c * 1.0));
    return std::abs(x(state::z) - z_exact);
}

} // namespace

std::vector<CheckResult> run_property_checks(unsigned seed)
{
    std::vector<CheckResult> out;
    const QuadParams p;
    Rng rng(seed);
    std::uniform_real_distribution<double> ang(-1.2, 1.2);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    {
        const Eigen::Matrix3d j0 = inertia_jacobian(Eigen::Vector3d::Zero(), p);
        const Eigen::Matrix3d expected = Eigen::Vector3d(p.Ixx, p.Iyy, p.Izz).asDiagonal();
        out.push_back(check("inertia Jacobian at level attitude is diag(I)", (j0 - expected).cwiseAbs().maxCoeff(), 1e-15));
    }
    {
        double asym = 0.0, cor = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Eigen::Vector3d eta(ang(rng), ang(rng), ang(rng));
            const Eigen::Matrix3d j = inertia_jacobian(eta, p);
            asym = std::max(asym, (j - j.transpose()).cwiseAbs().maxCoeff());
            cor = std::max(cor, coriolis(eta, Eigen::Vector3d::Zero(), p).cwiseAbs().maxCoeff());
        }
        out.push_back(check("inertia Jacobian symmetric", asym, 1e-12));
        out.push_back(check("Coriolis vanishes at zero rates", cor, 0.0));
    }
    {
        const double r = state_derivative(QuadState::Zero(), ControlInput::Constant(p.hover_trim()), p).norm();
        out.push_back(check("hover is a fixed point", r, 1e-10));
    }
    {
        QuadState x = QuadState::Zero();
        x.segment<3>(state::vx) << 0.3, -0.2, 0.5;
        x.segment<3>(state::phi) << 0.2, -0.3, 0.1;
        x.segment<3>(state::dphi) << 0.7, -0.4, 0.9;
        const double e0 = mechanical_energy(x, p);
        double drift = 0.0;
        for (int i = 0; i < 2000; ++i) {
            x = rk4_step(x, ControlInput::Zero(), p, 1e-3);
            drift = std::max(drift, std::abs(mechanical_energy(x, p) - e0));
        }
        out.push_back(check("energy conserved without thrust (relative, 2 s)", drift / std::abs(e0), 1e-5));
    }
    {
        QuadParams dp = p;
        dp.a_drag = Eigen::Vector3d(0.0, 0.0, 1.5);
        const double e1 = drag_fall_error(10, dp), e2 = drag_fall_error(20, dp);
        const double order = std::log2(e1 / e2);
        out.push_back({"RK4 convergence order on damped free fall", std::abs(order - 4.0) < 0.3,
                       "observed order " + fmt(order)});
    }
    {
        double worst = 0.0;
        PerformanceSpec spec;
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::Index members = 8 + trial, dim = 6;
            Eigen::MatrixXd u = Eigen::MatrixXd::NullaryExpr(4, members, [&] { return 4.9 + 0.01 * unit(rng); });
            Eigen::MatrixXd z = Eigen::MatrixXd::NullaryExpr(dim, members, [&] { return unit(rng); });
            spec.target = Eigen::VectorXd::NullaryExpr(dim, [&] { return unit(rng); });
            spec.rho = Eigen::VectorXd::NullaryExpr(dim, [&] { return 0.05 + std::abs(unit(rng)); });
            Rng a(seed + trial), b(seed + trial);
            const auto direct = update_direct(Ensemble(u), Ensemble(z), spec, true, a);
            const auto sqrt_form = update_sqrt(Ensemble(u), Ensemble(z), spec, true, 0.0, b);
            worst = std::max(worst, (sqrt_form.posterior.data() - direct.posterior.data()).norm() /
                                        direct.posterior.data().norm());
        }
        out.push_back(check("square-root update matches direct form", worst, 1e-8));
    }
    {
        const Eigen::Index members = 5;
        const Eigen::MatrixXd m1 = Eigen::MatrixXd::NullaryExpr(members, members, [&] { return unit(rng); });
        const Eigen::MatrixXd m2 = Eigen::MatrixXd::NullaryExpr(members, members, [&] { return unit(rng); });
        const std::vector<MessageStep> off{{m1, false}, {m2, false}};
        const std::vector<MessageStep> last{{m1, false}, {m2, true}};
        const double e_off = (trajectory_message(off) - Eigen::MatrixXd::Identity(members, members)).norm();
        const double e_last = (trajectory_message(last) - m2).norm();
        out.push_back(check("trajectory message identities", std::max(e_off, e_last), 0.0));
    }
    {
        // z = g u + c with prior N(mean, s^2): the posterior mean has a closed form.
        // Standard error from independent replicates, so the gain's own
        // sampling error is included.
        const double g = 2.0, c = 0.5, prior_mean = 1.0, s = 0.3, rho = 0.2, target = 3.0;
        const Eigen::Index members = 10000;
        const PerformanceSpec spec{Eigen::VectorXd::Constant(1, target), Eigen::VectorXd::Constant(1, rho), {}};
        auto estimate = [&](std::uint64_t run_seed) {
            Rng r(run_seed);
            const Ensemble u = draw(Eigen::VectorXd::Constant(1, prior_mean), Eigen::VectorXd::Constant(1, s),
                                    members, r);
            const Ensemble z(g * u.data().array() + c);
            return mean(update_sqrt(u, z, spec, true, 0.0, r).posterior)(0);
        };
        const double map = prior_mean + s * s * g / (g * g * s * s + rho * rho) * (target - g * prior_mean - c);
        Eigen::MatrixXd reps(1, 20);
        for (Eigen::Index k = 0; k < reps.cols(); ++k) reps(0, k) = estimate(seed + 1000 + k);
        const double se = member_std(Ensemble(reps))(0);
        out.push_back(check("linear-Gaussian posterior mean (3 standard errors)", std::abs(estimate(seed) - map),
                            3.0 * se));
    }
    return out;
}

bool report(const std::vector<CheckResult>& results, std::ostream& out)
{
    bool all = true;
    for (const auto& r : results) {
        out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  [" << r.detail << "]\n";
        all = all && r.passed;
    }
    return all;
}

} // namespace empc
