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

#include "empc/dynamics.hpp"

#include <cmath>

#include "empc/errors.hpp"

namespace empc {

void QuadParams::validate() const
{
    if (!(Ixx > 0 && Iyy > 0 && Izz > 0)) throw InvalidArgument("inertia must be positive");
    if (!(m > 0)) throw InvalidArgument("mass must be positive");
    if (!(k > 0)) throw InvalidArgument("lift coefficient must be positive");
    if (!(l > 0)) throw InvalidArgument("rotor arm must be positive");
    if (!(g > 0)) throw InvalidArgument("gravity must be positive");
    if (!(b >= 0)) throw InvalidArgument("yaw drag coefficient must be nonnegative");
    if (!((a_drag.array() >= 0).all())) throw InvalidArgument("translational drag must be nonnegative");
}

Eigen::Matrix3d inertia_jacobian(const Eigen::Vector3d& eta, const QuadParams& p)
{
    const double sf = std::sin(eta(0)), cf = std::cos(eta(0));
    const double st = std::sin(eta(1)), ct = std::cos(eta(1));

    const double j23 = (p.Iyy - p.Izz) * cf * sf * ct;
    Eigen::Matrix3d j;
    j << p.Ixx, 0.0, -p.Ixx * st,
         0.0, p.Iyy * cf * cf + p.Izz * sf * sf, j23,
         -p.Ixx * st, j23, p.Ixx * st * st + p.Iyy * sf * sf * ct * ct + p.Izz * cf * cf * ct * ct;
    return j;
}

Eigen::Matrix3d coriolis(const Eigen::Vector3d& eta, const Eigen::Vector3d& deta,
                         const QuadParams& p)
{
    const double sf = std::sin(eta(0)), cf = std::cos(eta(0));
    const double st = std::sin(eta(1)), ct = std::cos(eta(1));
    const double dph = deta(0), dth = deta(1), dps = deta(2);
    const double Ixx = p.Ixx, Iyy = p.Iyy, Izz = p.Izz;
    const double sf2 = sf * sf, cf2 = cf * cf, ct2 = ct * ct;

    Eigen::Matrix3d c;
    c(0, 0) = 0.0;
    c(0, 1) = (Iyy - Izz) * (dth * cf * sf + dps * sf2 * ct)
            + (Izz - Iyy) * dps * cf2 * ct - Ixx * dps * ct;
    c(0, 2) = (Izz - Iyy) * dps * cf * sf * ct2;
    // sin^2(phi) in the psi-rate term; the single-power form breaks deta^T C deta = 1/2 deta^T dJ/dt deta.
    c(1, 0) = (Izz - Iyy) * (dth * cf * sf + dps * sf2 * ct)
            + (Iyy - Izz) * dps * cf2 * ct + Ixx * dps * ct;
    c(1, 1) = (Izz - Iyy) * dph * cf * sf;
    c(1, 2) = -Ixx * dps * st * ct + Iyy * dps * sf2 * st * ct + Izz * dps * cf2 * st * ct;
    c(2, 0) = (Iyy - Izz) * dps * ct2 * sf * cf - Ixx * dth * ct;
    c(2, 1) = (Izz - Iyy) * (dth * cf * sf * st + dph * sf2 * ct)
            + (Iyy - Izz) * dph * cf2 * ct
            + Ixx * dps * st * ct - Iyy * dps * sf2 * st * ct - Izz * dps * cf2 * st * ct;
    c(2, 2) = (Iyy - Izz) * dph * cf * sf * ct2 - Iyy * dth * sf2 * st * ct
            - Izz * dth * cf2 * st * ct + Ixx * dth * ct * st;
    return c;
}

RotorWrench rotor_wrench(const ControlInput& u, const QuadParams& p)
{
    RotorWrench w;
    w.thrust = p.k * u.sum();
    w.torque << p.l * p.k * (u(3) - u(1)),
                p.l * p.k * (u(2) - u(0)),
                p.b * (u(0) - u(1) + u(2) - u(3));
    return w;
}

Eigen::Matrix3d rotation(const Eigen::Vector3d& eta)
{
    return (Eigen::AngleAxisd(eta(2), Eigen::Vector3d::UnitZ()) *
            Eigen::AngleAxisd(eta(1), Eigen::Vector3d::UnitY()) *
            Eigen::AngleAxisd(eta(0), Eigen::Vector3d::UnitX())).toRotationMatrix();
}

QuadState state_derivative(const QuadState& x, const ControlInput& u, const QuadParams& p)
{
    const Eigen::Vector3d eta = x.segment<3>(state::phi);
    const Eigen::Vector3d vel = x.segment<3>(state::vx);
    const Eigen::Vector3d deta = x.segment<3>(state::dphi);

    const RotorWrench w = rotor_wrench(u, p);

    const Eigen::Vector3d accel = -p.g * Eigen::Vector3d::UnitZ()
                                + (w.thrust / p.m) * rotation(eta).col(2)
                                - p.a_drag.cwiseProduct(vel) / p.m;

    const Eigen::Matrix3d j = inertia_jacobian(eta, p);
    if (std::abs(j.determinant()) < 1e-12) {
        throw NumericalError("inertia Jacobian is singular at theta = " + std::to_string(eta(1)));
    }
    const Eigen::Vector3d rhs = w.torque - coriolis(eta, deta, p) * deta;
    const Eigen::Vector3d ddeta = j.ldlt().solve(rhs);

    QuadState dx;
    dx.segment<3>(state::x) = vel;
    dx.segment<3>(state::phi) = deta;
    dx.segment<3>(state::vx) = accel;
    dx.segment<3>(state::dphi) = ddeta;
    return dx;
}

double mechanical_energy(const QuadState& x, const QuadParams& p)
{
    const Eigen::Vector3d eta = x.segment<3>(state::phi);
    const Eigen::Vector3d vel = x.segment<3>(state::vx);
    const Eigen::Vector3d deta = x.segment<3>(state::dphi);
    return 0.5 * p.m * vel.squaredNorm()
         + 0.5 * deta.dot(inertia_jacobian(eta, p) * deta)
         + p.m * p.g * x(state::z);
}

} // namespace empc
