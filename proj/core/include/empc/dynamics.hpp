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

namespace empc {

/// [x y z phi theta psi vx vy vz dphi dtheta dpsi]; Euler angles unwrapped.
using QuadState = Eigen::Matrix<double, 12, 1>;

/// Squared rotor angular velocities (rad^2/s^2), rotors 1..4.
using ControlInput = Eigen::Vector4d;

namespace state {
inline constexpr int x = 0;
inline constexpr int y = 1;
inline constexpr int z = 2;
inline constexpr int phi = 3;
inline constexpr int theta = 4;
inline constexpr int psi = 5;
inline constexpr int vx = 6;
inline constexpr int vy = 7;
inline constexpr int vz = 8;
inline constexpr int dphi = 9;
inline constexpr int dtheta = 10;
inline constexpr int dpsi = 11;
} // namespace state

struct QuadParams {
    double Ixx = 1.2;
    double Iyy = 1.2;
    double Izz = 2.3;
    double k = 1.0;     // lift per squared rotor speed
    double l = 0.25;    // arm, m
    double m = 2.0;     // kg
    double b = 0.2;     // yaw drag torque per squared rotor speed
    double g = 9.81;
    Eigen::Vector3d a_drag = Eigen::Vector3d::Zero();

    /// Throws InvalidArgument when a physical constant is out of range.
    void validate() const;

    /// Per-rotor squared speed that balances gravity: m g / (4 k).
    double hover_trim() const { return m * g / (4.0 * k); }
};

struct RotorWrench {
    double thrust = 0.0;
    Eigen::Vector3d torque = Eigen::Vector3d::Zero();
};

/// Symmetric 3x3 map J(eta) with rotational energy 1/2 deta^T J deta.
Eigen::Matrix3d inertia_jacobian(const Eigen::Vector3d& eta, const QuadParams& p);

/// Coriolis matrix C(eta, deta) such that tau = J ddeta + C deta.
Eigen::Matrix3d coriolis(const Eigen::Vector3d& eta, const Eigen::Vector3d& deta,
                         const QuadParams& p);

/// Cross configuration: rotors 1/3 on the pitch axis, 2/4 on the roll axis,
/// 1/3 spinning opposite to 2/4.
RotorWrench rotor_wrench(const ControlInput& u, const QuadParams& p);

/// Z-Y-X Euler rotation from body to inertial frame.
Eigen::Matrix3d rotation(const Eigen::Vector3d& eta);

/// Time derivative of the full rigid-body state.
/// Throws NumericalError if |det J(eta)| < 1e-12.
QuadState state_derivative(const QuadState& x, const ControlInput& u, const QuadParams& p);

/// Translational plus rotational kinetic energy plus m g z.
double mechanical_energy(const QuadState& x, const QuadParams& p);

} // namespace empc
