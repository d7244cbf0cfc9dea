// Copyright 2026 The orthodyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "orthodyn/model.hpp"

namespace orthodyn {

/// Independent joints of one chain: (q1 [m], q2 [rad], q3 [rad]).
struct ChainState {
  Vec3 q = Vec3::Zero();
  Vec3 qd = Vec3::Zero();
  Vec3 qdd = Vec3::Zero();
};

/// Cartesian state of the platform origin P in R0.
struct PlatformState {
  Vec3 P = Vec3::Zero();
  Vec3 V = Vec3::Zero();
  Vec3 A = Vec3::Zero();
};

/// Three actuator quantities (strokes, stroke rates or forces).
using ActuatorVec = Vec3;

inline constexpr double kArcsineMargin = 1e-12;
inline constexpr double kSingularCos = 1e-9;
inline constexpr double kMaxCondition = 1e12;

struct IgmResult {
  ActuatorVec L = Vec3::Zero();
  PerChain<Vec3> chain_q{};
};

/// Inverse geometric model. Only the elbow branch with q2 in (-pi, 0) exists.
IgmResult igm(const RobotModel& model, const Vec3& P);

/// Joint values of one chain for the platform at P (same branch as igm).
Vec3 chain_igm(const RobotModel& model, int chain, const Vec3& P);

/// Joint value of every frame 1..9 (index 0 is frame 1); frames 6 and 9
/// carry no joint and stay at zero.
using FrameValues = std::array<double, kFramesPerChain>;

/// Frame values of the closed chain: the parallelogram joints follow
/// q4 = -q3, q5 = -q2 - pi/2, q7 = q3, q8 = -q3.
FrameValues closed_chain_values(const Vec3& q);

/// World poses of frames 1..9 (index 0 is frame 1) for arbitrary frame values.
std::array<Transform, kFramesPerChain> frame_poses(const RobotModel& model,
                                                   int chain,
                                                   const FrameValues& values);

/// World poses of the closed chain for independent joints q.
std::array<Transform, kFramesPerChain> chain_frame_poses(const RobotModel& model,
                                                         int chain,
                                                         const Vec3& q);

/// Origin of frame 6 (the platform attachment point) in R0.
Vec3 chain_forward_point(const RobotModel& model, int chain, const Vec3& q);

/// 0J_i with V_p = 0J_i * qd.
Mat3 chain_jacobian(const RobotModel& model, int chain, const Vec3& q);

/// Inverse of chain_jacobian; throws ChainSingular near cos(q3) = 0.
Mat3 chain_jacobian_inverse(const RobotModel& model, int chain, const Vec3& q);

/// Hand-inverted closed form of chain_jacobian_inverse, kept as a cross-check.
/// Cotangents are evaluated as cos/sin so q2 = -pi/2 is regular.
Mat3 chain_jacobian_inverse_closed_form(const RobotModel& model, int chain,
                                        const Vec3& q);

/// Row i is the first row of chain i's Jacobian inverse.
Mat3 robot_jacobian_inverse(const RobotModel& model,
                            const PerChain<Vec3>& chain_q);

struct IkVelocityResult {
  ActuatorVec Ldot = Vec3::Zero();
  PerChain<Vec3> chain_qd{};
};

IkVelocityResult ik_velocity(const RobotModel& model,
                             const PerChain<Vec3>& chain_q, const Vec3& V);

/// Time derivative of chain_jacobian along joint rates qd.
Mat3 chain_jacobian_dot(const RobotModel& model, int chain, const Vec3& q,
                        const Vec3& qd);

/// Second-order inverse kinematics of one chain.
Vec3 ik_acceleration(const RobotModel& model, int chain, const Vec3& q,
                     const Vec3& qd, const Vec3& A);

/// Full joint-space state of all chains for a platform state.
PerChain<ChainState> chain_states(const RobotModel& model,
                                  const PlatformState& platform);

}  // namespace orthodyn
