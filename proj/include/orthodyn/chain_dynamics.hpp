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

#include "orthodyn/kinematics.hpp"

namespace orthodyn {

/// Coordinates of the open tree obtained by cutting the parallelogram:
/// (q1, q2, q3, q4, q5, q7).
struct TreeState {
  Vec6 q = Vec6::Zero();
  Vec6 qd = Vec6::Zero();
  Vec6 qdd = Vec6::Zero();
};

using GMatrix = Eigen::Matrix<double, 6, 3>;

/// Frame number (1..9) of each tree coordinate.
inline constexpr std::array<int, 6> kTreeJointFrames = {1, 2, 3, 4, 5, 7};

/// d(tree coordinates)/d(independent coordinates); constant.
const GMatrix& closure_jacobian();

TreeState closure_expand(const Vec3& q, const Vec3& qd, const Vec3& qdd);

/// Frame values 1..9 of a tree state; the cut-joint frame 8 follows q4.
FrameValues tree_frame_values(const Vec6& tree_q);

/// Recursive Newton-Euler on the tree of one chain.
///
/// Gravity enters as a base acceleration. `f_ext` is the force body 6 exerts
/// on the platform, applied at the origin of frame 6. Returns the joint
/// force/torque of each tree coordinate.
Vec6 tree_newton_euler(const RobotModel& model, int chain, const TreeState& ts,
                       const Vec3& gravity, const Vec3& f_ext = Vec3::Zero());

/// H_i = G^T * tree forces of the isolated chain (no platform reaction).
Vec3 chain_torques_H(const RobotModel& model, int chain, const Vec3& q,
                     const Vec3& qd, const Vec3& qdd);

/// Same as chain_torques_H with an explicit gravity vector.
Vec3 chain_torques_H(const RobotModel& model, int chain, const Vec3& q,
                     const Vec3& qd, const Vec3& qdd, const Vec3& gravity);

/// Joint-space inertia of the closed chain; columns from unit accelerations.
Mat3 chain_inertia_A(const RobotModel& model, int chain, const Vec3& q);

/// Coriolis, centrifugal and gravity forces: H at zero acceleration.
Vec3 chain_bias_h(const RobotModel& model, int chain, const Vec3& q,
                  const Vec3& qd);

/// Force the chain applies to the platform when actuator `chain` pushes with
/// gamma_1 and the passive joints are free: J^{-T} (Gamma_i - H_i).
Vec3 chain_reaction_force(const RobotModel& model, int chain, const Vec3& q,
                          const Vec3& qd, const Vec3& qdd, double gamma_1);

/// Same force through the Cartesian split -H_x + (column of Jp^{-T}) gamma_1.
/// `jp_inv` is the robot Jacobian inverse of the configuration.
Vec3 chain_reaction_force_cartesian(const RobotModel& model, int chain,
                                    const Vec3& q, const Vec3& qd,
                                    const Vec3& qdd, double gamma_1,
                                    const Mat3& jp_inv);

}  // namespace orthodyn
