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

#include "orthodyn/chain_dynamics.hpp"

namespace orthodyn {

/// Chain dynamics seen at the platform attachment point.
struct CartesianChainModel {
  Mat3 A_x = Mat3::Zero();  // J^{-T} A J^{-1}
  Vec3 h_x = Vec3::Zero();  // J^{-T} h
};

struct RobotDynModel {
  Mat3 A_robot = Mat3::Zero();
  Vec3 h_robot = Vec3::Zero();
};

/// Total external force needed on the platform: M_p (A - g).
Vec3 platform_force(const RobotModel& model, const Vec3& A);

/// Everything computed during one inverse dynamics evaluation.
struct InverseDynamicsTrace {
  ActuatorVec Gamma = Vec3::Zero();
  PerChain<ChainState> chains{};
  Mat3 jp_inv = Mat3::Zero();
  PerChain<Vec3> H{};    // joint-space chain forces
  PerChain<Vec3> H_x{};  // the same at the platform point
  PerChain<Vec3> f{};    // force of each chain on the platform
  Vec3 F_p = Vec3::Zero();
  Vec3 H_robot = Vec3::Zero();
};

InverseDynamicsTrace inverse_dynamics_trace(const RobotModel& model,
                                            const Vec3& P, const Vec3& V,
                                            const Vec3& A);

/// Actuator forces for a platform motion.
ActuatorVec inverse_dynamics(const RobotModel& model, const Vec3& P,
                             const Vec3& V, const Vec3& A);

CartesianChainModel cartesian_chain_model(const RobotModel& model, int chain,
                                          const Vec3& q, const Vec3& qd);

RobotDynModel assemble_robot_dyn(const RobotModel& model, const Vec3& P,
                                 const Vec3& V);

/// Platform acceleration for actuator forces Gamma.
Vec3 direct_dynamics(const RobotModel& model, const Vec3& P, const Vec3& V,
                     const ActuatorVec& Gamma);

}  // namespace orthodyn
