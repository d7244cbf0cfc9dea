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

#include "orthodyn/robot_dynamics.hpp"

#include <sstream>

namespace orthodyn {

Vec3 platform_force(const RobotModel& model, const Vec3& A) {
  return model.platform_mass * A - model.platform_mass * model.gravity;
}

InverseDynamicsTrace inverse_dynamics_trace(const RobotModel& model,
                                            const Vec3& P, const Vec3& V,
                                            const Vec3& A) {
  InverseDynamicsTrace out;
  out.chains = chain_states(model, {P, V, A});
  PerChain<Vec3> chain_q{};
  for (int i = 0; i < kNumChains; ++i) chain_q[i] = out.chains[i].q;
  out.jp_inv = robot_jacobian_inverse(model, chain_q);

  out.F_p = platform_force(model, A);
  out.H_robot = out.F_p;
  PerChain<Mat3> j_inv_t{};
  for (int i = 0; i < kNumChains; ++i) {
    const ChainState& s = out.chains[i];
    j_inv_t[i] = chain_jacobian_inverse(model, i, s.q).transpose();
    out.H[i] = chain_torques_H(model, i, s.q, s.qd, s.qdd);
    out.H_x[i] = j_inv_t[i] * out.H[i];
    out.H_robot += out.H_x[i];
  }

  // Jp^{-T} Gamma = H_robot; Jp itself is never formed.
  out.Gamma = out.jp_inv.transpose().partialPivLu().solve(out.H_robot);

  for (int i = 0; i < kNumChains; ++i) {
    const Vec3 gamma_i(out.Gamma[i], 0.0, 0.0);
    out.f[i] = j_inv_t[i] * (gamma_i - out.H[i]);
  }
  return out;
}

ActuatorVec inverse_dynamics(const RobotModel& model, const Vec3& P,
                             const Vec3& V, const Vec3& A) {
  return inverse_dynamics_trace(model, P, V, A).Gamma;
}

CartesianChainModel cartesian_chain_model(const RobotModel& model, int chain,
                                          const Vec3& q, const Vec3& qd) {
  const Mat3 j_inv = chain_jacobian_inverse(model, chain, q);
  CartesianChainModel out;
  out.A_x = j_inv.transpose() * chain_inertia_A(model, chain, q) * j_inv;
  out.h_x = j_inv.transpose() * chain_bias_h(model, chain, q, qd);
  return out;
}

RobotDynModel assemble_robot_dyn(const RobotModel& model, const Vec3& P,
                                 const Vec3& V) {
  const IgmResult pos = igm(model, P);
  const IkVelocityResult vel = ik_velocity(model, pos.chain_q, V);
  RobotDynModel out;
  out.A_robot = model.platform_mass * Mat3::Identity();
  out.h_robot = -model.platform_mass * model.gravity;
  for (int i = 0; i < kNumChains; ++i) {
    const Vec3& q = pos.chain_q[i];
    const Vec3& qd = vel.chain_qd[i];
    const CartesianChainModel cart = cartesian_chain_model(model, i, q, qd);
    out.A_robot += cart.A_x;
    out.h_robot += cart.h_x - cart.A_x * (chain_jacobian_dot(model, i, q, qd) * qd);
  }
  return out;
}

Vec3 direct_dynamics(const RobotModel& model, const Vec3& P, const Vec3& V,
                     const ActuatorVec& Gamma) {
  const RobotDynModel dyn = assemble_robot_dyn(model, P, V);
  const PerChain<Vec3> chain_q = igm(model, P).chain_q;
  const Mat3 jp_inv = robot_jacobian_inverse(model, chain_q);

  Eigen::SelfAdjointEigenSolver<Mat3> eig;
  eig.computeDirect(dyn.A_robot, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || !(hi / lo < 1e12)) {
    std::ostringstream msg;
    msg << "robot inertia matrix is not safely invertible (eigenvalues " << lo
        << " .. " << hi << ")";
    throw NumericalError(msg.str());
  }
  return dyn.A_robot.partialPivLu().solve(jp_inv.transpose() * Gamma -
                                          dyn.h_robot);
}

}  // namespace orthodyn
