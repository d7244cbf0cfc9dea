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

#include <random>

#include <gtest/gtest.h>

#include "orthodyn/robot_dynamics.hpp"
#include "orthodyn/verify.hpp"

namespace orthodyn {
namespace {

class RobotDynamics : public ::testing::Test {
 protected:
  RobotModel model = make_default_model();
  std::mt19937_64 rng{23};

  Vec3 random_vec(double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return Vec3(u(rng), u(rng), u(rng));
  }
  Vec3 random_point() { return Vec3(0.0, 0.0, 0.2) + random_vec(0.08); }
};

TEST(PlatformForce, Examples) {
  RobotModel m = make_default_model();
  m.platform_mass = 2.0;
  EXPECT_TRUE(platform_force(m, Vec3::Zero()).isApprox(Vec3(0.0, 0.0, 19.62)));
  EXPECT_TRUE(platform_force(m, Vec3(1.0, 0.0, 0.0)).isApprox(Vec3(2.0, 0.0, 19.62)));
  m.gravity.setZero();
  EXPECT_EQ(platform_force(m, Vec3::Zero()), Vec3::Zero());
}

TEST_F(RobotDynamics, ZeroGravityAtRestNeedsNoForce) {
  RobotModel m = model;
  m.gravity.setZero();
  EXPECT_EQ(inverse_dynamics(m, random_point(), Vec3::Zero(), Vec3::Zero()),
            Vec3::Zero());
}

TEST_F(RobotDynamics, MasslessChainsAtIsotropicPoint) {
  // Only the platform has mass; at the isotropic point the Jacobian is a
  // signed permutation, so Gamma is a signed permutation of M_p (A - g).
  RobotModel m = model;
  for (auto& c : m.chains) {
    for (auto& b : c.bodies) b = LinkInertia{};
  }
  m.platform_mass = 2.5;
  const Vec3 k(0.0, 0.0, 0.2);
  const Vec3 a(0.3, -1.1, 0.7);
  const Vec3 gamma = inverse_dynamics(m, k, Vec3::Zero(), a);
  const Mat3 jp_inv = robot_jacobian_inverse(m, igm(m, k).chain_q);
  const Vec3 expected = jp_inv * (2.5 * (a - m.gravity));
  EXPECT_LT((gamma - expected).norm(), 1e-12);
  EXPECT_LT(std::abs(gamma.cwiseAbs().sum() - (2.5 * (a - m.gravity)).cwiseAbs().sum()),
            1e-12);
}

TEST_F(RobotDynamics, InverseDirectRoundTrip) {
  for (int s = 0; s < 200; ++s) {
    const Vec3 p = random_point(), v = random_vec(1.0), a = random_vec(5.0);
    const Vec3 gamma = inverse_dynamics(model, p, v, a);
    const Vec3 back = direct_dynamics(model, p, v, gamma);
    EXPECT_LT((back - a).norm() / (1.0 + a.norm()), 1e-8);
  }
}

TEST_F(RobotDynamics, ReactionForcesBalancePlatform) {
  for (int s = 0; s < 100; ++s) {
    const Vec3 a = random_vec(5.0);
    const InverseDynamicsTrace tr =
        inverse_dynamics_trace(model, random_point(), random_vec(1.0), a);
    EXPECT_LT((tr.f[0] + tr.f[1] + tr.f[2] - platform_force(model, a)).norm(), 1e-9);
    EXPECT_LT((tr.jp_inv.transpose() * tr.Gamma - tr.H_robot).norm(), 1e-10);
  }
}

TEST_F(RobotDynamics, InertiaIsSymmetricPositive) {
  for (int s = 0; s < 50; ++s) {
    const RobotDynModel dyn = assemble_robot_dyn(model, random_point(), random_vec(1.0));
    EXPECT_LT((dyn.A_robot - dyn.A_robot.transpose()).norm(), 1e-12);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Mat3>(dyn.A_robot).eigenvalues().minCoeff(),
              model.platform_mass * 0.999);
  }
}

TEST_F(RobotDynamics, KineticEnergyOfAssembledInertia) {
  for (int s = 0; s < 50; ++s) {
    const Vec3 p = random_point(), v = random_vec(1.0);
    const RobotDynModel dyn = assemble_robot_dyn(model, p, v);
    const double t = kinetic_energy(model, p, v);
    EXPECT_NEAR(0.5 * v.dot(dyn.A_robot * v), t, 1e-12 * t);
  }
}

TEST_F(RobotDynamics, StaticForcesFromPotential) {
  const double h = 1e-6;
  for (int s = 0; s < 20; ++s) {
    const Vec3 p = random_point();
    Vec3 grad;
    for (int k = 0; k < 3; ++k) {
      const Vec3 e = h * Vec3::Unit(k);
      grad[k] = (potential_energy(model, p + e) - potential_energy(model, p - e)) / (2 * h);
    }
    // Virtual work: Gamma . dL = dU for every platform displacement.
    const Mat3 jp_inv = robot_jacobian_inverse(model, igm(model, p).chain_q);
    const Vec3 gamma = inverse_dynamics(model, p, Vec3::Zero(), Vec3::Zero());
    EXPECT_LT((jp_inv.transpose() * gamma - grad).norm() / grad.norm(), 1e-7);
  }
}

TEST_F(RobotDynamics, LagrangianAgreement) {
  for (int s = 0; s < 20; ++s) {
    const Vec3 p = random_point(), v = random_vec(1.0), a = random_vec(5.0);
    const Vec3 gamma = inverse_dynamics(model, p, v, a);
    const Vec3 oracle = lagrangian_idm_oracle(model, p, v, a);
    EXPECT_LT((gamma - oracle).norm() / oracle.norm(), 1e-6);
  }
}

TEST_F(RobotDynamics, DirectModelOutsideWorkspace) {
  EXPECT_THROW(direct_dynamics(model, Vec3(0.0, 0.7, 0.2), Vec3::Zero(), Vec3::Zero()),
               OutOfWorkspace);
}

}  // namespace
}  // namespace orthodyn
