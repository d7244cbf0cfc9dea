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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "orthodyn/chain_dynamics.hpp"

namespace orthodyn {
namespace {

constexpr double kPi = std::numbers::pi;

// Tree mass matrix from pose differences only: body twists come from
// central differences of frame_poses, then M = sum J^T Lambda J.
Mat6 fd_tree_mass_matrix(const RobotModel& m, int chain, const Vec6& q) {
  const double h = 1e-6;
  Mat6 out = Mat6::Zero();
  std::array<Eigen::Matrix<double, 6, 6>, kBodiesPerChain> jac{};
  const auto poses = frame_poses(m, chain, tree_frame_values(q));
  for (int j = 0; j < 6; ++j) {
    Vec6 e = Vec6::Zero();
    e[j] = h;
    const auto plus = frame_poses(m, chain, tree_frame_values(q + e));
    const auto minus = frame_poses(m, chain, tree_frame_values(q - e));
    for (int k = 0; k < kBodiesPerChain; ++k) {
      const Mat3 dR = (plus[k].linear() - minus[k].linear()) / (2 * h);
      const Mat3 w_hat = dR * poses[k].linear().transpose();
      jac[k].block<3, 1>(0, j) = Vec3(w_hat(2, 1), w_hat(0, 2), w_hat(1, 0));
      jac[k].block<3, 1>(3, j) =
          (plus[k].translation() - minus[k].translation()) / (2 * h);
    }
  }
  for (int k = 0; k < kBodiesPerChain; ++k) {
    const LinkInertia& li = m.chains[chain].bodies[k];
    const Mat3& R = poses[k].linear();
    const Vec3 ms = R * li.first_moment;
    Mat3 ms_hat;
    ms_hat << 0, -ms.z(), ms.y(), ms.z(), 0, -ms.x(), -ms.y(), ms.x(), 0;
    Mat6 lambda;
    lambda << R * li.inertia * R.transpose(), ms_hat, ms_hat.transpose(),
        li.mass * Mat3::Identity();
    out += jac[k].transpose() * lambda * jac[k];
  }
  return out;
}

// Gravity potential of the tree from frame origins and first moments.
double potential(const RobotModel& m, int chain, const Vec6& q) {
  const auto poses = frame_poses(m, chain, tree_frame_values(q));
  double u = 0.0;
  for (int k = 0; k < kBodiesPerChain; ++k) {
    const LinkInertia& li = m.chains[chain].bodies[k];
    u -= m.gravity.dot(li.mass * poses[k].translation() +
                       poses[k].linear() * li.first_moment);
  }
  return u;
}

class ChainDynamics : public ::testing::Test {
 protected:
  RobotModel model = make_default_model();
  std::mt19937_64 rng{11};

  Vec3 random_vec(double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return Vec3(u(rng), u(rng), u(rng));
  }
  Vec3 random_q() { return Vec3(-0.4, -kPi / 2, 0.0) + random_vec(0.4); }
  Vec6 random_tree_q() {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    Vec6 q;
    q << -0.4 + u(rng), -kPi / 2 + u(rng), u(rng), u(rng), u(rng), u(rng);
    return q;
  }
};

TEST(Closure, GMatrixIsExact) {
  GMatrix expected;
  expected << 1, 0, 0,  //
      0, 1, 0,          //
      0, 0, 1,          //
      0, 0, -1,         //
      0, -1, 0,         //
      0, 0, 1;
  EXPECT_EQ(closure_jacobian(), expected);
}

TEST(Closure, ExpandFollowsConstraints) {
  const TreeState ts = closure_expand(Vec3(0.1, -1.2, 0.3), Vec3(1, 2, 3), Vec3(4, 5, 6));
  Vec6 q, qd, qdd;
  q << 0.1, -1.2, 0.3, -0.3, 1.2 - kPi / 2, 0.3;
  qd << 1, 2, 3, -3, -2, 3;
  qdd << 4, 5, 6, -6, -5, 6;
  EXPECT_TRUE(ts.q.isApprox(q, 1e-15));
  EXPECT_EQ(ts.qd, qd);
  EXPECT_EQ(ts.qdd, qdd);
}

TEST_F(ChainDynamics, TreeInertiaMatchesPoseDifferenceOracle) {
  for (int s = 0; s < 20; ++s) {
    const Vec6 q = random_tree_q();
    for (int i = 0; i < kNumChains; ++i) {
      Mat6 ne;
      TreeState ts;
      ts.q = q;
      ts.qd.setZero();
      for (int k = 0; k < 6; ++k) {
        ts.qdd = Vec6::Unit(k);
        ne.col(k) = tree_newton_euler(model, i, ts, Vec3::Zero());
      }
      const Mat6 oracle = fd_tree_mass_matrix(model, i, q);
      EXPECT_LT((ne - oracle).norm() / oracle.norm(), 1e-8);
    }
  }
}

TEST_F(ChainDynamics, TreeGravityMatchesPotentialGradient) {
  const double h = 1e-6;
  for (int s = 0; s < 20; ++s) {
    const Vec6 q = random_tree_q();
    for (int i = 0; i < kNumChains; ++i) {
      Vec6 grad;
      for (int k = 0; k < 6; ++k) {
        Vec6 e = Vec6::Zero();
        e[k] = h;
        grad[k] = (potential(model, i, q + e) - potential(model, i, q - e)) / (2 * h);
      }
      TreeState ts;
      ts.q = q;
      const Vec6 ne = tree_newton_euler(model, i, ts, model.gravity);
      EXPECT_LT((ne - grad).norm() / grad.norm(), 1e-7);
    }
  }
}

TEST_F(ChainDynamics, ClosedChainInertiaIsProjectedTreeInertia) {
  for (int s = 0; s < 20; ++s) {
    const Vec3 q = random_q();
    for (int i = 0; i < kNumChains; ++i) {
      const TreeState ts = closure_expand(q, Vec3::Zero(), Vec3::Zero());
      const GMatrix& G = closure_jacobian();
      const Mat3 oracle = G.transpose() * fd_tree_mass_matrix(model, i, ts.q) * G;
      const Mat3 a = chain_inertia_A(model, i, q);
      EXPECT_LT((a - oracle).norm() / oracle.norm(), 1e-8);
      EXPECT_LT((a - a.transpose()).norm() / a.norm(), 1e-12);
      EXPECT_GT(Eigen::SelfAdjointEigenSolver<Mat3>(a).eigenvalues().minCoeff(), 0.0);
    }
  }
}

TEST_F(ChainDynamics, DecompositionIsExact) {
  for (int s = 0; s < 50; ++s) {
    const Vec3 q = random_q(), qd = random_vec(2.0), qdd = random_vec(10.0);
    for (int i = 0; i < kNumChains; ++i) {
      const Vec3 h = chain_torques_H(model, i, q, qd, qdd);
      const Vec3 split =
          chain_inertia_A(model, i, q) * qdd + chain_bias_h(model, i, q, qd);
      EXPECT_LT((h - split).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST_F(ChainDynamics, ZeroGravityAtRestGivesZero) {
  const Vec3 q = random_q();
  for (int i = 0; i < kNumChains; ++i) {
    EXPECT_EQ(chain_torques_H(model, i, q, Vec3::Zero(), Vec3::Zero(), Vec3::Zero()),
              Vec3::Zero());
  }
}

TEST_F(ChainDynamics, BiasIsQuadraticInVelocityWithoutGravity) {
  RobotModel m = model;
  m.gravity.setZero();
  const Vec3 q = random_q(), qd = random_vec(1.0);
  for (int i = 0; i < kNumChains; ++i) {
    const Vec3 h1 = chain_bias_h(m, i, q, qd);
    const Vec3 h2 = chain_bias_h(m, i, q, 2.0 * qd);
    EXPECT_LT((h2 - 4.0 * h1).norm(), 1e-12 * (1.0 + h2.norm()));
  }
}

TEST_F(ChainDynamics, ReactionForcePathsAgree) {
  for (int s = 0; s < 20; ++s) {
    const Vec3 p = Vec3(0.0, 0.0, 0.2) + 0.1 * random_vec(1.0);
    const IgmResult pos = igm(model, p);
    const Mat3 jp_inv = robot_jacobian_inverse(model, pos.chain_q);
    for (int i = 0; i < kNumChains; ++i) {
      const Vec3& q = pos.chain_q[i];
      const Vec3 qd = random_vec(1.0), qdd = random_vec(5.0);
      const double g1 = 3.7;
      const Vec3 joint = chain_reaction_force(model, i, q, qd, qdd, g1);
      const Vec3 cart =
          chain_reaction_force_cartesian(model, i, q, qd, qdd, g1, jp_inv);
      EXPECT_LT((joint - cart).norm(), 1e-10 * (1.0 + joint.norm()));
      // J^T f = Gamma - H: the passive joints carry no torque.
      const Vec3 residual = chain_jacobian(model, i, q).transpose() * joint -
                            (Vec3(g1, 0, 0) - chain_torques_H(model, i, q, qd, qdd));
      EXPECT_LT(residual.norm(), 1e-10 * (1.0 + joint.norm()));
    }
  }
}

TEST_F(ChainDynamics, AsymmetricBodyInertiaIsRejected) {
  RobotModel bad = model;
  bad.chains[0].bodies[2].inertia(0, 2) += 0.05;
  EXPECT_THROW(chain_inertia_A(bad, 0, random_q()), NumericalError);
}

TEST_F(ChainDynamics, ExternalForceActsAtAttachmentPoint) {
  // A force on body 6 maps to joint space through the transposed Jacobian.
  const Vec3 q = random_q();
  const Vec3 f = random_vec(10.0);
  RobotModel m = model;
  m.gravity.setZero();
  for (int i = 0; i < kNumChains; ++i) {
    const TreeState ts = closure_expand(q, Vec3::Zero(), Vec3::Zero());
    const Vec6 tree = tree_newton_euler(m, i, ts, m.gravity, f);
    const Vec3 projected = closure_jacobian().transpose() * tree;
    const Vec3 expected = chain_jacobian(m, i, q).transpose() * f;
    EXPECT_LT((projected - expected).norm(), 1e-12 * (1.0 + expected.norm()));
  }
}

}  // namespace
}  // namespace orthodyn
