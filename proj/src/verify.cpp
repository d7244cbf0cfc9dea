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

#include "orthodyn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "config_text.hpp"
#include "orthodyn/harness.hpp"

namespace orthodyn {
namespace {

// Tree coordinate of frame k (0-based), -1 for frames without a tree joint.
int tree_index_of_frame(int k) {
  for (int t = 0; t < 6; ++t) {
    if (kTreeJointFrames[t] - 1 == k) return t;
  }
  return -1;
}

struct BodyJacobian {
  Eigen::Matrix<double, 3, 6> angular = Eigen::Matrix<double, 3, 6>::Zero();
  Eigen::Matrix<double, 3, 6> linear = Eigen::Matrix<double, 3, 6>::Zero();
};

// Jacobians of every body (angular velocity, velocity of the frame origin)
// with respect to the tree coordinates, built from the frame poses alone.
std::array<BodyJacobian, kBodiesPerChain> body_jacobians(const RobotModel& model,
                                                         int chain,
                                                         const Vec6& tree_q) {
  const auto table = model.chains[chain].frames();
  const auto poses = frame_poses(model, chain, tree_frame_values(tree_q));
  std::array<BodyJacobian, kBodiesPerChain> out{};
  for (int k = 0; k < kBodiesPerChain; ++k) {
    const Vec3 o_k = poses[k].translation();
    for (int j = k; j >= 0; j = table[j].parent - 1) {
      const int t = tree_index_of_frame(j);
      if (t < 0) continue;
      const Vec3 z = poses[j].linear().col(2);
      if (table[j].prismatic) {
        out[k].linear.col(t) += z;
      } else {
        out[k].angular.col(t) += z;
        out[k].linear.col(t) += z.cross(o_k - poses[j].translation());
      }
    }
  }
  return out;
}

Mat6 body_spatial_inertia(const LinkInertia& li, const Mat3& rot) {
  const Vec3 ms = rot * li.first_moment;
  Mat3 ms_hat;
  ms_hat << 0, -ms.z(), ms.y(), ms.z(), 0, -ms.x(), -ms.y(), ms.x(), 0;
  Mat6 m = Mat6::Zero();
  m.topLeftCorner<3, 3>() = rot * li.inertia * rot.transpose();
  m.topRightCorner<3, 3>() = ms_hat;
  m.bottomLeftCorner<3, 3>() = ms_hat.transpose();
  m.bottomRightCorner<3, 3>() = li.mass * Mat3::Identity();
  return m;
}

double tree_kinetic_energy(const RobotModel& model, int chain,
                           const Vec6& tree_q, const Vec6& tree_qd) {
  const auto jac = body_jacobians(model, chain, tree_q);
  const auto poses = frame_poses(model, chain, tree_frame_values(tree_q));
  const ChainGeometry& geom = model.chains[chain];
  double t = 0.0;
  for (int k = 0; k < kBodiesPerChain; ++k) {
    const LinkInertia& li = geom.bodies[k];
    const Vec3 w = jac[k].angular * tree_qd;
    const Vec3 v = jac[k].linear * tree_qd;
    const Mat3& rot = poses[k].linear();
    const Vec3 ms = rot * li.first_moment;
    const Mat3 j = rot * li.inertia * rot.transpose();
    t += 0.5 * li.mass * v.squaredNorm() + v.dot(w.cross(ms)) +
         0.5 * w.dot(j * w);
  }
  return t;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

double rel_err(const Eigen::MatrixXd& value, const Eigen::MatrixXd& reference) {
  const double scale = reference.norm();
  const double diff = (value - reference).norm();
  if (scale == 0.0) return diff;
  return diff / scale;
}

double rel_err_scalar(double value, double reference) {
  const double scale = std::abs(reference);
  const double diff = std::abs(value - reference);
  return scale == 0.0 ? diff : diff / scale;
}

// Polarisation of a quadratic form f(v) = 0.5 v^T M v.
template <int N, typename F>
Eigen::Matrix<double, N, N> quadratic_form_matrix(F&& half_quadratic) {
  Eigen::Matrix<double, N, N> m;
  Eigen::Matrix<double, N, 1> diag;
  for (int j = 0; j < N; ++j) {
    diag[j] = half_quadratic(Eigen::Matrix<double, N, 1>::Unit(j));
    m(j, j) = 2.0 * diag[j];
  }
  for (int j = 0; j < N; ++j) {
    for (int k = j + 1; k < N; ++k) {
      const Eigen::Matrix<double, N, 1> v =
          Eigen::Matrix<double, N, 1>::Unit(j) + Eigen::Matrix<double, N, 1>::Unit(k);
      m(j, k) = m(k, j) = half_quadratic(v) - diag[j] - diag[k];
    }
  }
  return m;
}

Vec3 gradient(const std::function<double(const Vec3&)>& f, const Vec3& x,
              double h) {
  Vec3 g;
  for (int k = 0; k < 3; ++k) {
    const Vec3 e = h * Vec3::Unit(k);
    g[k] = (f(x + e) - f(x - e)) / (2.0 * h);
  }
  return g;
}

// Joint rates of each chain for a platform velocity; taken from the chain
// Jacobian inverse so the energies stay independent of the dynamics code.
PerChain<Vec3> chain_rates(const RobotModel& model,
                           const PerChain<Vec3>& chain_q, const Vec3& V) {
  return ik_velocity(model, chain_q, V).chain_qd;
}

}  // namespace

// ---------------------------------------------------------------------------
// Energies

double tree_potential_energy(const RobotModel& model, int chain,
                             const Vec6& tree_q) {
  const auto poses = frame_poses(model, chain, tree_frame_values(tree_q));
  const ChainGeometry& geom = model.chains[chain];
  double u = 0.0;
  for (int k = 0; k < kBodiesPerChain; ++k) {
    const LinkInertia& li = geom.bodies[k];
    const Vec3 weighted = li.mass * poses[k].translation() +
                          poses[k].linear() * li.first_moment;
    u -= model.gravity.dot(weighted);
  }
  return u;
}

double chain_potential_energy(const RobotModel& model, int chain, const Vec3& q) {
  return tree_potential_energy(model, chain,
                               closure_expand(q, Vec3::Zero(), Vec3::Zero()).q);
}

double chain_kinetic_energy(const RobotModel& model, int chain, const Vec3& q,
                            const Vec3& qd) {
  const TreeState ts = closure_expand(q, qd, Vec3::Zero());
  return tree_kinetic_energy(model, chain, ts.q, ts.qd);
}

Mat6 tree_mass_matrix(const RobotModel& model, int chain, const Vec6& tree_q) {
  const auto jac = body_jacobians(model, chain, tree_q);
  const auto poses = frame_poses(model, chain, tree_frame_values(tree_q));
  Mat6 m = Mat6::Zero();
  for (int k = 0; k < kBodiesPerChain; ++k) {
    Mat6 j;
    j.topRows<3>() = jac[k].angular;
    j.bottomRows<3>() = jac[k].linear;
    m += j.transpose() *
         body_spatial_inertia(model.chains[chain].bodies[k], poses[k].linear()) * j;
  }
  return m;
}

double potential_energy(const RobotModel& model, const Vec3& P) {
  const IgmResult pos = igm(model, P);
  double u = -model.platform_mass * model.gravity.dot(P);
  for (int i = 0; i < kNumChains; ++i) {
    u += chain_potential_energy(model, i, pos.chain_q[i]);
  }
  return u;
}

double kinetic_energy(const RobotModel& model, const Vec3& P, const Vec3& V) {
  const IgmResult pos = igm(model, P);
  const PerChain<Vec3> qd = chain_rates(model, pos.chain_q, V);
  double t = 0.5 * model.platform_mass * V.squaredNorm();
  for (int i = 0; i < kNumChains; ++i) {
    t += chain_kinetic_energy(model, i, pos.chain_q[i], qd[i]);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Euler-Lagrange oracles

Vec3 lagrangian_idm_oracle(const RobotModel& model, const Vec3& P,
                           const Vec3& V, const Vec3& A,
                           FiniteDifferenceSteps steps) {
  auto mass = [&](const Vec3& at) {
    return quadratic_form_matrix<3>(
        [&](const Vec3& v) { return kinetic_energy(model, at, v); });
  };
  const double ht = steps.time;
  const double hp = steps.position;

  // d/dt (dT/dV) = M A + (dM/dt) V
  const Mat3 m = mass(P);
  const Mat3 m_dot = (mass(P + ht * V) - mass(P - ht * V)) / (2.0 * ht);
  const Vec3 momentum_rate = m * A + m_dot * V;

  const Vec3 dT_dP = gradient(
      [&](const Vec3& x) { return kinetic_energy(model, x, V); }, P, hp);
  const Vec3 dU_dP = gradient(
      [&](const Vec3& x) { return potential_energy(model, x); }, P, hp);
  const Vec3 f_cart = momentum_rate - dT_dP + dU_dP;

  const Mat3 jp_inv = robot_jacobian_inverse(model, igm(model, P).chain_q);
  return jp_inv.transpose().fullPivLu().solve(f_cart);
}

Vec3 chain_lagrangian_oracle(const RobotModel& model, int chain, const Vec3& q,
                             const Vec3& qd, const Vec3& qdd,
                             FiniteDifferenceSteps steps) {
  auto mass = [&](const Vec3& at) {
    return quadratic_form_matrix<3>(
        [&](const Vec3& v) { return chain_kinetic_energy(model, chain, at, v); });
  };
  const double ht = steps.time;
  const double hp = steps.position;
  const Mat3 m = mass(q);
  const Mat3 m_dot = (mass(q + ht * qd) - mass(q - ht * qd)) / (2.0 * ht);
  const Vec3 dT_dq = gradient(
      [&](const Vec3& x) { return chain_kinetic_energy(model, chain, x, qd); }, q,
      hp);
  const Vec3 dU_dq = gradient(
      [&](const Vec3& x) { return chain_potential_energy(model, chain, x); }, q,
      hp);
  return m * qdd + m_dot * qd - dT_dq + dU_dq;
}

// ---------------------------------------------------------------------------
// Sampling

StateSampler::StateSampler(const RobotModel& model, std::uint64_t seed)
    : model_(&model), state_(seed) {
  center_ = model.axes_intersection();
  radius_ = 0.3 * std::min({model.chains[0].D4, model.chains[1].D4,
                            model.chains[2].D4});
}

std::uint64_t StateSampler::next() {
  // splitmix64: portable and fully determined by the seed.
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double StateSampler::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Vec3 StateSampler::in_ball(double radius) {
  while (true) {
    const Vec3 v(2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0,
                 2.0 * uniform() - 1.0);
    if (v.squaredNorm() <= 1.0) return radius * v;
  }
}

Vec3 StateSampler::point() {
  while (true) {
    const Vec3 p = center_ + in_ball(radius_);
    try {
      const IgmResult pos = igm(*model_, p);
      robot_jacobian_inverse(*model_, pos.chain_q);
      return p;
    } catch (const OutOfWorkspace&) {
    } catch (const ChainSingular&) {
    }
  }
}

PlatformState StateSampler::state() {
  PlatformState s;
  s.P = point();
  s.V = in_ball(1.0);
  s.A = in_ball(5.0);
  return s;
}

// ---------------------------------------------------------------------------
// Tolerances

const OracleTolerances& default_tolerances() {
  static const OracleTolerances tol = {
      {"igm_round_trip", 1e-9},
      {"parallelogram_closure", 1e-9},
      {"closure_identities", 0.0},
      {"chain_jacobian_fd", 1e-6},
      {"chain_jacobian_inverse_identity", 1e-10},
      {"chain_jacobian_inverse_closed_form", 1e-10},
      {"robot_jacobian_rows", 0.0},
      {"robot_jacobian_inverse_fd", 1e-6},
      {"ik_velocity_fd", 1e-5},
      {"chain_jacobian_dot_fd", 1e-5},
      {"ik_acceleration_fd", 1e-4},
      {"isotropy", 1e-10},
      {"tree_gravity_potential", 1e-5},
      {"tree_inertia_aggregate", 1e-9},
      {"chain_H_decomposition", 1e-9},
      {"chain_inertia_symmetry", 1e-10},
      {"chain_inertia_spd", 0.0},
      {"chain_gravity_potential", 1e-5},
      {"chain_kinetic_energy", 1e-9},
      {"chain_lagrangian", 1e-4},
      {"chain_power_balance", 1e-4},
      {"chain_reaction_identity", 1e-10},
      {"reaction_force_paths", 1e-10},
      {"reaction_coefficient_column", 1e-12},
      {"reaction_force_balance", 1e-9},
      {"cartesian_chain_kinetic_energy", 1e-9},
      {"robot_kinetic_energy", 1e-9},
      {"robot_inertia_spd", 0.0},
      {"static_virtual_work", 1e-5},
      {"lagrangian_idm", 1e-4},
      {"idm_ddm_round_trip", 1e-8},
      {"robot_power_balance", 1e-4},
      {"simulation_energy_drift", 1e-6},
      {"closed_loop_tracking", 1e-5},
  };
  return tol;
}

OracleTolerances load_tolerances(std::string_view config_text,
                                 OracleTolerances base) {
  const detail::ConfigDocument doc = detail::parse_config(config_text);
  auto it = doc.find("verify");
  if (it == doc.end()) return base;
  for (const auto& [key, entry] : it->second) {
    if (!base.count(key)) {
      throw ParseError("line " + std::to_string(entry.line) +
                       ": unknown check '" + key + "' in [verify]");
    }
    const double value = detail::parse_number(entry.value, "verify." + key);
    if (value < 0.0) throw ValidationError("verify." + key, "must be >= 0");
    base[key] = value;
  }
  return base;
}

// ---------------------------------------------------------------------------
// Checks

namespace {

struct CheckContext {
  const RobotModel& model;
  StateSampler& sampler;
  int n;
};

// Metric of one check: the worst error over its samples.
struct CheckResult {
  double metric = 0.0;
  int samples = 0;
};

using CheckFn = std::function<CheckResult(CheckContext&)>;

PerChain<ChainState> sample_chains(CheckContext& ctx) {
  return chain_states(ctx.model, ctx.sampler.state());
}

CheckResult igm_round_trip(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const Vec3 p = ctx.sampler.point();
    const IgmResult pos = igm(ctx.model, p);
    for (int i = 0; i < kNumChains; ++i) {
      r.metric = std::max(
          r.metric, (chain_forward_point(ctx.model, i, pos.chain_q[i]) - p).norm());
    }
    ++r.samples;
  }
  return r;
}

CheckResult parallelogram_closure(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const IgmResult pos = igm(ctx.model, ctx.sampler.point());
    for (int i = 0; i < kNumChains; ++i) {
      // Also off the platform constraint: any q closes the loop.
      const Vec3 q_free = pos.chain_q[i] + ctx.sampler.in_ball(0.2);
      for (const Vec3& q : {pos.chain_q[i], q_free}) {
        const auto poses = chain_frame_poses(ctx.model, i, q);
        r.metric = std::max(
            r.metric, (poses[7].translation() - poses[8].translation()).norm());
      }
    }
    ++r.samples;
  }
  return r;
}

CheckResult closure_identities(CheckContext& ctx) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const Vec3 q = ctx.sampler.in_ball(1.0);
    const Vec3 qd = ctx.sampler.in_ball(1.0);
    const Vec3 qdd = ctx.sampler.in_ball(1.0);
    const TreeState ts = closure_expand(q, qd, qdd);
    Vec6 expect_q, expect_qd, expect_qdd;
    expect_q << q[0], q[1], q[2], -q[2], -q[1] - kHalfPi, q[2];
    expect_qd << qd[0], qd[1], qd[2], -qd[2], -qd[1], qd[2];
    expect_qdd << qdd[0], qdd[1], qdd[2], -qdd[2], -qdd[1], qdd[2];
    const FrameValues fv = closed_chain_values(q);
    r.metric = std::max({r.metric, max_abs(ts.q - expect_q),
                         max_abs(ts.qd - expect_qd), max_abs(ts.qdd - expect_qdd),
                         std::abs(fv[7] + q[2]), std::abs(fv[3] - ts.q[3]),
                         std::abs(fv[4] - ts.q[4]), std::abs(fv[6] - ts.q[5])});
    ++r.samples;
  }
  return r;
}

CheckResult chain_jacobian_fd(CheckContext& ctx) {
  constexpr double h = 1e-6;
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const IgmResult pos = igm(ctx.model, ctx.sampler.point());
    for (int i = 0; i < kNumChains; ++i) {
      const Vec3& q = pos.chain_q[i];
      Mat3 fd;
      for (int k = 0; k < 3; ++k) {
        const Vec3 e = h * Vec3::Unit(k);
        fd.col(k) = (chain_forward_point(ctx.model, i, q + e) -
                     chain_forward_point(ctx.model, i, q - e)) /
                    (2.0 * h);
      }
      r.metric = std::max(r.metric, rel_err(chain_jacobian(ctx.model, i, q), fd));
    }
    ++r.samples;
  }
  return r;
}

CheckResult chain_jacobian_inverse_identity(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const IgmResult pos = igm(ctx.model, ctx.sampler.point());
    for (int i = 0; i < kNumChains; ++i) {
      const Vec3& q = pos.chain_q[i];
      const Mat3 prod = chain_jacobian_inverse(ctx.model, i, q) *
                        chain_jacobian(ctx.model, i, q);
      r.metric = std::max(r.metric, max_abs(prod - Mat3::Identity()));
    }
    ++r.samples;
  }
  return r;
}

CheckResult chain_jacobian_inverse_closed_form_check(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const IgmResult pos = igm(ctx.model, ctx.sampler.point());
    for (int i = 0; i < kNumChains; ++i) {
      const Vec3& q = pos.chain_q[i];
      r.metric = std::max(
          r.metric, rel_err(chain_jacobian_inverse_closed_form(ctx.model, i, q),
                            chain_jacobian_inverse(ctx.model, i, q)));
    }
    ++r.samples;
  }
  return r;
}

CheckResult robot_jacobian_rows(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const IgmResult pos = igm(ctx.model, ctx.sampler.point());
    const Mat3 jp_inv = robot_jacobian_inverse(ctx.model, pos.chain_q);
    for (int i = 0; i < kNumChains; ++i) {
      const Mat3 j_inv = chain_jacobian_inverse(ctx.model, i, pos.chain_q[i]);
      r.metric = std::max(r.metric, max_abs(jp_inv.row(i) - j_inv.row(0)));
    }
    ++r.samples;
  }
  return r;
}

CheckResult robot_jacobian_inverse_fd(CheckContext& ctx) {
  constexpr double h = 1e-6;
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const Vec3 p = ctx.sampler.point();
    Mat3 fd;
    for (int k = 0; k < 3; ++k) {
      const Vec3 e = h * Vec3::Unit(k);
      fd.col(k) = (igm(ctx.model, p + e).L - igm(ctx.model, p - e).L) / (2.0 * h);
    }
    const Mat3 jp_inv = robot_jacobian_inverse(ctx.model, igm(ctx.model, p).chain_q);
    r.metric = std::max(r.metric, rel_err(jp_inv, fd));
    ++r.samples;
  }
  return r;
}

CheckResult ik_velocity_fd(CheckContext& ctx) {
  constexpr double h = 1e-7;
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const PlatformState st = ctx.sampler.state();
    const IgmResult plus = igm(ctx.model, st.P + h * st.V);
    const IgmResult minus = igm(ctx.model, st.P - h * st.V);
    const IkVelocityResult vel =
        ik_velocity(ctx.model, igm(ctx.model, st.P).chain_q, st.V);
    r.metric = std::max(r.metric, rel_err(vel.Ldot, (plus.L - minus.L) / (2 * h)));
    for (int i = 0; i < kNumChains; ++i) {
      const Vec3 fd = (plus.chain_q[i] - minus.chain_q[i]) / (2 * h);
      r.metric = std::max(r.metric, rel_err(vel.chain_qd[i], fd));
    }
    ++r.samples;
  }
  return r;
}

CheckResult chain_jacobian_dot_fd(CheckContext& ctx) {
  constexpr double h = 1e-6;
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const auto chains = sample_chains(ctx);
    for (int i = 0; i < kNumChains; ++i) {
      const Vec3& q = chains[i].q;
      const Vec3& qd = chains[i].qd;
      const Mat3 fd = (chain_jacobian(ctx.model, i, q + h * qd) -
                       chain_jacobian(ctx.model, i, q - h * qd)) /
                      (2.0 * h);
      r.metric = std::max(r.metric,
                          rel_err(chain_jacobian_dot(ctx.model, i, q, qd), fd));
    }
    ++r.samples;
  }
  return r;
}

// Random quintic path between two interior points.
QuinticPath sample_path_between(CheckContext& ctx) {
  const Vec3 a = ctx.sampler.point();
  const Vec3 b = ctx.sampler.point();
  return quintic_path(ctx.model, a, b, 1.0);
}

CheckResult ik_acceleration_fd(CheckContext& ctx) {
  constexpr double h = 1e-4;
  constexpr int kTimes = 20;
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const QuinticPath path = sample_path_between(ctx);
    for (int i = 0; i < kNumChains; ++i) {
      double worst = 0.0, scale = 0.0;
      for (int k = 0; k < kTimes; ++k) {
        const double t = 0.05 + 0.9 * k / (kTimes - 1);
        const PlatformState st = path.at(t);
        const Vec3 q = chain_igm(ctx.model, i, st.P);
        const Vec3 qd = chain_jacobian_inverse(ctx.model, i, q) * st.V;
        const Vec3 qdd = ik_acceleration(ctx.model, i, q, qd, st.A);
        const Vec3 fd = (chain_igm(ctx.model, i, path.at(t + h).P) - 2.0 * q +
                         chain_igm(ctx.model, i, path.at(t - h).P)) /
                        (h * h);
        worst = std::max(worst, (qdd - fd).norm());
        scale = std::max(scale, qdd.norm());
      }
      r.metric = std::max(r.metric, worst / scale);
    }
    ++r.samples;
  }
  return r;
}

CheckResult isotropy(CheckContext& ctx) {
  CheckResult r;
  const Vec3 k = ctx.model.axes_intersection();
  const Mat3 jp_inv = robot_jacobian_inverse(ctx.model, igm(ctx.model, k).chain_q);
  for (int row = 0; row < 3; ++row) {
    int units = 0;
    for (int col = 0; col < 3; ++col) {
      const double v = jp_inv(row, col);
      const double to_unit = std::abs(std::abs(v) - 1.0);
      const double to_zero = std::abs(v);
      r.metric = std::max(r.metric, std::min(to_unit, to_zero));
      if (to_unit < to_zero) ++units;
    }
    if (units != 1) r.metric = std::max(r.metric, 1.0);
  }
  // One unit per column as well.
  for (int col = 0; col < 3; ++col) {
    if ((jp_inv.col(col).cwiseAbs().array() > 0.5).count() != 1) {
      r.metric = std::max(r.metric, 1.0);
    }
  }
  r.samples = 1;
  return r;
}

CheckResult tree_gravity_potential(CheckContext& ctx) {
  constexpr double h = 1e-6;
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const auto chains = sample_chains(ctx);
    for (int i = 0; i < kNumChains; ++i) {
      // Off the closure manifold too: every tree joint moves on its own.
      TreeState ts = closure_expand(chains[i].q, Vec3::Zero(), Vec3::Zero());
      for (int k = 0; k < 6; ++k) ts.q[k] += 0.1 * (ctx.sampler.uniform() - 0.5);
      Vec6 grad;
      for (int k = 0; k < 6; ++k) {
        Vec6 e = Vec6::Zero();
        e[k] = h;
        grad[k] = (tree_potential_energy(ctx.model, i, ts.q + e) -
                   tree_potential_energy(ctx.model, i, ts.q - e)) /
                  (2.0 * h);
      }
      const Vec6 ne = tree_newton_euler(ctx.model, i, ts, ctx.model.gravity);
      r.metric = std::max(r.metric, rel_err(ne, grad));
    }
    ++r.samples;
  }
  return r;
}

CheckResult tree_inertia_aggregate(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const auto chains = sample_chains(ctx);
    for (int i = 0; i < kNumChains; ++i) {
      TreeState ts = closure_expand(chains[i].q, Vec3::Zero(), Vec3::Zero());
      Mat6 ne;
      for (int k = 0; k < 6; ++k) {
        ts.qdd = Vec6::Unit(k);
        ne.col(k) = tree_newton_euler(ctx.model, i, ts, Vec3::Zero());
      }
      r.metric = std::max(r.metric,
                          rel_err(ne, tree_mass_matrix(ctx.model, i, ts.q)));
    }
    ++r.samples;
  }
  return r;
}

CheckResult chain_H_decomposition(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const auto chains = sample_chains(ctx);
    for (int i = 0; i < kNumChains; ++i) {
      const ChainState& c = chains[i];
      const Vec3 h_full = chain_torques_H(ctx.model, i, c.q, c.qd, c.qdd);
      const Vec3 split = chain_inertia_A(ctx.model, i, c.q) * c.qdd +
                         chain_bias_h(ctx.model, i, c.q, c.qd);
      r.metric = std::max(r.metric, max_abs(h_full - split));
    }
    ++r.samples;
  }
  return r;
}

// Inertia matrix built directly from unit accelerations, without the
// asymmetry guard of chain_inertia_A, so a corrupted model is measured
// instead of thrown.
Mat3 raw_chain_inertia(const RobotModel& model, int chain, const Vec3& q) {
  Mat3 a;
  for (int j = 0; j < 3; ++j) {
    a.col(j) = chain_torques_H(model, chain, q, Vec3::Zero(), Vec3::Unit(j),
                               Vec3::Zero());
  }
  return a;
}

CheckResult chain_inertia_symmetry(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const IgmResult pos = igm(ctx.model, ctx.sampler.point());
    for (int i = 0; i < kNumChains; ++i) {
      const Mat3 a = raw_chain_inertia(ctx.model, i, pos.chain_q[i]);
      r.metric = std::max(r.metric, (a - a.transpose()).norm() / a.norm());
    }
    ++r.samples;
  }
  return r;
}

double spd_metric(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> eig(0.5 * (m + m.transpose()),
                                          Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  // <= 0 passes: the negated smallest eigenvalue relative to the largest.
  return -lo / eig.eigenvalues().cwiseAbs().maxCoeff();
}

CheckResult chain_inertia_spd(CheckContext& ctx) {
  CheckResult r;
  r.metric = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < ctx.n; ++s) {
    const IgmResult pos = igm(ctx.model, ctx.sampler.point());
    for (int i = 0; i < kNumChains; ++i) {
      r.metric = std::max(r.metric,
                          spd_metric(chain_inertia_A(ctx.model, i, pos.chain_q[i])));
    }
    ++r.samples;
  }
  return r;
}

CheckResult chain_gravity_potential(CheckContext& ctx) {
  constexpr double h = 1e-6;
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const IgmResult pos = igm(ctx.model, ctx.sampler.point());
    for (int i = 0; i < kNumChains; ++i) {
      const Vec3& q = pos.chain_q[i];
      const Vec3 grad = gradient(
          [&](const Vec3& x) { return chain_potential_energy(ctx.model, i, x); },
          q, h);
      r.metric = std::max(
          r.metric, rel_err(chain_bias_h(ctx.model, i, q, Vec3::Zero()), grad));
    }
    ++r.samples;
  }
  return r;
}

CheckResult chain_kinetic_energy_check(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const auto chains = sample_chains(ctx);
    for (int i = 0; i < kNumChains; ++i) {
      const ChainState& c = chains[i];
      const double quad =
          0.5 * c.qd.dot(chain_inertia_A(ctx.model, i, c.q) * c.qd);
      r.metric = std::max(
          r.metric,
          rel_err_scalar(quad, chain_kinetic_energy(ctx.model, i, c.q, c.qd)));
    }
    ++r.samples;
  }
  return r;
}

CheckResult chain_lagrangian(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const auto chains = sample_chains(ctx);
    for (int i = 0; i < kNumChains; ++i) {
      const ChainState& c = chains[i];
      r.metric = std::max(
          r.metric,
          rel_err(chain_torques_H(ctx.model, i, c.q, c.qd, c.qdd),
                  chain_lagrangian_oracle(ctx.model, i, c.q, c.qd, c.qdd)));
    }
    ++r.samples;
  }
  return r;
}

CheckResult chain_power_balance(CheckContext& ctx) {
  constexpr double dt = 1e-5;
  constexpr int kTimes = 25;
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const auto chains = sample_chains(ctx);
    for (int i = 0; i < kNumChains; ++i) {
      // q(t) = q0 + amp * sin(w t + phase), per coordinate.
      const Vec3 q0 = chains[i].q;
      const Vec3 amp = ctx.sampler.in_ball(0.1);
      const Vec3 w(2.0 + ctx.sampler.uniform(), 3.0 + ctx.sampler.uniform(),
                   4.0 + ctx.sampler.uniform());
      const Vec3 phase(ctx.sampler.uniform(), ctx.sampler.uniform(),
                       ctx.sampler.uniform());
      auto q_at = [&](double t) {
        return Vec3(q0.array() + amp.array() * (w.array() * t + phase.array()).sin());
      };
      auto energy = [&](double t) {
        const Vec3 q = q_at(t);
        const Vec3 qd = amp.array() * w.array() * (w.array() * t + phase.array()).cos();
        return chain_kinetic_energy(ctx.model, i, q, qd) +
               chain_potential_energy(ctx.model, i, q);
      };
      double worst = 0.0, scale = 0.0;
      for (int k = 0; k < kTimes; ++k) {
        const double t = 0.04 * k;
        const Vec3 arg = w.array() * t + phase.array();
        const Vec3 q = q_at(t);
        const Vec3 qd = amp.array() * w.array() * arg.array().cos();
        const Vec3 qdd = -amp.array() * w.array().square() * arg.array().sin();
        const double power = qd.dot(chain_torques_H(ctx.model, i, q, qd, qdd));
        const double de_dt = (energy(t + dt) - energy(t - dt)) / (2.0 * dt);
        worst = std::max(worst, std::abs(power - de_dt));
        scale = std::max(scale, std::abs(power));
      }
      r.metric = std::max(r.metric, worst / scale);
    }
    ++r.samples;
  }
  return r;
}

CheckResult chain_reaction_identity(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const PlatformState st = ctx.sampler.state();
    const InverseDynamicsTrace tr = inverse_dynamics_trace(ctx.model, st.P, st.V, st.A);
    for (int i = 0; i < kNumChains; ++i) {
      const ChainState& c = tr.chains[i];
      const Vec3 gamma_i(tr.Gamma[i], 0.0, 0.0);
      const Vec3 lhs = chain_jacobian(ctx.model, i, c.q).transpose() * tr.f[i];
      r.metric = std::max(r.metric, rel_err(lhs, gamma_i - tr.H[i]));
    }
    ++r.samples;
  }
  return r;
}

CheckResult reaction_force_paths(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const PlatformState st = ctx.sampler.state();
    const InverseDynamicsTrace tr = inverse_dynamics_trace(ctx.model, st.P, st.V, st.A);
    for (int i = 0; i < kNumChains; ++i) {
      const ChainState& c = tr.chains[i];
      const Vec3 joint_path =
          chain_reaction_force(ctx.model, i, c.q, c.qd, c.qdd, tr.Gamma[i]);
      const Vec3 cart_path = chain_reaction_force_cartesian(
          ctx.model, i, c.q, c.qd, c.qdd, tr.Gamma[i], tr.jp_inv);
      r.metric = std::max(r.metric, rel_err(cart_path, joint_path));
    }
    ++r.samples;
  }
  return r;
}

CheckResult reaction_coefficient_column(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const IgmResult pos = igm(ctx.model, ctx.sampler.point());
    const Mat3 jp_inv = robot_jacobian_inverse(ctx.model, pos.chain_q);
    for (int i = 0; i < kNumChains; ++i) {
      const Vec3 coefficient =
          chain_jacobian_inverse(ctx.model, i, pos.chain_q[i]).transpose() *
          Vec3::UnitX();
      r.metric = std::max(r.metric,
                          max_abs(coefficient - jp_inv.transpose().col(i)));
    }
    ++r.samples;
  }
  return r;
}

CheckResult reaction_force_balance(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const PlatformState st = ctx.sampler.state();
    const InverseDynamicsTrace tr = inverse_dynamics_trace(ctx.model, st.P, st.V, st.A);
    const Vec3 sum = tr.f[0] + tr.f[1] + tr.f[2];
    r.metric = std::max(r.metric, (sum - platform_force(ctx.model, st.A)).norm());
    ++r.samples;
  }
  return r;
}

CheckResult cartesian_chain_kinetic_energy(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const PlatformState st = ctx.sampler.state();
    const IgmResult pos = igm(ctx.model, st.P);
    for (int i = 0; i < kNumChains; ++i) {
      const Vec3& q = pos.chain_q[i];
      const Vec3 qd = chain_jacobian_inverse(ctx.model, i, q) * st.V;
      const CartesianChainModel cart = cartesian_chain_model(ctx.model, i, q, qd);
      const double quad = 0.5 * st.V.dot(cart.A_x * st.V);
      r.metric = std::max(
          r.metric, rel_err_scalar(quad, chain_kinetic_energy(ctx.model, i, q, qd)));
    }
    ++r.samples;
  }
  return r;
}

CheckResult robot_kinetic_energy(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const PlatformState st = ctx.sampler.state();
    const RobotDynModel dyn = assemble_robot_dyn(ctx.model, st.P, st.V);
    const double quad = 0.5 * st.V.dot(dyn.A_robot * st.V);
    r.metric = std::max(
        r.metric, rel_err_scalar(quad, kinetic_energy(ctx.model, st.P, st.V)));
    ++r.samples;
  }
  return r;
}

CheckResult robot_inertia_spd(CheckContext& ctx) {
  CheckResult r;
  r.metric = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < ctx.n; ++s) {
    const PlatformState st = ctx.sampler.state();
    r.metric = std::max(
        r.metric, spd_metric(assemble_robot_dyn(ctx.model, st.P, st.V).A_robot));
    ++r.samples;
  }
  return r;
}

CheckResult static_virtual_work(CheckContext& ctx) {
  constexpr double h = 1e-6;
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const Vec3 p = ctx.sampler.point();
    const Vec3 grad = gradient(
        [&](const Vec3& x) { return potential_energy(ctx.model, x); }, p, h);
    const Mat3 jp_inv = robot_jacobian_inverse(ctx.model, igm(ctx.model, p).chain_q);
    const Vec3 oracle = jp_inv.transpose().fullPivLu().solve(grad);
    r.metric = std::max(
        r.metric,
        rel_err(inverse_dynamics(ctx.model, p, Vec3::Zero(), Vec3::Zero()), oracle));
    ++r.samples;
  }
  return r;
}

CheckResult lagrangian_idm(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const PlatformState st = ctx.sampler.state();
    r.metric = std::max(
        r.metric, rel_err(inverse_dynamics(ctx.model, st.P, st.V, st.A),
                          lagrangian_idm_oracle(ctx.model, st.P, st.V, st.A)));
    ++r.samples;
  }
  return r;
}

CheckResult idm_ddm_round_trip(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const PlatformState st = ctx.sampler.state();
    const Vec3 gamma = inverse_dynamics(ctx.model, st.P, st.V, st.A);
    const Vec3 back = direct_dynamics(ctx.model, st.P, st.V, gamma);
    r.metric = std::max(r.metric, (back - st.A).norm() / (1.0 + st.A.norm()));
    ++r.samples;
  }
  return r;
}

CheckResult robot_power_balance(CheckContext& ctx) {
  constexpr double dt = 1e-5;
  constexpr int kTimes = 25;
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const QuinticPath path = sample_path_between(ctx);
    auto energy = [&](double t) {
      const PlatformState st = path.at(t);
      return kinetic_energy(ctx.model, st.P, st.V) +
             potential_energy(ctx.model, st.P);
    };
    double worst = 0.0, scale = 0.0;
    for (int k = 0; k < kTimes; ++k) {
      const double t = 0.02 + 0.96 * k / (kTimes - 1);
      const PlatformState st = path.at(t);
      const Vec3 gamma = inverse_dynamics(ctx.model, st.P, st.V, st.A);
      const Vec3 ldot = ik_velocity(ctx.model, igm(ctx.model, st.P).chain_q, st.V).Ldot;
      const double power = gamma.dot(ldot);
      const double de_dt = (energy(t + dt) - energy(t - dt)) / (2.0 * dt);
      worst = std::max(worst, std::abs(power - de_dt));
      scale = std::max(scale, std::abs(power));
    }
    r.metric = std::max(r.metric, worst / scale);
    ++r.samples;
  }
  return r;
}

}  // namespace

// Conservative run: constant actuator forces holding the initial pose plus a
// small initial velocity. Energy includes the work potential -Gamma.L.
double simulation_energy_drift(const RobotModel& model, const Vec3& P0,
                               const Vec3& V0, const SimConfig& cfg) {
  const TorqueFn hold = make_torque_source(
      model, SimConfig{cfg.dt, cfg.t_end, cfg.integrator, TorqueSource::kHold}, P0);
  const SimResult sim = simulate(model, P0, V0, hold, cfg);
  if (!sim.completed) {
    throw OutOfWorkspace(-1, 0, "conservative run left the workspace: " +
                                    sim.stop_reason);
  }
  const Vec3 gamma = hold(0.0);
  double e0 = 0.0, worst = 0.0, t_max = 0.0;
  for (std::size_t k = 0; k < sim.samples.size(); ++k) {
    const TrajectorySample& s = sim.samples[k];
    const double t = kinetic_energy(model, s.P, s.V);
    const double e = t + potential_energy(model, s.P) - gamma.dot(s.L);
    if (k == 0) e0 = e;
    worst = std::max(worst, std::abs(e - e0));
    t_max = std::max(t_max, t);
  }
  return worst / t_max;
}

double closed_loop_tracking_error(const RobotModel& model,
                                  const QuinticPath& path, double dt) {
  const TorqueFn feedforward = [&](double t) {
    const PlatformState st = path.at(t);
    return inverse_dynamics(model, st.P, st.V, st.A);
  };
  SimConfig cfg;
  cfg.dt = dt;
  cfg.t_end = path.duration();
  const PlatformState start = path.at(0.0);
  const SimResult sim = simulate(model, start.P, start.V, feedforward, cfg);
  if (!sim.completed) {
    throw OutOfWorkspace(-1, 0, "tracking run left the workspace: " +
                                    sim.stop_reason);
  }
  double worst = 0.0;
  for (const TrajectorySample& s : sim.samples) {
    worst = std::max(worst, (s.P - path.at(s.t).P).norm());
  }
  return worst;
}

namespace {

CheckResult simulation_energy_drift_check(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const Vec3 p0 = ctx.sampler.point();
    const Vec3 v0 = ctx.sampler.in_ball(0.05);
    r.metric = std::max(r.metric, simulation_energy_drift(ctx.model, p0, v0, {}));
    ++r.samples;
  }
  return r;
}

CheckResult closed_loop_tracking(CheckContext& ctx) {
  CheckResult r;
  for (int s = 0; s < ctx.n; ++s) {
    const QuinticPath path = sample_path_between(ctx);
    r.metric = std::max(r.metric, closed_loop_tracking_error(ctx.model, path, 1e-4));
    ++r.samples;
  }
  return r;
}

struct CheckSpec {
  const char* name;
  CheckFn fn;
  // Path- and simulation-based checks run on fewer samples in a full sweep.
  int divisor;
};

const std::vector<CheckSpec>& registry() {
  static const std::vector<CheckSpec> specs = {
      {"igm_round_trip", igm_round_trip, 1},
      {"parallelogram_closure", parallelogram_closure, 1},
      {"closure_identities", closure_identities, 1},
      {"chain_jacobian_fd", chain_jacobian_fd, 1},
      {"chain_jacobian_inverse_identity", chain_jacobian_inverse_identity, 1},
      {"chain_jacobian_inverse_closed_form", chain_jacobian_inverse_closed_form_check, 1},
      {"robot_jacobian_rows", robot_jacobian_rows, 1},
      {"robot_jacobian_inverse_fd", robot_jacobian_inverse_fd, 1},
      {"ik_velocity_fd", ik_velocity_fd, 1},
      {"chain_jacobian_dot_fd", chain_jacobian_dot_fd, 1},
      {"ik_acceleration_fd", ik_acceleration_fd, 10},
      {"isotropy", isotropy, 0},
      {"tree_gravity_potential", tree_gravity_potential, 1},
      {"tree_inertia_aggregate", tree_inertia_aggregate, 1},
      {"chain_H_decomposition", chain_H_decomposition, 1},
      {"chain_inertia_symmetry", chain_inertia_symmetry, 1},
      {"chain_inertia_spd", chain_inertia_spd, 1},
      {"chain_gravity_potential", chain_gravity_potential, 1},
      {"chain_kinetic_energy", chain_kinetic_energy_check, 1},
      {"chain_lagrangian", chain_lagrangian, 1},
      {"chain_power_balance", chain_power_balance, 10},
      {"chain_reaction_identity", chain_reaction_identity, 1},
      {"reaction_force_paths", reaction_force_paths, 1},
      {"reaction_coefficient_column", reaction_coefficient_column, 1},
      {"reaction_force_balance", reaction_force_balance, 1},
      {"cartesian_chain_kinetic_energy", cartesian_chain_kinetic_energy, 1},
      {"robot_kinetic_energy", robot_kinetic_energy, 1},
      {"robot_inertia_spd", robot_inertia_spd, 1},
      {"static_virtual_work", static_virtual_work, 1},
      {"lagrangian_idm", lagrangian_idm, 1},
      {"idm_ddm_round_trip", idm_ddm_round_trip, 1},
      {"robot_power_balance", robot_power_balance, 10},
      {"simulation_energy_drift", simulation_energy_drift_check, 0},
      {"closed_loop_tracking", closed_loop_tracking, 0},
  };
  return specs;
}

// Each check gets its own sampler stream so reports do not depend on which
// other checks ran.
std::uint64_t check_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return seed ^ h;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& spec : registry()) out.emplace_back(spec.name);
  return out;
}

OracleReport run_check(const std::string& name, const RobotModel& model,
                       std::uint64_t seed, int n_samples,
                       const OracleTolerances& tolerances) {
  const auto& specs = registry();
  auto it = std::find_if(specs.begin(), specs.end(),
                         [&](const CheckSpec& s) { return name == s.name; });
  if (it == specs.end()) throw UsageError("unknown check '" + name + "'");
  if (n_samples < 1) throw UsageError("n_samples must be >= 1");

  OracleReport report;
  report.check_name = name;
  auto tol = tolerances.find(name);
  report.tolerance = tol != tolerances.end() ? tol->second
                                             : default_tolerances().at(name);
  StateSampler sampler(model, check_seed(seed, name));
  CheckContext ctx{model, sampler, n_samples};
  try {
    const CheckResult result = it->fn(ctx);
    report.max_rel_err = result.metric;
    report.samples = result.samples;
    report.pass = !std::isnan(result.metric) && result.metric <= report.tolerance;
  } catch (const std::exception& e) {
    report.max_rel_err = std::numeric_limits<double>::infinity();
    report.pass = false;
    report.note = e.what();
  }
  return report;
}

std::vector<OracleReport> run_verification(const RobotModel& model,
                                           std::uint64_t seed, int n_samples,
                                           const OracleTolerances& tolerances) {
  if (n_samples < 1) throw UsageError("n_samples must be >= 1");
  std::vector<OracleReport> out;
  for (const auto& spec : registry()) {
    const int n = spec.divisor == 0 ? 1 : std::max(1, n_samples / spec.divisor);
    out.push_back(run_check(spec.name, model, seed, n, tolerances));
  }
  std::sort(out.begin(), out.end(), [](const OracleReport& a, const OracleReport& b) {
    return a.check_name < b.check_name;
  });
  return out;
}

std::string reports_to_json(const std::vector<OracleReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["check_name"] = r.check_name;
    // JSON has no infinity; a check that could not run reports null.
    if (std::isfinite(r.max_rel_err)) {
      j["max_rel_err"] = r.max_rel_err;
    } else {
      j["max_rel_err"] = nullptr;
    }
    j["samples"] = r.samples;
    j["pass"] = r.pass;
    j["tolerance"] = r.tolerance;
    if (!r.note.empty()) j["note"] = r.note;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string reports_to_table(const std::vector<OracleReport>& reports) {
  std::size_t width = 10;
  for (const auto& r : reports) width = std::max(width, r.check_name.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "check"
      << "  result  " << std::setw(12) << "max_err" << std::setw(12)
      << "tolerance"
      << "samples\n";
  for (const auto& r : reports) {
    out << std::left << std::setw(static_cast<int>(width)) << r.check_name << "  "
        << (r.pass ? "PASS  " : "FAIL  ") << "  " << std::setw(12)
        << std::setprecision(3) << std::scientific << r.max_rel_err
        << std::setw(12) << r.tolerance << std::defaultfloat << r.samples;
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace orthodyn
