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

#include <algorithm>
#include <cmath>

#include "orthodyn/harness.hpp"

namespace orthodyn {
namespace {

// Number of fixed steps covering [0, t_end]; the last step may be shorter.
long step_count(double dt, double t_end) {
  const double n = t_end / dt;
  const double rounded = std::round(n);
  if (std::abs(n - rounded) <= 1e-9 * std::max(1.0, n)) {
    return static_cast<long>(rounded);
  }
  return static_cast<long>(std::ceil(n));
}

TrajectorySample make_sample(const RobotModel& model, double t, const Vec3& P,
                             const Vec3& V, const Vec3& A, const Vec3& gamma) {
  TrajectorySample s;
  s.t = t;
  s.P = P;
  s.V = V;
  s.A = A;
  const IgmResult pos = igm(model, P);
  s.L = pos.L;
  s.Ldot = ik_velocity(model, pos.chain_q, V).Ldot;
  s.Gamma = gamma;
  return s;
}

}  // namespace

void validate_sim_config(const SimConfig& cfg) {
  if (!std::isfinite(cfg.dt) || !std::isfinite(cfg.t_end) || !(cfg.dt > 0.0) ||
      !(cfg.dt <= cfg.t_end)) {
    throw UsageError("simulation needs 0 < dt <= t_end");
  }
}

SimResult simulate(const RobotModel& model, const Vec3& P0, const Vec3& V0,
                   const TorqueFn& torque, const SimConfig& cfg) {
  validate_sim_config(cfg);
  if (!all_finite(P0) || !all_finite(V0)) {
    throw ValidationError("P0", "initial state must be finite");
  }

  SimResult out;
  Vec3 P = P0;
  Vec3 V = V0;
  double t = 0.0;
  {
    const Vec3 gamma = torque(t);
    const Vec3 A = direct_dynamics(model, P, V, gamma);  // throws on a bad P0
    out.samples.push_back(make_sample(model, t, P, V, A, gamma));
  }

  const long steps = step_count(cfg.dt, cfg.t_end);
  for (long k = 1; k <= steps; ++k) {
    const double t_next = std::min(cfg.t_end, static_cast<double>(k) * cfg.dt);
    const double h = t_next - t;
    try {
      auto accel = [&](double tau, const Vec3& p, const Vec3& v) {
        return direct_dynamics(model, p, v, torque(tau));
      };
      if (cfg.integrator == Integrator::kEuler) {
        const Vec3 a = accel(t, P, V);
        P += h * V;
        V += h * a;
      } else {
        const Vec3 k1p = V;
        const Vec3 k1v = accel(t, P, V);
        const Vec3 k2p = V + 0.5 * h * k1v;
        const Vec3 k2v = accel(t + 0.5 * h, P + 0.5 * h * k1p, k2p);
        const Vec3 k3p = V + 0.5 * h * k2v;
        const Vec3 k3v = accel(t + 0.5 * h, P + 0.5 * h * k2p, k3p);
        const Vec3 k4p = V + h * k3v;
        const Vec3 k4v = accel(t + h, P + h * k3p, k4p);
        P += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        V += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      }
      t = t_next;
      const Vec3 gamma = torque(t);
      const Vec3 A = direct_dynamics(model, P, V, gamma);
      out.samples.push_back(make_sample(model, t, P, V, A, gamma));
    } catch (const OutOfWorkspace& e) {
      out.completed = false;
      out.stop_reason = e.what();
      break;
    } catch (const ChainSingular& e) {
      out.completed = false;
      out.stop_reason = e.what();
      break;
    }
    if (!all_finite(P) || !all_finite(V)) {
      throw NumericalError("non-finite state at t = " + format_double(t));
    }
  }
  return out;
}

TorqueFn make_torque_source(const RobotModel& model, const SimConfig& cfg,
                            const Vec3& P0,
                            const std::vector<TrajectorySample>& recorded) {
  switch (cfg.torque_source) {
    case TorqueSource::kZero:
      return [](double) { return Vec3::Zero().eval(); };
    case TorqueSource::kHold: {
      const Vec3 gamma = inverse_dynamics(model, P0, Vec3::Zero(), Vec3::Zero());
      return [gamma](double) { return gamma; };
    }
    case TorqueSource::kFile:
      break;
  }
  if (recorded.empty()) throw UsageError("torque file has no samples");
  for (std::size_t k = 1; k < recorded.size(); ++k) {
    if (recorded[k].t < recorded[k - 1].t) {
      throw ValidationError("t", "torque file times must be non-decreasing");
    }
  }
  return [samples = recorded](double t) {
    if (t <= samples.front().t) return samples.front().Gamma;
    if (t >= samples.back().t) return samples.back().Gamma;
    auto hi = std::upper_bound(
        samples.begin(), samples.end(), t,
        [](double value, const TrajectorySample& s) { return value < s.t; });
    auto lo = hi - 1;
    const double span = hi->t - lo->t;
    if (span <= 0.0) return hi->Gamma;
    const double w = (t - lo->t) / span;
    return Vec3((1.0 - w) * lo->Gamma + w * hi->Gamma);
  };
}

QuinticPath::QuinticPath(const Vec3& start, const Vec3& end, double duration)
    : start_(start), delta_(end - start), duration_(duration) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw UsageError("path duration must be positive");
  }
}

PlatformState QuinticPath::at(double t) const {
  const double tau = std::clamp(t / duration_, 0.0, 1.0);
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  const double s = t3 * (10.0 - 15.0 * tau + 6.0 * t2);
  const double ds = 30.0 * t2 * (1.0 - 2.0 * tau + t2) / duration_;
  const double dds =
      60.0 * tau * (1.0 - 3.0 * tau + 2.0 * t2) / (duration_ * duration_);
  PlatformState out;
  out.P = start_ + s * delta_;
  out.V = ds * delta_;
  out.A = dds * delta_;
  return out;
}

QuinticPath quintic_path(const RobotModel& model, const Vec3& start,
                         const Vec3& end, double duration) {
  for (const Vec3& p : {start, end}) {
    robot_jacobian_inverse(model, igm(model, p).chain_q);
  }
  return QuinticPath(start, end, duration);
}

std::vector<TrajectorySample> sample_path(const RobotModel& model,
                                          const QuinticPath& path, double dt,
                                          bool with_forces) {
  validate_sim_config(SimConfig{dt, path.duration()});
  const long steps = step_count(dt, path.duration());
  std::vector<TrajectorySample> out;
  out.reserve(steps + 1);
  for (long k = 0; k <= steps; ++k) {
    const double t = std::min(path.duration(), static_cast<double>(k) * dt);
    const PlatformState st = path.at(t);
    TrajectorySample s;
    s.t = t;
    s.P = st.P;
    s.V = st.V;
    s.A = st.A;
    out.push_back(s);
  }
  if (with_forces) fill_inverse_dynamics(model, out);
  return out;
}

void fill_inverse_dynamics(const RobotModel& model,
                           std::vector<TrajectorySample>& samples) {
  for (TrajectorySample& s : samples) {
    const IgmResult pos = igm(model, s.P);
    s.L = pos.L;
    s.Ldot = ik_velocity(model, pos.chain_q, s.V).Ldot;
    s.Gamma = inverse_dynamics(model, s.P, s.V, s.A);
  }
}

}  // namespace orthodyn
