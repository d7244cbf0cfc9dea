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

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "orthodyn/robot_dynamics.hpp"

namespace orthodyn {

struct TrajectorySample {
  double t = 0.0;
  Vec3 P = Vec3::Zero();
  Vec3 V = Vec3::Zero();
  Vec3 A = Vec3::Zero();
  Vec3 L = Vec3::Zero();
  Vec3 Ldot = Vec3::Zero();
  Vec3 Gamma = Vec3::Zero();
};

enum class Integrator { kRk4, kEuler };
enum class TorqueSource { kFile, kHold, kZero };

struct SimConfig {
  double dt = 1e-4;
  double t_end = 1.0;
  Integrator integrator = Integrator::kRk4;
  TorqueSource torque_source = TorqueSource::kZero;
};

/// Throws UsageError unless 0 < dt <= t_end.
void validate_sim_config(const SimConfig& cfg);

using TorqueFn = std::function<Vec3(double t)>;

struct SimResult {
  std::vector<TrajectorySample> samples;
  bool completed = true;
  std::string stop_reason;  // set when the run left the workspace
};

/// Fixed-step integration of (P, V) with accelerations from direct_dynamics.
/// The initial state must be inside the workspace; a later exit ends the run
/// early with `completed == false`.
SimResult simulate(const RobotModel& model, const Vec3& P0, const Vec3& V0,
                   const TorqueFn& torque, const SimConfig& cfg);

/// Actuator forces for the configured torque source. `hold` keeps the static
/// forces of P0; `file` interpolates the Gamma columns of `recorded` linearly
/// in time and holds the end values outside the recorded span.
TorqueFn make_torque_source(const RobotModel& model, const SimConfig& cfg,
                            const Vec3& P0,
                            const std::vector<TrajectorySample>& recorded = {});

/// Point-to-point quintic blend with zero boundary velocity and acceleration.
class QuinticPath {
 public:
  QuinticPath(const Vec3& start, const Vec3& end, double duration);

  PlatformState at(double t) const;
  double duration() const { return duration_; }

 private:
  Vec3 start_;
  Vec3 delta_;
  double duration_;
};

/// Validated constructor: both endpoints must be inside the workspace.
QuinticPath quintic_path(const RobotModel& model, const Vec3& start,
                         const Vec3& end, double duration);

/// Samples of a path every dt (inclusive of both ends) with L, Ldot and the
/// inverse-dynamics forces filled in.
std::vector<TrajectorySample> sample_path(const RobotModel& model,
                                          const QuinticPath& path, double dt,
                                          bool with_forces = true);

/// Inverse dynamics over every sample; fills L, Ldot and Gamma.
void fill_inverse_dynamics(const RobotModel& model,
                           std::vector<TrajectorySample>& samples);

// --- Trajectory files -------------------------------------------------------

inline constexpr std::string_view kTrajectoryHeader =
    "t,Px,Py,Pz,Vx,Vy,Vz,Ax,Ay,Az,L1,L2,L3,G1,G2,G3";

std::string trajectory_to_csv(const std::vector<TrajectorySample>& samples);
std::string trajectory_to_json(const std::vector<TrajectorySample>& samples);

/// Reads CSV with a header row. Columns are matched by name; t and the
/// platform position are required, any other missing column reads as zero.
std::vector<TrajectorySample> trajectory_from_csv(std::string_view text);
std::vector<TrajectorySample> trajectory_from_json(std::string_view text);

/// Picks the reader from the first non-blank character ('[' means JSON).
std::vector<TrajectorySample> read_trajectory(std::string_view text);

// --- Command line -----------------------------------------------------------

/// Runs one CLI invocation. Exit codes: 0 success, 1 domain error, 2 usage.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

}  // namespace orthodyn
