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

// Numerical oracles that check the analytic models from independent routes:
// finite differences of forward geometry, energies computed from per-body
// twists, and a Cartesian Euler-Lagrange formulation. None of the oracles
// call the function they validate.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "orthodyn/harness.hpp"

namespace orthodyn {

struct OracleReport {
  std::string check_name;
  double max_rel_err = 0.0;
  int samples = 0;
  bool pass = false;
  double tolerance = 0.0;
  std::string note;  // set when a check could not run
};

/// Per-check tolerances, keyed by check name.
using OracleTolerances = std::map<std::string, double>;

const OracleTolerances& default_tolerances();

/// Reads the optional [verify] section of a config; keys are check names.
OracleTolerances load_tolerances(std::string_view config_text,
                                 OracleTolerances base = default_tolerances());

// --- Energies ---------------------------------------------------------------

/// Gravity potential of one chain's bodies for arbitrary tree coordinates.
double tree_potential_energy(const RobotModel& model, int chain,
                             const Vec6& tree_q);

double chain_potential_energy(const RobotModel& model, int chain, const Vec3& q);

/// Kinetic energy of one chain from per-body twists.
double chain_kinetic_energy(const RobotModel& model, int chain, const Vec3& q,
                            const Vec3& qd);

/// Tree mass matrix aggregated from body Jacobians.
Mat6 tree_mass_matrix(const RobotModel& model, int chain, const Vec6& tree_q);

/// Potential energy of all bodies and the platform; zero at zero gravity.
double potential_energy(const RobotModel& model, const Vec3& P);

/// Kinetic energy of the three chains and the platform.
double kinetic_energy(const RobotModel& model, const Vec3& P, const Vec3& V);

// --- Euler-Lagrange oracles -------------------------------------------------

struct FiniteDifferenceSteps {
  double position = 1e-6;
  double time = 1e-6;
};

/// Actuator forces from Cartesian Euler-Lagrange equations on T and U.
Vec3 lagrangian_idm_oracle(const RobotModel& model, const Vec3& P,
                           const Vec3& V, const Vec3& A,
                           FiniteDifferenceSteps steps = {});

/// Joint forces of one isolated chain from Euler-Lagrange equations.
Vec3 chain_lagrangian_oracle(const RobotModel& model, int chain, const Vec3& q,
                             const Vec3& qd, const Vec3& qdd,
                             FiniteDifferenceSteps steps = {});

// --- Sampling ---------------------------------------------------------------

/// Deterministic sampler of interior platform states.
class StateSampler {
 public:
  StateSampler(const RobotModel& model, std::uint64_t seed);

  double uniform();  // [0, 1)
  Vec3 in_ball(double radius);

  /// Interior point within 0.3 * D4 of the isotropic point.
  Vec3 point();
  /// Platform state with |V| <= 1 m/s and |A| <= 5 m/s^2.
  PlatformState state();

  const Vec3& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  std::uint64_t next();

  const RobotModel* model_;
  std::uint64_t state_;
  Vec3 center_;
  double radius_;
};

// --- Simulation oracles -----------------------------------------------------

/// Constant forces holding P0, started with velocity V0. Returns the largest
/// drift of T + U - Gamma.L over the run relative to the peak kinetic energy.
double simulation_energy_drift(const RobotModel& model, const Vec3& P0,
                               const Vec3& V0, const SimConfig& cfg = {});

/// Simulates the path under its own inverse-dynamics forces and returns the
/// worst position error in metres.
double closed_loop_tracking_error(const RobotModel& model,
                                  const QuinticPath& path, double dt);

// --- Checks -----------------------------------------------------------------

std::vector<std::string> check_names();

/// Runs one named check on n samples (paths for the path-based checks).
OracleReport run_check(const std::string& name, const RobotModel& model,
                       std::uint64_t seed, int n_samples,
                       const OracleTolerances& tolerances = default_tolerances());

/// Runs every check; failures are reported, not thrown.
std::vector<OracleReport> run_verification(
    const RobotModel& model, std::uint64_t seed, int n_samples,
    const OracleTolerances& tolerances = default_tolerances());

std::string reports_to_json(const std::vector<OracleReport>& reports);
std::string reports_to_table(const std::vector<OracleReport>& reports);

}  // namespace orthodyn
