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

// Acceptance suite: one PASS/FAIL line per criterion on the shipped model,
// seed 42. With an argument N only criterion N runs.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "orthodyn/verify.hpp"

namespace {

using orthodyn::OracleReport;
using orthodyn::RobotModel;

constexpr std::uint64_t kSeed = 42;

struct Item {
  const char* check;
  int samples;
};

struct Criterion {
  int id;
  const char* title;
  std::vector<Item> items;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "kinematic consistency",
       {{"igm_round_trip", 1000}, {"parallelogram_closure", 1000}}},
      {2, "Jacobian correctness",
       {{"chain_jacobian_fd", 1000},
        {"chain_jacobian_inverse_identity", 1000},
        {"chain_jacobian_inverse_closed_form", 1000},
        {"robot_jacobian_rows", 1000},
        {"robot_jacobian_inverse_fd", 1000}}},
      {3, "second-order inverse kinematics",
       {{"ik_acceleration_fd", 10}, {"chain_jacobian_dot_fd", 1000}}},
      {4, "chain dynamics",
       {{"chain_H_decomposition", 200},
        {"chain_inertia_symmetry", 200},
        {"chain_gravity_potential", 200},
        {"tree_gravity_potential", 200},
        {"chain_lagrangian", 200},
        {"lagrangian_idm", 200}}},
      {5, "reaction and aggregation identities",
       {{"reaction_force_balance", 1000},
        {"reaction_coefficient_column", 1000},
        {"reaction_force_paths", 1000},
        {"chain_reaction_identity", 1000}}},
      {6, "inverse/direct round trip", {{"idm_ddm_round_trip", 1000}}},
      {7, "energy",
       {{"robot_kinetic_energy", 1000},
        {"cartesian_chain_kinetic_energy", 1000},
        {"simulation_energy_drift", 1},
        {"robot_power_balance", 10}}},
      {8, "isotropy", {{"isotropy", 1}}},
      {9, "closed-loop tracking", {{"closed_loop_tracking", 3}}},
  };
  return list;
}

bool run(const Criterion& c, const RobotModel& model) {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (const Item& item : c.items) {
    const OracleReport r = orthodyn::run_check(item.check, model, kSeed, item.samples);
    pass = pass && r.pass;
    char line[256];
    std::snprintf(line, sizeof line, "    %-36s %s  err=%.3e  tol=%.1e  n=%d%s%s\n",
                  r.check_name.c_str(), r.pass ? "ok  " : "FAIL", r.max_rel_err,
                  r.tolerance, r.samples, r.note.empty() ? "" : "  ",
                  r.note.c_str());
    detail += line;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", c.id, c.title,
              secs);
  std::fputs(detail.c_str(), stdout);
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 2 || (argc == 2 && (only = std::atoi(argv[1])) < 1) || only > 9) {
    std::cerr << "usage: acceptance [criterion 1..9]\n";
    return 2;
  }
  RobotModel model;
  try {
    model = orthodyn::load_model_file(ORTHODYN_SOURCE_DIR "/config/default_model.ini");
  } catch (const std::exception& e) {
    std::cerr << "ERROR: " << e.what() << "\n";
    return 1;
  }
  bool all = true;
  for (const Criterion& c : criteria()) {
    if (only == 0 || only == c.id) all = run(c, model) && all;
  }
  return all ? 0 : 1;
}
