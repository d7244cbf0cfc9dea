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

#include <string>
#include <string_view>

#include "orthodyn/types.hpp"

namespace orthodyn {

/// One row of a Khalil-Kleinfinger (modified DH) parameter table.
///
/// The frame j is placed in its antecedent `parent` by
/// Rot(z,gamma) Trans(z,b) Rot(x,alpha) Trans(x,d) Rot(z,theta) Trans(z,r),
/// where the joint variable adds to theta (revolute) or r (prismatic).
struct MdhJointParams {
  int parent = 0;
  bool motorized = false;
  bool prismatic = false;
  double gamma = 0.0;
  double b = 0.0;
  double alpha = 0.0;
  double d = 0.0;
  double theta = 0.0;
  double r = 0.0;
};

/// Homogeneous transform of a frame in its antecedent for joint value `q`.
Transform frame_transform(const MdhJointParams& p, double q);

/// Inertial parameters of one link, expressed in the link frame.
struct LinkInertia {
  double mass = 0.0;
  Vec3 first_moment = Vec3::Zero();  // MS_j, kg·m
  Mat3 inertia = Mat3::Zero();       // J_j about the link-frame origin
};

// Frame numbering inside a chain follows the tree description: frame 1 is
// the actuated slider, frames 2..7 are tree bodies, and frames 8/9 are the
// two sides of the cut parallelogram joint. Frame 6 is rigidly attached to 5.
inline constexpr int kFramesPerChain = 9;
inline constexpr int kBodiesPerChain = 7;

struct ChainGeometry {
  MdhJointParams base_frame;  // frame 1 in R0 (prismatic, motorized)
  Vec3 anchor = Vec3::Zero();  // A_i, origin of frame 1 at q_1i = 0

  double D4 = 0.0;  // long bar of the parallelogram
  double D6 = 0.0;  // terminal offset to the platform attachment
  double r2 = 0.0;
  // Redundant with (D4, r2); kept explicit so that configs state the full
  // table and the loader can check the identities.
  double b7 = 0.0;
  double b9 = 0.0;
  double r5 = 0.0;
  double D8 = 0.0;

  // Inertia of bodies 1..7 (index 0 is body 1).
  std::array<LinkInertia, kBodiesPerChain> bodies{};

  /// Table rows for frames 1..9; entry 0 is the base frame.
  std::array<MdhJointParams, kFramesPerChain> frames() const;
};

struct RobotModel {
  PerChain<ChainGeometry> chains{};
  double platform_mass = 0.0;
  Vec3 gravity{0.0, 0.0, -9.81};

  /// Point where the three actuator axes meet.
  Vec3 axes_intersection() const;
};

/// Parameters of the shipped desk-scale model. The values are arbitrary and
/// not taken from any physical machine.
struct DefaultModelParams {
  double a = 0.2;
  double D4 = 0.5;
  double D6 = 0.1;
  double r2 = 0.05;
  double link_mass = 1.0;
  double link_inertia_com = 1e-3;  // diagonal, about each centre of mass
  double platform_mass = 1.0;
  Vec3 gravity{0.0, 0.0, -9.81};
};

RobotModel make_default_model(const DefaultModelParams& params = {});

/// Parses and validates a model config (see config/default_model.ini).
RobotModel load_model(std::string_view config_text);
RobotModel load_model_file(const std::string& path);

/// Config text for a model; `load_model(serialize_model(m))` is bit-exact.
std::string serialize_model(const RobotModel& model);

/// Checks every model invariant; throws ValidationError naming the field.
void validate_model(const RobotModel& model);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace orthodyn
