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

#include "orthodyn/model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "config_text.hpp"

namespace orthodyn {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kValidation: return "ValidationError";
    case ErrorKind::kOutOfWorkspace: return "OutOfWorkspace";
    case ErrorKind::kChainSingular: return "ChainSingular";
    case ErrorKind::kNumerical: return "NumericalError";
    case ErrorKind::kUsage: return "UsageError";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

Transform frame_transform(const MdhJointParams& p, double q) {
  const double theta = p.theta + (p.prismatic ? 0.0 : q);
  const double r = p.r + (p.prismatic ? q : 0.0);
  Transform t = Transform::Identity();
  t.rotate(Eigen::AngleAxisd(p.gamma, Vec3::UnitZ()));
  t.translate(Vec3(0.0, 0.0, p.b));
  t.rotate(Eigen::AngleAxisd(p.alpha, Vec3::UnitX()));
  t.translate(Vec3(p.d, 0.0, 0.0));
  t.rotate(Eigen::AngleAxisd(theta, Vec3::UnitZ()));
  t.translate(Vec3(0.0, 0.0, r));
  return t;
}

std::array<MdhJointParams, kFramesPerChain> ChainGeometry::frames() const {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  std::array<MdhJointParams, kFramesPerChain> f{};
  f[0] = base_frame;
  f[0].parent = 0;
  f[0].motorized = true;
  f[0].prismatic = true;
  //         parent  mu     sigma  gamma b    alpha     d    theta r
  f[1] = {1, false, false, 0.0, 0.0, -kHalfPi, 0.0, 0.0, r2};
  f[2] = {2, false, false, 0.0, 0.0, -kHalfPi, 0.0, 0.0, 0.0};
  f[3] = {3, false, false, 0.0, 0.0, 0.0, D4, 0.0, 0.0};
  f[4] = {4, false, false, 0.0, 0.0, kHalfPi, 0.0, 0.0, r5};
  f[5] = {5, false, false, 0.0, 0.0, 0.0, D6, 0.0, 0.0};
  f[6] = {2, false, false, 0.0, b7, -kHalfPi, 0.0, 0.0, 0.0};
  f[7] = {7, false, false, 0.0, 0.0, 0.0, D8, 0.0, 0.0};
  f[8] = {5, false, false, 0.0, b9, -kHalfPi, 0.0, 0.0, 0.0};
  return f;
}

namespace {

struct Line {
  Vec3 point;
  Vec3 dir;  // unit
};

Line actuator_axis(const ChainGeometry& chain) {
  MdhJointParams base = chain.base_frame;
  base.prismatic = true;
  const Transform t = frame_transform(base, 0.0);
  return {t.translation(), t.linear().col(2).normalized()};
}

// Least-squares point closest to all lines.
Vec3 closest_point(const PerChain<Line>& lines) {
  Mat3 m = Mat3::Zero();
  Vec3 rhs = Vec3::Zero();
  for (const auto& line : lines) {
    const Mat3 proj = Mat3::Identity() - line.dir * line.dir.transpose();
    m += proj;
    rhs += proj * line.point;
  }
  return m.fullPivLu().solve(rhs);
}

double distance_to_line(const Line& line, const Vec3& x) {
  const Vec3 rel = x - line.point;
  return (rel - line.dir * line.dir.dot(rel)).norm();
}

}  // namespace

Vec3 RobotModel::axes_intersection() const {
  PerChain<Line> lines{};
  for (int i = 0; i < kNumChains; ++i) lines[i] = actuator_axis(chains[i]);
  return closest_point(lines);
}

RobotModel make_default_model(const DefaultModelParams& params) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  const double a = params.a;
  RobotModel model;
  model.platform_mass = params.platform_mass;
  model.gravity = params.gravity;

  const std::array<MdhJointParams, kNumChains> bases = {{
      {0, true, true, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
      {0, true, true, kHalfPi, a, kHalfPi, 0.0, 0.0, -a},
      {0, true, true, 0.0, a, -kHalfPi, 0.0, -kHalfPi, -a},
  }};

  for (int i = 0; i < kNumChains; ++i) {
    ChainGeometry& c = model.chains[i];
    c.base_frame = bases[i];
    c.anchor = frame_transform(c.base_frame, 0.0).translation();
    c.D4 = params.D4;
    c.D6 = params.D6;
    c.r2 = params.r2;
    c.b7 = -2.0 * params.r2;
    c.b9 = -params.r2;
    c.r5 = -params.r2;
    c.D8 = params.D4;

    // Centre of mass halfway to the farthest child frame origin.
    const auto frames = c.frames();
    for (int body = 1; body <= kBodiesPerChain; ++body) {
      Vec3 farthest = Vec3::Zero();
      for (int k = 1; k < kFramesPerChain; ++k) {
        if (frames[k].parent != body) continue;
        const Vec3 offset = frame_transform(frames[k], 0.0).translation();
        if (offset.norm() > farthest.norm()) farthest = offset;
      }
      const Vec3 com = 0.5 * farthest;
      const double m = params.link_mass;
      LinkInertia& li = c.bodies[body - 1];
      li.mass = m;
      li.first_moment = m * com;
      li.inertia = params.link_inertia_com * Mat3::Identity() +
                   m * (com.squaredNorm() * Mat3::Identity() -
                        com * com.transpose());
    }
  }
  // Anchor 1 is the origin by construction; clean up round-off elsewhere.
  for (auto& c : model.chains) {
    for (int k = 0; k < 3; ++k) {
      if (std::abs(c.anchor[k]) < 1e-15) c.anchor[k] = 0.0;
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool same(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y));
}

void check_finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
}

void validate_body(const LinkInertia& li, const std::string& prefix) {
  check_finite(li.mass, prefix + ".mass");
  if (!li.first_moment.allFinite()) {
    throw ValidationError(prefix + ".first_moment", "must be finite");
  }
  if (!li.inertia.allFinite()) {
    throw ValidationError(prefix + ".inertia", "must be finite");
  }
  if (li.mass < 0.0) throw ValidationError(prefix + ".mass", "must be >= 0");
  const double scale = std::max(1.0, li.inertia.cwiseAbs().maxCoeff());
  if ((li.inertia - li.inertia.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * scale) {
    throw ValidationError(prefix + ".inertia", "must be symmetric");
  }
  const Mat3& j = li.inertia;
  constexpr double kTol = 1e-12;
  // All principal minors, not only the leading ones.
  const double minors1[] = {j(0, 0), j(1, 1), j(2, 2)};
  const double minors2[] = {
      j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0),
      j(0, 0) * j(2, 2) - j(0, 2) * j(2, 0),
      j(1, 1) * j(2, 2) - j(1, 2) * j(2, 1),
  };
  for (double m : minors1) {
    if (m < -kTol) throw ValidationError(prefix + ".inertia", "not positive semidefinite");
  }
  for (double m : minors2) {
    if (m < -kTol) throw ValidationError(prefix + ".inertia", "not positive semidefinite");
  }
  if (j.determinant() < -kTol) {
    throw ValidationError(prefix + ".inertia", "not positive semidefinite");
  }
}

}  // namespace

void validate_model(const RobotModel& model) {
  check_finite(model.platform_mass, "robot.platform_mass");
  if (!(model.platform_mass > 0.0)) {
    throw ValidationError("robot.platform_mass", "must be > 0");
  }
  if (!model.gravity.allFinite()) {
    throw ValidationError("robot.gravity", "must be finite");
  }

  PerChain<Line> axes{};
  for (int i = 0; i < kNumChains; ++i) {
    const ChainGeometry& c = model.chains[i];
    const std::string prefix = "chain" + std::to_string(i + 1);
    for (const auto& [value, name] :
         {std::pair{c.D4, "D4"}, {c.D6, "D6"}, {c.r2, "r2"}, {c.b7, "b7"},
          {c.b9, "b9"}, {c.r5, "r5"}, {c.D8, "D8"}, {c.base_frame.gamma, "base.gamma"},
          {c.base_frame.b, "base.b"}, {c.base_frame.alpha, "base.alpha"},
          {c.base_frame.d, "base.d"}, {c.base_frame.theta, "base.theta"},
          {c.base_frame.r, "base.r"}}) {
      check_finite(value, prefix + "." + name);
    }
    if (!c.anchor.allFinite()) {
      throw ValidationError(prefix + ".anchor", "must be finite");
    }
    if (!(c.D4 > 0.0)) throw ValidationError(prefix + ".D4", "must be > 0");
    if (!same(c.b7, -2.0 * c.r2)) {
      throw ValidationError(prefix + ".b7", "must equal -2*r2");
    }
    if (!same(c.b9, -c.r2)) {
      throw ValidationError(prefix + ".b9", "must equal -r2");
    }
    if (!same(c.r5, -c.r2)) {
      throw ValidationError(prefix + ".r5", "must equal -r2");
    }
    if (!same(c.D8, c.D4)) {
      throw ValidationError(prefix + ".D8", "must equal D4");
    }
    for (int b = 0; b < kBodiesPerChain; ++b) {
      validate_body(c.bodies[b], prefix + ".body" + std::to_string(b + 1));
    }

    axes[i] = actuator_axis(c);
    if ((axes[i].point - c.anchor).norm() > 1e-9) {
      throw ValidationError(prefix + ".anchor",
                            "must be the base frame origin at zero stroke");
    }
  }

  if (model.chains[0].anchor.norm() > 1e-9) {
    throw ValidationError("chain1.anchor", "must be the origin of R0");
  }

  const Vec3 k = closest_point(axes);
  for (int i = 0; i < kNumChains; ++i) {
    if (distance_to_line(axes[i], k) > 1e-9) {
      throw ValidationError("chain" + std::to_string(i + 1) + ".base",
                            "actuator axes do not meet at a common point");
    }
  }
}

// ---------------------------------------------------------------------------
// Text format

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

namespace {

std::string format_vec(const Vec3& v) {
  return format_double(v.x()) + " " + format_double(v.y()) + " " +
         format_double(v.z());
}

Vec3 to_vec3(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

}  // namespace

std::string serialize_model(const RobotModel& model) {
  std::ostringstream out;
  out << "# orthodyn robot model\n"
      << "# lengths in m, angles in rad, masses in kg, inertias in kg*m^2\n\n"
      << "[robot]\n"
      << "platform_mass = " << format_double(model.platform_mass) << "\n"
      << "gravity = " << format_vec(model.gravity) << "\n";
  for (int i = 0; i < kNumChains; ++i) {
    const ChainGeometry& c = model.chains[i];
    out << "\n[chain" << i + 1 << "]\n"
        << "anchor = " << format_vec(c.anchor) << "\n"
        << "base.gamma = " << format_double(c.base_frame.gamma) << "\n"
        << "base.b = " << format_double(c.base_frame.b) << "\n"
        << "base.alpha = " << format_double(c.base_frame.alpha) << "\n"
        << "base.d = " << format_double(c.base_frame.d) << "\n"
        << "base.theta = " << format_double(c.base_frame.theta) << "\n"
        << "base.r = " << format_double(c.base_frame.r) << "\n"
        << "D4 = " << format_double(c.D4) << "\n"
        << "D6 = " << format_double(c.D6) << "\n"
        << "r2 = " << format_double(c.r2) << "\n"
        << "b7 = " << format_double(c.b7) << "\n"
        << "b9 = " << format_double(c.b9) << "\n"
        << "r5 = " << format_double(c.r5) << "\n"
        << "D8 = " << format_double(c.D8) << "\n";
    for (int b = 0; b < kBodiesPerChain; ++b) {
      const LinkInertia& li = c.bodies[b];
      const std::string key = "body" + std::to_string(b + 1);
      out << key << ".mass = " << format_double(li.mass) << "\n"
          << key << ".first_moment = " << format_vec(li.first_moment) << "\n"
          << key << ".inertia =";
      for (int r = 0; r < 3; ++r) {
        for (int col = 0; col < 3; ++col) {
          out << " " << format_double(li.inertia(r, col));
        }
      }
      out << "\n";
    }
  }
  return out.str();
}

RobotModel load_model(std::string_view config_text) {
  const detail::ConfigDocument doc = detail::parse_config(config_text);
  for (const auto& [name, section] : doc) {
    if (name != "robot" && name != "chain1" && name != "chain2" &&
        name != "chain3" && name != "verify") {
      throw ParseError("unknown section [" + name + "]");
    }
  }
  auto section = [&](const std::string& name) -> const detail::ConfigSection& {
    auto it = doc.find(name);
    if (it == doc.end()) throw ValidationError(name, "missing section");
    return it->second;
  };

  RobotModel model;
  {
    detail::SectionReader robot(section("robot"), "robot");
    model.platform_mass = robot.number("platform_mass");
    model.gravity = to_vec3(robot.numbers("gravity", 3));
    robot.finish();
  }
  for (int i = 0; i < kNumChains; ++i) {
    const std::string name = "chain" + std::to_string(i + 1);
    detail::SectionReader in(section(name), name);
    ChainGeometry& c = model.chains[i];
    c.anchor = to_vec3(in.numbers("anchor", 3));
    c.base_frame.parent = 0;
    c.base_frame.motorized = true;
    c.base_frame.prismatic = true;
    c.base_frame.gamma = in.number("base.gamma");
    c.base_frame.b = in.number("base.b");
    c.base_frame.alpha = in.number("base.alpha");
    c.base_frame.d = in.number("base.d");
    c.base_frame.theta = in.number("base.theta");
    c.base_frame.r = in.number("base.r");
    c.D4 = in.number("D4");
    c.D6 = in.number("D6");
    c.r2 = in.number("r2");
    c.b7 = in.number("b7");
    c.b9 = in.number("b9");
    c.r5 = in.number("r5");
    c.D8 = in.number("D8");
    for (int b = 0; b < kBodiesPerChain; ++b) {
      const std::string key = "body" + std::to_string(b + 1);
      LinkInertia& li = c.bodies[b];
      li.mass = in.number(key + ".mass");
      li.first_moment = to_vec3(in.numbers(key + ".first_moment", 3));
      const auto j = in.numbers(key + ".inertia", 9);
      for (int r = 0; r < 3; ++r) {
        for (int col = 0; col < 3; ++col) li.inertia(r, col) = j[3 * r + col];
      }
    }
    in.finish();
  }
  validate_model(model);
  return model;
}

RobotModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_model(text.str());
}

}  // namespace orthodyn
