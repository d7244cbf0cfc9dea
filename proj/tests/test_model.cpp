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
#include <cstring>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "orthodyn/model.hpp"

namespace orthodyn {
namespace {

std::string default_text() { return serialize_model(make_default_model()); }

std::string replace_line(std::string text, const std::string& section,
                         const std::string& key, const std::string& value) {
  const std::size_t sec = text.find("[" + section + "]");
  EXPECT_NE(sec, std::string::npos);
  const std::size_t pos = text.find("\n" + key + " = ", sec);
  EXPECT_NE(pos, std::string::npos);
  const std::size_t end = text.find('\n', pos + 1);
  return text.substr(0, pos + 1) + key + " = " + value + text.substr(end);
}

template <typename E>
E capture(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const E& e) {
    return e;
  }
  ADD_FAILURE() << "expected exception was not thrown";
  throw std::logic_error("unreachable");
}

TEST(Model, DefaultModelIsValid) {
  const RobotModel m = make_default_model();
  EXPECT_NO_THROW(validate_model(m));
  EXPECT_DOUBLE_EQ(m.platform_mass, 1.0);
  for (const ChainGeometry& c : m.chains) {
    EXPECT_DOUBLE_EQ(c.D4, 0.5);
    EXPECT_DOUBLE_EQ(c.D6, 0.1);
    EXPECT_DOUBLE_EQ(c.b7, -2.0 * c.r2);
    EXPECT_DOUBLE_EQ(c.b9, -c.r2);
    EXPECT_DOUBLE_EQ(c.r5, -c.r2);
    EXPECT_DOUBLE_EQ(c.D8, c.D4);
  }
  EXPECT_TRUE(m.chains[0].anchor.isZero());
  EXPECT_TRUE(m.chains[1].anchor.isApprox(Vec3(-0.2, 0.0, 0.2)));
  EXPECT_TRUE(m.chains[2].anchor.isApprox(Vec3(0.0, -0.2, 0.2)));
}

TEST(Model, AxesMeetAtIsotropicPoint) {
  const Vec3 k = make_default_model().axes_intersection();
  EXPECT_NEAR((k - Vec3(0.0, 0.0, 0.2)).norm(), 0.0, 1e-12);
}

TEST(Model, FrameTransformMatchesExplicitProduct) {
  MdhJointParams p;
  p.gamma = 0.3;
  p.b = 0.1;
  p.alpha = -0.7;
  p.d = 0.25;
  p.theta = 0.2;
  p.r = -0.05;
  const double q = 0.4;
  using Eigen::AngleAxisd;
  Transform expected = Transform::Identity();
  expected.rotate(AngleAxisd(p.gamma, Vec3::UnitZ()));
  expected.translate(Vec3(0, 0, p.b));
  expected.rotate(AngleAxisd(p.alpha, Vec3::UnitX()));
  expected.translate(Vec3(p.d, 0, 0));
  expected.rotate(AngleAxisd(p.theta + q, Vec3::UnitZ()));
  expected.translate(Vec3(0, 0, p.r));
  EXPECT_TRUE(frame_transform(p, q).matrix().isApprox(expected.matrix(), 1e-14));

  p.prismatic = true;
  Transform prismatic = Transform::Identity();
  prismatic.rotate(AngleAxisd(p.gamma, Vec3::UnitZ()));
  prismatic.translate(Vec3(0, 0, p.b));
  prismatic.rotate(AngleAxisd(p.alpha, Vec3::UnitX()));
  prismatic.translate(Vec3(p.d, 0, 0));
  prismatic.rotate(AngleAxisd(p.theta, Vec3::UnitZ()));
  prismatic.translate(Vec3(0, 0, p.r + q));
  EXPECT_TRUE(frame_transform(p, q).matrix().isApprox(prismatic.matrix(), 1e-14));
}

TEST(Model, FrameTableIdentities) {
  const ChainGeometry& c = make_default_model().chains[0];
  const auto f = c.frames();
  EXPECT_TRUE(f[0].prismatic);
  EXPECT_TRUE(f[0].motorized);
  for (int k = 1; k < kFramesPerChain; ++k) EXPECT_FALSE(f[k].motorized);
  // The two sides of the cut joint: frame 8 ends the second long bar,
  // frame 9 hangs on the platform-side body.
  EXPECT_EQ(f[6].parent, 2);
  EXPECT_EQ(f[7].parent, 7);
  EXPECT_EQ(f[8].parent, 5);
}

TEST(Model, ConfigRoundTripIsBitExact) {
  DefaultModelParams params;
  params.a = 0.1 / 3.0;
  params.D4 = std::numbers::pi / 7.0;
  params.platform_mass = 1.0 / 3.0;
  const RobotModel m = make_default_model(params);
  const RobotModel back = load_model(serialize_model(m));
  EXPECT_EQ(serialize_model(back), serialize_model(m));
  EXPECT_EQ(std::memcmp(&back.platform_mass, &m.platform_mass, sizeof(double)), 0);
  for (int i = 0; i < kNumChains; ++i) {
    for (int b = 0; b < kBodiesPerChain; ++b) {
      EXPECT_EQ(back.chains[i].bodies[b].inertia, m.chains[i].bodies[b].inertia);
      EXPECT_EQ(back.chains[i].bodies[b].first_moment,
                m.chains[i].bodies[b].first_moment);
    }
    EXPECT_EQ(back.chains[i].anchor, m.chains[i].anchor);
  }
}

TEST(Model, ShippedConfigMatchesDefault) {
  std::ifstream in(std::string(ORTHODYN_SOURCE_DIR) + "/config/default_model.ini");
  ASSERT_TRUE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), default_text());
  EXPECT_NO_THROW(load_model(buf.str()));
}

TEST(Model, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -9.81, 1e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(ModelErrors, B7MismatchNamesField) {
  const std::string text = replace_line(default_text(), "chain1", "b7", "-0.2");
  const auto e = capture<ValidationError>([&] { load_model(text); });
  EXPECT_EQ(e.field(), "chain1.b7");
}

TEST(ModelErrors, D8MismatchNamesField) {
  const std::string text = replace_line(default_text(), "chain3", "D8", "0.6");
  EXPECT_EQ(capture<ValidationError>([&] { load_model(text); }).field(), "chain3.D8");
}

TEST(ModelErrors, ZeroPlatformMass) {
  const std::string text =
      replace_line(default_text(), "robot", "platform_mass", "0");
  EXPECT_EQ(capture<ValidationError>([&] { load_model(text); }).field(),
            "robot.platform_mass");
}

TEST(ModelErrors, NonFiniteValue) {
  const std::string text = replace_line(default_text(), "chain2", "D6", "nan");
  EXPECT_THROW(load_model(text), Error);
}

TEST(ModelErrors, IndefiniteInertia) {
  const std::string text = replace_line(default_text(), "chain1", "body3.inertia",
                                        "-1 0 0 0 1 0 0 0 1");
  EXPECT_THROW(load_model(text), ValidationError);
}

TEST(ModelErrors, AsymmetricInertia) {
  const std::string text = replace_line(default_text(), "chain1", "body3.inertia",
                                        "0.1 0.01 0 0 0.1 0 0 0 0.1");
  EXPECT_THROW(load_model(text), ValidationError);
}

TEST(ModelErrors, AnchorOffAxis) {
  const std::string text =
      replace_line(default_text(), "chain2", "anchor", "-0.2 0.01 0.2");
  EXPECT_THROW(load_model(text), ValidationError);
}

TEST(ModelErrors, NonConcurrentAxes) {
  // Shift chain 2's axis sideways and keep its anchor consistent.
  std::string text = replace_line(default_text(), "chain2", "base.b", "0.21");
  text = replace_line(text, "chain2", "anchor", "-0.2 0 0.21");
  EXPECT_THROW(load_model(text), ValidationError);
}

TEST(ModelErrors, ParseErrors) {
  EXPECT_THROW(load_model(default_text() + "\n[chain4]\n"), ParseError);
  EXPECT_THROW(load_model(default_text() + "\n[robot]\nplatform_mass = 1\n"),
               ParseError);
  EXPECT_THROW(load_model(replace_line(default_text(), "chain1", "D4", "0.5x")),
               ParseError);
  std::string unknown = default_text();
  unknown.insert(unknown.find("[chain1]") + 9, "colour = 3\n");
  EXPECT_THROW(load_model(unknown), ParseError);
}

TEST(ModelErrors, MissingKey) {
  std::string text = default_text();
  const std::size_t pos = text.find("D6 = ");
  text.erase(pos, text.find('\n', pos) - pos + 1);
  EXPECT_THROW(load_model(text), ValidationError);
}

TEST(ModelErrors, VerifySectionIsAccepted) {
  EXPECT_NO_THROW(load_model(default_text() + "\n[verify]\nisotropy = 1e-9\n"));
}

TEST(ModelErrors, MissingFile) {
  EXPECT_THROW(load_model_file("/nonexistent/model.ini"), IoError);
}

}  // namespace
}  // namespace orthodyn
