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

#include <gtest/gtest.h>

#include "json.hpp"
#include "orthodyn/verify.hpp"

namespace orthodyn {
namespace {

TEST(Verify, AllChecksPassOnDefaultModel) {
  const auto reports = run_verification(make_default_model(), 42, 10);
  EXPECT_EQ(reports.size(), check_names().size());
  for (const OracleReport& r : reports) {
    EXPECT_TRUE(r.pass) << r.check_name << " err=" << r.max_rel_err << " " << r.note;
    EXPECT_GE(r.samples, 1) << r.check_name;
  }
}

TEST(Verify, ReportsAreDeterministic) {
  const RobotModel m = make_default_model();
  for (const char* name : {"lagrangian_idm", "chain_power_balance", "igm_round_trip"}) {
    const OracleReport a = run_check(name, m, 7, 5);
    const OracleReport b = run_check(name, m, 7, 5);
    EXPECT_EQ(a.max_rel_err, b.max_rel_err) << name;
  }
  EXPECT_NE(run_check("lagrangian_idm", m, 7, 5).max_rel_err,
            run_check("lagrangian_idm", m, 8, 5).max_rel_err);
}

TEST(Verify, SamplerStaysInsideBall) {
  const RobotModel m = make_default_model();
  StateSampler s(m, 3);
  EXPECT_NEAR((s.center() - Vec3(0.0, 0.0, 0.2)).norm(), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(s.radius(), 0.15);
  for (int k = 0; k < 200; ++k) {
    const PlatformState st = s.state();
    EXPECT_LE((st.P - s.center()).norm(), s.radius());
    EXPECT_LE(st.V.norm(), 1.0);
    EXPECT_LE(st.A.norm(), 5.0);
    const double u = s.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Verify, AsymmetricInertiaFailsSymmetryCheck) {
  RobotModel bad = make_default_model();
  bad.chains[0].bodies[2].inertia(0, 2) += 0.05;
  const OracleReport r = run_check("chain_inertia_symmetry", bad, 42, 10);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max_rel_err, 1e-4);
}

TEST(Verify, LoadTolerances) {
  const OracleTolerances tol =
      load_tolerances("[robot]\nplatform_mass = 1\n[verify]\nisotropy = 1e-30\n");
  EXPECT_EQ(tol.at("isotropy"), 1e-30);
  EXPECT_EQ(tol.at("igm_round_trip"), default_tolerances().at("igm_round_trip"));
  EXPECT_THROW(load_tolerances("[verify]\nno_such_check = 1\n"), ParseError);
  EXPECT_THROW(load_tolerances("[verify]\nisotropy = -1\n"), ValidationError);
}

TEST(Verify, TightToleranceFails) {
  OracleTolerances tol = default_tolerances();
  tol["lagrangian_idm"] = 1e-16;
  EXPECT_FALSE(run_check("lagrangian_idm", make_default_model(), 42, 3, tol).pass);
}

TEST(Verify, UnknownCheckIsUsageError) {
  EXPECT_THROW(run_check("nope", make_default_model(), 1, 1), UsageError);
  EXPECT_THROW(run_verification(make_default_model(), 1, 0), UsageError);
}

TEST(Verify, JsonReport) {
  const auto reports = run_verification(make_default_model(), 42, 2);
  const auto doc = nlohmann::json::parse(reports_to_json(reports));
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), reports.size());
  for (std::size_t k = 0; k < reports.size(); ++k) {
    EXPECT_EQ(doc[k]["check_name"], reports[k].check_name);
    EXPECT_EQ(doc[k]["pass"], reports[k].pass);
    EXPECT_EQ(doc[k]["samples"], reports[k].samples);
    EXPECT_EQ(doc[k]["max_rel_err"].get<double>(), reports[k].max_rel_err);
  }
  const std::string table = reports_to_table(reports);
  EXPECT_NE(table.find("isotropy"), std::string::npos);
  EXPECT_NE(table.find("PASS"), std::string::npos);
}

TEST(Verify, ChainOracleSeesEveryBody) {
  // Kinetic energy changes when any body's mass changes.
  const RobotModel m = make_default_model();
  const Vec3 q(-0.4, -1.3, 0.2), qd(0.3, -0.5, 0.7);
  const double t0 = chain_kinetic_energy(m, 0, q, qd);
  for (int b = 0; b < kBodiesPerChain; ++b) {
    RobotModel heavier = m;
    heavier.chains[0].bodies[b].mass *= 2.0;
    EXPECT_GT(chain_kinetic_energy(heavier, 0, q, qd), t0) << "body " << b + 1;
  }
}

}  // namespace
}  // namespace orthodyn
