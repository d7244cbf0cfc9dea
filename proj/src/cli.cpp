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
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "config_text.hpp"
#include "json.hpp"
#include "orthodyn/harness.hpp"
#include "orthodyn/verify.hpp"

namespace orthodyn {
namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + path + "'");
  file << text;
  if (!file) throw IoError("write failed for '" + path + "'");
}

Vec3 parse_vec3(const std::string& text, const std::string& flag) {
  if (text.empty()) return Vec3::Zero();
  std::vector<double> v;
  try {
    v = detail::parse_numbers(text, flag);
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
  if (v.size() != 3) throw UsageError(flag + " expects x,y,z");
  return Vec3(v[0], v[1], v[2]);
}

struct Common {
  std::string model = "default";
  std::string out;
  std::string format = "csv";
};

RobotModel resolve_model(const std::string& spec) {
  if (spec == "default") return make_default_model();
  return load_model_file(spec);
}

std::string vec_text(const Vec3& v) {
  return format_double(v.x()) + ", " + format_double(v.y()) + ", " +
         format_double(v.z());
}

Json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

Json mat_json(const Mat3& m) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(vec_json(m.row(r).transpose()));
  return rows;
}

std::string trajectory_text(const std::vector<TrajectorySample>& samples,
                            const std::string& format) {
  return format == "json" ? trajectory_to_json(samples)
                          : trajectory_to_csv(samples);
}

int run_ik(const Common& c, const std::string& point, std::ostream& out) {
  const RobotModel model = resolve_model(c.model);
  const Vec3 P = parse_vec3(point, "--point");
  const IgmResult pos = igm(model, P);
  const Mat3 jp_inv = robot_jacobian_inverse(model, pos.chain_q);
  std::array<Mat3, kNumChains> jac{};
  for (int i = 0; i < kNumChains; ++i) jac[i] = chain_jacobian(model, i, pos.chain_q[i]);

  std::ostringstream text;
  if (c.format == "json") {
    Json j;
    j["P"] = vec_json(P);
    j["L"] = vec_json(pos.L);
    Json chains = Json::array();
    for (int i = 0; i < kNumChains; ++i) {
      chains.push_back({{"q", vec_json(pos.chain_q[i])}, {"J", mat_json(jac[i])}});
    }
    j["chains"] = chains;
    j["Jp_inv"] = mat_json(jp_inv);
    text << j.dump(2) << "\n";
  } else {
    text << "L = " << vec_text(pos.L) << "\n";
    for (int i = 0; i < kNumChains; ++i) {
      for (int k = 0; k < 3; ++k) {
        text << "q_" << k + 1 << i + 1 << " = " << format_double(pos.chain_q[i][k])
             << "\n";
      }
    }
    for (int i = 0; i < kNumChains; ++i) {
      for (int r = 0; r < 3; ++r) {
        text << "J_" << i + 1 << "[" << r << "] = "
             << vec_text(jac[i].row(r).transpose()) << "\n";
      }
    }
    for (int r = 0; r < 3; ++r) {
      text << "Jp_inv[" << r << "] = " << vec_text(jp_inv.row(r).transpose())
           << "\n";
    }
  }
  write_output(c.out, text.str(), out);
  return 0;
}

int run_idm(const Common& c, const std::string& input, std::ostream& out) {
  const RobotModel model = resolve_model(c.model);
  std::vector<TrajectorySample> samples = read_trajectory(read_file(input));
  fill_inverse_dynamics(model, samples);
  write_output(c.out, trajectory_text(samples, c.format), out);
  return 0;
}

int run_ddm(const Common& c, const std::string& point, const std::string& velocity,
            const std::string& torque, std::ostream& out) {
  const RobotModel model = resolve_model(c.model);
  const Vec3 A = direct_dynamics(model, parse_vec3(point, "--point"),
                                 parse_vec3(velocity, "--velocity"),
                                 parse_vec3(torque, "--torque"));
  std::string text;
  if (c.format == "json") {
    text = Json{{"A", vec_json(A)}}.dump(2) + "\n";
  } else {
    text = "A = " + vec_text(A) + "\n";
  }
  write_output(c.out, text, out);
  return 0;
}

struct SimulateArgs {
  std::string point;
  std::string velocity;
  double dt = 1e-4;
  double t_end = 1.0;
  std::string integrator = "rk4";
  std::string torque_source = "zero";
  std::string torque_file;
};

int run_simulate(const Common& c, const SimulateArgs& a, std::ostream& out,
                 std::ostream& err) {
  const RobotModel model = resolve_model(c.model);
  SimConfig cfg;
  cfg.dt = a.dt;
  cfg.t_end = a.t_end;
  cfg.integrator = a.integrator == "euler" ? Integrator::kEuler : Integrator::kRk4;
  cfg.torque_source = a.torque_source == "hold"   ? TorqueSource::kHold
                      : a.torque_source == "file" ? TorqueSource::kFile
                                                  : TorqueSource::kZero;
  validate_sim_config(cfg);
  if (cfg.torque_source == TorqueSource::kFile && a.torque_file.empty()) {
    throw UsageError("--torque-source file needs --torque-file");
  }
  const Vec3 P0 = a.point.empty() ? model.axes_intersection()
                                  : parse_vec3(a.point, "--point");
  const Vec3 V0 = parse_vec3(a.velocity, "--velocity");
  std::vector<TrajectorySample> recorded;
  if (cfg.torque_source == TorqueSource::kFile) {
    recorded = read_trajectory(read_file(a.torque_file));
  }
  const TorqueFn torque = make_torque_source(model, cfg, P0, recorded);
  const SimResult sim = simulate(model, P0, V0, torque, cfg);
  write_output(c.out, trajectory_text(sim.samples, c.format), out);
  if (!sim.completed) {
    err << "warning: simulation stopped at t = "
        << format_double(sim.samples.back().t) << ": " << sim.stop_reason << "\n";
  }
  return 0;
}

int run_path(const Common& c, const std::string& from, const std::string& to,
             double duration, double dt, std::ostream& out) {
  const RobotModel model = resolve_model(c.model);
  const Vec3 start = from.empty() ? model.axes_intersection()
                                  : parse_vec3(from, "--from");
  const QuinticPath path =
      quintic_path(model, start, parse_vec3(to, "--to"), duration);
  write_output(c.out, trajectory_text(sample_path(model, path, dt), c.format), out);
  return 0;
}

int run_verify(const Common& c, std::uint64_t seed, int samples,
               const std::string& check, std::ostream& out) {
  const RobotModel model = resolve_model(c.model);
  OracleTolerances tol = default_tolerances();
  if (c.model != "default") tol = load_tolerances(read_file(c.model));
  std::vector<OracleReport> reports;
  if (check.empty()) {
    reports = run_verification(model, seed, samples, tol);
  } else {
    reports.push_back(run_check(check, model, seed, samples, tol));
  }
  // Table on stdout; the JSON report goes to --out, or replaces the table
  // with --format json.
  if (c.format == "json") {
    write_output(c.out, reports_to_json(reports), out);
  } else {
    out << reports_to_table(reports);
    if (!c.out.empty()) write_output(c.out, reports_to_json(reports), out);
  }
  const bool all_pass = std::all_of(reports.begin(), reports.end(),
                                    [](const OracleReport& r) { return r.pass; });
  return all_pass ? 0 : 1;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  CLI::App app{"Orthoglide kinematics and dynamics"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all");

  Common common;
  auto add_common = [&](CLI::App* sub, bool format) {
    sub->add_option("--model", common.model, "model config path or 'default'");
    sub->add_option("--out", common.out, "output file (default: stdout)");
    if (format) {
      sub->add_option("--format", common.format, "output format")
          ->check(CLI::IsMember({"csv", "json"}));
    }
  };

  std::string point, velocity, torque, input, check, from, to;
  auto* ik = app.add_subcommand("ik", "actuator and joint values at a point");
  add_common(ik, true);
  ik->add_option("--point", point, "platform position x,y,z")->required();

  auto* idm = app.add_subcommand("idm", "actuator forces along a trajectory");
  add_common(idm, true);
  idm->add_option("--in", input, "trajectory file (CSV or JSON)")->required();

  auto* ddm = app.add_subcommand("ddm", "platform acceleration for given forces");
  add_common(ddm, true);
  ddm->add_option("--point", point, "platform position x,y,z")->required();
  ddm->add_option("--velocity", velocity, "platform velocity x,y,z");
  ddm->add_option("--torque", torque, "actuator forces G1,G2,G3")->required();

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "forward simulation");
  add_common(simulate_cmd, true);
  simulate_cmd->add_option("--point", sim.point, "initial position x,y,z");
  simulate_cmd->add_option("--velocity", sim.velocity, "initial velocity x,y,z");
  simulate_cmd->add_option("--dt", sim.dt, "step size [s]");
  simulate_cmd->add_option("--t-end", sim.t_end, "duration [s]");
  simulate_cmd->add_option("--integrator", sim.integrator)
      ->check(CLI::IsMember({"rk4", "euler"}));
  simulate_cmd->add_option("--torque-source", sim.torque_source)
      ->check(CLI::IsMember({"zero", "hold", "file"}));
  simulate_cmd->add_option("--torque-file", sim.torque_file,
                           "trajectory file with G1..G3 columns");

  double duration = 1.0, path_dt = 1e-3;
  auto* path = app.add_subcommand("path", "quintic point-to-point trajectory");
  add_common(path, true);
  path->add_option("--from", from, "start x,y,z (default: isotropic point)");
  path->add_option("--to", to, "end x,y,z")->required();
  path->add_option("--duration", duration, "duration [s]");
  path->add_option("--dt", path_dt, "sample spacing [s]");

  std::uint64_t seed = 42;
  int samples = 100;
  auto* verify = app.add_subcommand("verify", "run the numerical oracles");
  add_common(verify, false);
  verify->add_option("--seed", seed);
  verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
  verify->add_option("--check", check, "run a single check")
      ->check(CLI::IsMember(check_names()));
  verify->add_option("--format", common.format)
      ->check(CLI::IsMember({"table", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ERROR:UsageError:" << e.what() << "\n";
    return 2;
  }

  try {
    if (ik->parsed()) return run_ik(common, point, out);
    if (idm->parsed()) return run_idm(common, input, out);
    if (ddm->parsed()) return run_ddm(common, point, velocity, torque, out);
    if (simulate_cmd->parsed()) return run_simulate(common, sim, out, err);
    if (path->parsed()) return run_path(common, from, to, duration, path_dt, out);
    if (verify->parsed()) return run_verify(common, seed, samples, check, out);
  } catch (const UsageError& e) {
    err << "ERROR:" << error_kind_name(e.kind()) << ":" << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "ERROR:" << error_kind_name(e.kind()) << ":" << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "ERROR:NumericalError:" << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace orthodyn
