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

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orthodyn/harness.hpp"
#include "orthodyn/verify.hpp"

namespace py = pybind11;
using namespace orthodyn;

namespace {

std::vector<Vec3> to_list(const PerChain<Vec3>& v) { return {v.begin(), v.end()}; }

py::dict trajectory_dict(const std::vector<TrajectorySample>& samples) {
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
  Eigen::VectorXd t(n);
  Eigen::MatrixX3d P(n, 3), V(n, 3), A(n, 3), L(n, 3), Ldot(n, 3), G(n, 3);
  for (Eigen::Index k = 0; k < n; ++k) {
    const TrajectorySample& s = samples[k];
    t[k] = s.t;
    P.row(k) = s.P;
    V.row(k) = s.V;
    A.row(k) = s.A;
    L.row(k) = s.L;
    Ldot.row(k) = s.Ldot;
    G.row(k) = s.Gamma;
  }
  py::dict d;
  d["t"] = t;
  d["P"] = P;
  d["V"] = V;
  d["A"] = A;
  d["L"] = L;
  d["Ldot"] = Ldot;
  d["Gamma"] = G;
  return d;
}

}  // namespace

PYBIND11_MODULE(_orthodyn, m) {
  m.doc() = "Orthoglide kinematics, dynamics and simulation";
  m.attr("__version__") = "0.1.0";

  static py::exception<Error> base(m, "OrthodynError", PyExc_RuntimeError);
  static py::exception<ParseError> parse(m, "ParseError", base.ptr());
  static py::exception<ValidationError> validation(m, "ValidationError", base.ptr());
  static py::exception<OutOfWorkspace> workspace(m, "OutOfWorkspace", base.ptr());
  static py::exception<ChainSingular> singular(m, "ChainSingular", base.ptr());
  static py::exception<NumericalError> numerical(m, "NumericalError", base.ptr());
  static py::exception<UsageError> usage(m, "UsageError", base.ptr());
  static py::exception<IoError> io(m, "IoError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const ValidationError& e) {
      py::set_error(validation, e.what());
    } catch (const OutOfWorkspace& e) {
      py::set_error(workspace, e.what());
    } catch (const ChainSingular& e) {
      py::set_error(singular, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical, e.what());
    } catch (const UsageError& e) {
      py::set_error(usage, e.what());
    } catch (const IoError& e) {
      py::set_error(io, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<RobotModel>(m, "RobotModel")
      .def_readwrite("platform_mass", &RobotModel::platform_mass)
      .def_readwrite("gravity", &RobotModel::gravity)
      .def("axes_intersection", &RobotModel::axes_intersection)
      .def("validate", [](const RobotModel& model) { validate_model(model); })
      .def("__repr__", [](const RobotModel& model) {
        return "<RobotModel platform_mass=" + format_double(model.platform_mass) + ">";
      });

  m.def("make_default_model", [] { return make_default_model(); });
  m.def("load_model", [](const std::string& text) { return load_model(text); },
        py::arg("text"));
  m.def("load_model_file", &load_model_file, py::arg("path"));
  m.def("serialize_model", &serialize_model, py::arg("model"));

  m.def(
      "igm",
      [](const RobotModel& model, const Vec3& P) {
        const IgmResult r = igm(model, P);
        return py::make_tuple(r.L, to_list(r.chain_q));
      },
      py::arg("model"), py::arg("P"),
      "Actuator positions L and per-chain joint values for platform position P.");
  m.def("chain_forward_point", &chain_forward_point, py::arg("model"),
        py::arg("chain"), py::arg("q"));
  m.def("chain_jacobian", &chain_jacobian, py::arg("model"), py::arg("chain"),
        py::arg("q"));
  m.def("chain_jacobian_inverse", &chain_jacobian_inverse, py::arg("model"),
        py::arg("chain"), py::arg("q"));
  m.def(
      "robot_jacobian_inverse",
      [](const RobotModel& model, const Vec3& P) {
        return robot_jacobian_inverse(model, igm(model, P).chain_q);
      },
      py::arg("model"), py::arg("P"));
  m.def(
      "ik_velocity",
      [](const RobotModel& model, const Vec3& P, const Vec3& V) {
        const IkVelocityResult r = ik_velocity(model, igm(model, P).chain_q, V);
        return py::make_tuple(r.Ldot, to_list(r.chain_qd));
      },
      py::arg("model"), py::arg("P"), py::arg("V"));

  m.def("inverse_dynamics", &inverse_dynamics, py::arg("model"), py::arg("P"),
        py::arg("V"), py::arg("A"));
  m.def("direct_dynamics", &direct_dynamics, py::arg("model"), py::arg("P"),
        py::arg("V"), py::arg("Gamma"));
  m.def(
      "robot_inertia",
      [](const RobotModel& model, const Vec3& P, const Vec3& V) {
        const RobotDynModel d = assemble_robot_dyn(model, P, V);
        return py::make_tuple(d.A_robot, d.h_robot);
      },
      py::arg("model"), py::arg("P"), py::arg("V"),
      "Cartesian inertia matrix and bias force of the whole robot.");
  m.def("platform_force", &platform_force, py::arg("model"), py::arg("A"));
  m.def("kinetic_energy", &kinetic_energy, py::arg("model"), py::arg("P"),
        py::arg("V"));
  m.def("potential_energy", &potential_energy, py::arg("model"), py::arg("P"));

  m.def(
      "quintic_path",
      [](const RobotModel& model, const Vec3& start, const Vec3& end, double duration,
         double dt) {
        return trajectory_dict(
            sample_path(model, quintic_path(model, start, end, duration), dt));
      },
      py::arg("model"), py::arg("start"), py::arg("end"), py::arg("duration"),
      py::arg("dt"), "Samples of a quintic path with inverse-dynamics forces.");

  m.def(
      "simulate",
      [](const RobotModel& model, const Vec3& P0, const Vec3& V0, py::object torque,
         double dt, double t_end, const std::string& integrator) {
        SimConfig cfg;
        cfg.dt = dt;
        cfg.t_end = t_end;
        if (integrator == "euler") {
          cfg.integrator = Integrator::kEuler;
        } else if (integrator != "rk4") {
          throw UsageError("integrator must be 'rk4' or 'euler'");
        }
        TorqueFn fn;
        if (py::isinstance<py::str>(torque)) {
          const std::string name = torque.cast<std::string>();
          if (name == "hold") {
            cfg.torque_source = TorqueSource::kHold;
          } else if (name != "zero") {
            throw UsageError("torque must be 'zero', 'hold' or a callable");
          }
          fn = make_torque_source(model, cfg, P0);
        } else {
          fn = torque.cast<TorqueFn>();
        }
        const SimResult r = simulate(model, P0, V0, fn, cfg);
        py::dict d = trajectory_dict(r.samples);
        d["completed"] = r.completed;
        d["stop_reason"] = r.stop_reason;
        return d;
      },
      py::arg("model"), py::arg("P0"), py::arg("V0"), py::arg("torque") = "zero",
      py::arg("dt") = 1e-4, py::arg("t_end") = 1.0, py::arg("integrator") = "rk4");

  m.def("check_names", &check_names);
  m.def(
      "verify",
      [](const RobotModel& model, std::uint64_t seed, int samples) {
        py::list out;
        for (const OracleReport& r : run_verification(model, seed, samples)) {
          py::dict d;
          d["check_name"] = r.check_name;
          d["max_rel_err"] = r.max_rel_err;
          d["samples"] = r.samples;
          d["pass"] = r.pass;
          d["tolerance"] = r.tolerance;
          d["note"] = r.note;
          out.append(d);
        }
        return out;
      },
      py::arg("model"), py::arg("seed") = 42, py::arg("samples") = 100);
}
