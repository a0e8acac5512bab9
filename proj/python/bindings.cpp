// Copyright 2026 The quantum-bottleneck Authors
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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "qib/analytic.hpp"
#include "qib/error.hpp"
#include "qib/experiments.hpp"
#include "qib/qdib_engine.hpp"
#include "qib/qib_engine.hpp"

namespace py = pybind11;
using namespace qib;

namespace {

std::vector<DensityOperator> densities(const std::vector<ComplexMatrix>& mats) {
  std::vector<DensityOperator> out;
  out.reserve(mats.size());
  for (const ComplexMatrix& m : mats) out.emplace_back(HermitianOperator(m));
  return out;
}

std::vector<ComplexMatrix> matrices(const std::vector<DensityOperator>& ops) {
  std::vector<ComplexMatrix> out;
  out.reserve(ops.size());
  for (const DensityOperator& o : ops) out.push_back(o.matrix());
  return out;
}

py::dict trace_dict(const IterationTrace& t) {
  py::list rows;
  for (const IterationRecord& r : t.records) {
    py::dict d;
    d["iter"] = r.iter;
    d["f"] = r.f;
    d["H_T"] = r.h_t;
    d["I_TX"] = r.i_tx;
    d["I_TY"] = r.i_ty;
    d["step_divergence"] = r.step_divergence;
    d["gamma_ratio"] = r.gamma_ratio;
    d["fixed_point_residual"] = r.fixed_point_residual;
    if (t.qdib) d["support_T"] = r.support_t;
    d["violation"] = r.violation;
    rows.append(std::move(d));
  }
  py::dict out;
  out["records"] = std::move(rows);
  out["status"] = to_string(t.status);
  out["reached_tolerance"] = t.reached_tolerance;
  return out;
}

ObjectiveConfig make_config(double alpha, double beta, std::optional<double> gamma, int dim_t,
                            bool classical, double tol, int max_iters, std::uint64_t seed) {
  ObjectiveConfig c;
  c.alpha = alpha;
  c.beta = beta;
  c.gamma = gamma;
  c.dim_t = dim_t;
  c.classical = classical;
  c.tol = tol;
  c.max_iters = max_iters;
  c.seed = seed;
  return c;
}

py::dict run_dict(const RunResult& r) {
  py::dict d = trace_dict(r.trace);
  d["channel"] = py::cast(r.channel);
  return d;
}

}  // namespace

PYBIND11_MODULE(_qib, m) {
  m.doc() = "Quantum information bottleneck core";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<CQState>(m, "CQState")
      .def(py::init([](const RealVector& px, const std::vector<ComplexMatrix>& rho) {
             return CQState(px, densities(rho));
           }),
           py::arg("px"), py::arg("rho"))
      .def_property_readonly("px", &CQState::px)
      .def_property_readonly("rho", [](const CQState& s) { return matrices(s.rho_y_given_x()); })
      .def_property_readonly("size_x", &CQState::size_x)
      .def_property_readonly("dim_y", &CQState::dim_y);

  py::class_<CQChannel>(m, "CQChannel")
      .def(py::init([](const std::vector<ComplexMatrix>& sigma, bool classical) {
             return CQChannel(densities(sigma), classical);
           }),
           py::arg("sigma"), py::arg("classical") = false)
      .def_property_readonly("sigma", [](const CQChannel& c) { return matrices(c.sigma_t_given_x()); })
      .def_property_readonly("size_x", &CQChannel::size_x)
      .def_property_readonly("dim_t", &CQChannel::dim_t)
      .def_property_readonly("classical", &CQChannel::classical);

  m.def("f_alpha", &objective_f_alpha, py::arg("state"), py::arg("channel"), py::arg("alpha"),
        py::arg("beta"));
  m.def("f_dib", &objective_f_dib, py::arg("state"), py::arg("channel"), py::arg("beta"));
  m.def("mutual_info_tx", &mutual_info_TX, py::arg("state"), py::arg("channel"));
  m.def("mutual_info_ty", &mutual_info_TY, py::arg("state"), py::arg("channel"));
  m.def("holevo_information", &holevo_information, py::arg("state"));
  m.def(
      "f_operator",
      [](const CQState& s, const CQChannel& c, double alpha, double beta) {
        std::vector<ComplexMatrix> out;
        for (const HermitianOperator& h : f_operator(s, c, alpha, beta)) out.push_back(h.matrix());
        return out;
      },
      py::arg("state"), py::arg("channel"), py::arg("alpha"), py::arg("beta"));
  m.def("gamma_ratio", &gamma_ratio, py::arg("state"), py::arg("channel"), py::arg("previous"),
        py::arg("alpha"), py::arg("beta"));

  m.def(
      "run_qib",
      [](const CQState& s, double alpha, double beta, std::optional<double> gamma, int dim_t,
         bool classical, double tol, int max_iters, std::uint64_t seed) {
        const ObjectiveConfig c = make_config(alpha, beta, gamma, dim_t, classical, tol, max_iters, seed);
        RunResult r = [&] {
          py::gil_scoped_release release;
          return run_qib(s, c);
        }();
        return run_dict(r);
      },
      py::arg("state"), py::arg("alpha") = 1.0, py::arg("beta") = 1.0, py::arg("gamma") = py::none(),
      py::arg("dim_t") = 2, py::arg("classical") = false, py::arg("tol") = 1e-8,
      py::arg("max_iters") = 500, py::arg("seed") = 0);
  m.def(
      "run_qdib",
      [](const CQState& s, double beta, int dim_t, bool classical, double tol, int max_iters,
         std::uint64_t seed) {
        const ObjectiveConfig c = make_config(0.0, beta, std::nullopt, dim_t, classical, tol, max_iters, seed);
        RunResult r = [&] {
          py::gil_scoped_release release;
          return run_qdib(s, c);
        }();
        return run_dict(r);
      },
      py::arg("state"), py::arg("beta") = 1.0, py::arg("dim_t") = 2, py::arg("classical") = false,
      py::arg("tol") = 1e-8, py::arg("max_iters") = 500, py::arg("seed") = 0);

  m.def("quantum_bound", &quantum_bound, py::arg("n"), py::arg("beta"));
  m.def("classical_bound", &classical_bound, py::arg("d"), py::arg("n"), py::arg("beta"));
  m.def("copy_state", &copy_state, py::arg("d"), py::arg("k") = 1);
  m.def("fourier_feature_channel", &fourier_feature_channel, py::arg("d"), py::arg("n"), py::arg("k") = 1);
  m.def(
      "advantage_gap",
      [](int d, int n, double alpha, double beta) {
        const AdvantageReport r = advantage_gap(d, n, alpha, beta);
        py::dict out;
        out["quantum"] = r.quantum;
        out["classical"] = r.classical;
        out["gap"] = r.gap;
        out["achieved_quantum"] = r.achieved_quantum;
        return out;
      },
      py::arg("d"), py::arg("n"), py::arg("alpha") = 1.0, py::arg("beta") = 2.0);

  m.def("random_qubit_ensemble", &gen_random_qubit_ensemble, py::arg("size_x"), py::arg("seed"));
  m.def(
      "classify",
      [](std::uint64_t seed) {
        ClassifyConfig c;
        c.objective.seed = seed;
        const ClassifyResult r = [&] {
          py::gil_scoped_release release;
          return classify_pipeline(c);
        }();
        py::dict out;
        out["f_quantum"] = r.f_quantum;
        out["f_classical"] = r.f_classical;
        out["acc_quantum"] = r.acc_quantum;
        out["acc_classical"] = r.acc_classical;
        out["acc_linear_ref"] = r.acc_linear_ref;
        return out;
      },
      py::arg("seed") = 0);
}
