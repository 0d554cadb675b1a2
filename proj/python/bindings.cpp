// Copyright 2026 The kbody-qfi Authors
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kbody/errors.hpp"
#include "kbody/product_opt.hpp"
#include "kbody/qfi.hpp"
#include "kbody/spectrum.hpp"
#include "kbody/witness.hpp"

namespace py = pybind11;
using namespace kbody;

namespace {

HamiltonianSpec make_spec(int n, const std::map<int, double>& couplings,
                          const std::array<double, 3>& axis, bool normalized) {
  HamiltonianSpec spec;
  spec.n_qubits = n;
  spec.couplings = couplings;
  spec.axis = axis;
  spec.normalization = normalized ? Normalization::OperatorNormHalfN : Normalization::None;
  spec.validate();
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Product-state quantum Fisher information bounds for symmetric k-body Hamiltonians";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::enum_<Normalization>(m, "Normalization")
      .value("NONE", Normalization::None)
      .value("OPERATOR_NORM_HALF_N", Normalization::OperatorNormHalfN);

  py::class_<HamiltonianSpec>(m, "HamiltonianSpec")
      .def(py::init(&make_spec), py::arg("n"), py::arg("couplings"),
           py::arg("axis") = std::array<double, 3>{0.0, 0.0, 1.0}, py::arg("normalized") = true)
      .def_readonly("n_qubits", &HamiltonianSpec::n_qubits)
      .def_readonly("couplings", &HamiltonianSpec::couplings)
      .def_readonly("axis", &HamiltonianSpec::axis)
      .def_readonly("normalization", &HamiltonianSpec::normalization);

  py::class_<ExcitationSpectrum>(m, "ExcitationSpectrum")
      .def_readonly("n_qubits", &ExcitationSpectrum::n_qubits)
      .def_readonly("omegas", &ExcitationSpectrum::omegas)
      .def_readonly("degeneracies", &ExcitationSpectrum::degeneracies)
      .def_readonly("norm_constant", &ExcitationSpectrum::norm_constant);

  py::enum_<OptimumMethod>(m, "OptimumMethod")
      .value("SYMMETRIC_SCAN", OptimumMethod::SymmetricScan)
      .value("MULTI_START_GRADIENT", OptimumMethod::MultiStartGradient)
      .value("CLOSED_FORM", OptimumMethod::ClosedForm)
      .value("STATIONARITY_SOLVE", OptimumMethod::StationaritySolve);

  py::class_<OptimumReport>(m, "OptimumReport")
      .def_property_readonly("best_params",
                             [](const OptimumReport& r) { return r.best_params.probs; })
      .def_readonly("best_qfi", &OptimumReport::best_qfi)
      .def_readonly("method", &OptimumReport::method)
      .def_readonly("stationarity_residual", &OptimumReport::stationarity_residual);

  py::enum_<Verdict>(m, "Verdict")
      .value("AT_LEAST_THREE_LOCAL", Verdict::AtLeastThreeLocal)
      .value("INCONCLUSIVE", Verdict::Inconclusive);

  py::class_<WitnessReport>(m, "WitnessReport")
      .def_readonly("n_qubits", &WitnessReport::n_qubits)
      .def_readonly("bound", &WitnessReport::bound)
      .def_readonly("observed_qfi", &WitnessReport::observed_qfi)
      .def_readonly("verdict", &WitnessReport::verdict);

  py::class_<GammaScanRow>(m, "GammaScanRow")
      .def_readonly("gamma3", &GammaScanRow::gamma3)
      .def_readonly("max_product_qfi", &GammaScanRow::max_product_qfi)
      .def_readonly("bound", &GammaScanRow::bound)
      .def_readonly("violated", &GammaScanRow::violated);

  py::class_<MonteCarloReport>(m, "MonteCarloReport")
      .def_readonly("n_qubits", &MonteCarloReport::n_qubits)
      .def_readonly("samples", &MonteCarloReport::samples)
      .def_readonly("violations", &MonteCarloReport::violations)
      .def_readonly("frequency", &MonteCarloReport::frequency)
      .def_readonly("wilson_interval_95", &MonteCarloReport::wilson_interval_95)
      .def_readonly("seed", &MonteCarloReport::seed);

  m.def("omega_term", &omega_term, py::arg("n"), py::arg("k_prime"), py::arg("e"));
  m.def("degeneracy", &degeneracy, py::arg("n"), py::arg("e"));
  m.def("build_spectrum", &build_spectrum, py::arg("spec"));
  m.def("pure_order", &HamiltonianSpec::pure_order, py::arg("n"), py::arg("order"));
  m.def("up_to_order", &HamiltonianSpec::up_to_order, py::arg("n"), py::arg("max_order"));

  m.def("excitation_distribution",
        [](std::vector<double> probs) { return excitation_distribution({std::move(probs)}); },
        py::arg("probs"));
  m.def("variance_product",
        [](const ExcitationSpectrum& s, std::vector<double> probs) {
          return variance_product(s, {std::move(probs)});
        },
        py::arg("spectrum"), py::arg("probs"));
  m.def("stationarity_residuals",
        [](const ExcitationSpectrum& s, std::vector<double> probs) {
          return stationarity_residuals(s, {std::move(probs)});
        },
        py::arg("spectrum"), py::arg("probs"));
  m.def("product_state_qfi",
        [](const ExcitationSpectrum& s, const std::vector<double>& probs,
           const std::vector<double>& phases) {
          return qfi_pure(PureState::product(probs, phases), s).value;
        },
        py::arg("spectrum"), py::arg("probs"), py::arg("phases") = std::vector<double>{});

  m.def("optimize_symmetric", &optimize_symmetric, py::arg("spectrum"));
  m.def("optimize_full", &optimize_full, py::arg("spectrum"), py::arg("n_starts") = kDefaultStarts,
        py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("p_max_k2", &p_max_k2, py::arg("n"));
  m.def("f_max_k2", &f_max_k2, py::arg("n"));
  m.def("bound_b12", &bound_b12, py::arg("n"));

  m.def("detect", &detect, py::arg("observed_qfi"), py::arg("n"));
  m.def("ising_with_field", &ising_with_field, py::arg("n"), py::arg("gamma3"));
  m.def("gamma_scan",
        [](int n, const std::vector<double>& grid, int starts, std::uint64_t seed) {
          return gamma_scan(n, grid, {starts, seed});
        },
        py::arg("n"), py::arg("gamma3_grid"), py::arg("starts") = kDefaultStarts,
        py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("monte_carlo_violation",
        [](std::uint64_t samples, std::uint64_t seed, int n) {
          return monte_carlo_violation({n, samples, seed, std::nullopt});
        },
        py::arg("samples"), py::arg("seed"), py::arg("n") = 3,
        py::call_guard<py::gil_scoped_release>());
}
