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

#include "kbody/io.hpp"

#include <fstream>

#include "kbody/errors.hpp"

namespace kbody {

using nlohmann::json;

HamiltonianSpec spec_from_json(const json& j) {
  try {
    HamiltonianSpec spec;
    spec.n_qubits = j.at("n").get<int>();
    for (const auto& [key, value] : j.at("couplings").items()) {
      spec.couplings[std::stoi(key)] = value.get<double>();
    }
    if (j.contains("axis")) spec.axis = j.at("axis").get<std::array<double, 3>>();
    const bool normalized = j.value("normalized", true);
    spec.normalization = normalized ? Normalization::OperatorNormHalfN : Normalization::None;
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed Hamiltonian spec: ") + e.what());
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw;
    throw DomainError(std::string("malformed Hamiltonian spec: ") + e.what());
  }
}

json spec_to_json(const HamiltonianSpec& spec) {
  json couplings = json::object();
  for (const auto& [order, weight] : spec.couplings) couplings[std::to_string(order)] = weight;
  return {{"n", spec.n_qubits},
          {"couplings", couplings},
          {"axis", spec.axis},
          {"normalized", spec.normalization == Normalization::OperatorNormHalfN}};
}

HamiltonianSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open spec file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DomainError("spec file " + path + " is not valid JSON: " + e.what());
  }
  return spec_from_json(j);
}

const char* to_string(OptimumMethod method) {
  switch (method) {
    case OptimumMethod::SymmetricScan: return "SymmetricScan";
    case OptimumMethod::MultiStartGradient: return "MultiStartGradient";
    case OptimumMethod::ClosedForm: return "ClosedForm";
    case OptimumMethod::StationaritySolve: return "StationaritySolve";
  }
  return "Unknown";
}

const char* to_string(Verdict verdict) {
  return verdict == Verdict::AtLeastThreeLocal ? "AtLeastThreeLocal" : "Inconclusive";
}

json to_json(const OptimumReport& report) {
  return {{"best_params", {{"probs", report.best_params.probs}}},
          {"best_qfi", report.best_qfi},
          {"method", to_string(report.method)},
          {"stationarity_residual", report.stationarity_residual}};
}

json to_json(const MonteCarloReport& report) {
  return {{"n_qubits", report.n_qubits},
          {"samples", report.samples},
          {"violations", report.violations},
          {"frequency", report.frequency},
          {"wilson_interval_95", {report.wilson_interval_95.first, report.wilson_interval_95.second}},
          {"seed", report.seed}};
}

json to_json(const WitnessReport& report) {
  return {{"n_qubits", report.n_qubits},
          {"bound", report.bound},
          {"observed_qfi", report.observed_qfi},
          {"verdict", to_string(report.verdict)}};
}

}  // namespace kbody
