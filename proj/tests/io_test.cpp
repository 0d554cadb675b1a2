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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "kbody/errors.hpp"
#include "kbody/io.hpp"

using namespace kbody;
using nlohmann::json;

TEST_CASE("spec JSON round trip") {
  HamiltonianSpec spec;
  spec.n_qubits = 5;
  spec.couplings = {{1, 0.5}, {3, 2.0}};
  spec.axis = {0.0, 1.0, 0.0};
  spec.normalization = Normalization::None;
  const auto back = spec_from_json(spec_to_json(spec));
  CHECK(back.n_qubits == 5);
  CHECK(back.couplings == spec.couplings);
  CHECK(back.axis == spec.axis);
  CHECK(back.normalization == Normalization::None);
}

TEST_CASE("spec JSON defaults and errors") {
  const auto spec = spec_from_json(json::parse(R"({"n": 4, "couplings": {"2": 1}})"));
  CHECK(spec.axis == std::array<double, 3>{0.0, 0.0, 1.0});
  CHECK(spec.normalization == Normalization::OperatorNormHalfN);

  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"couplings": {"2": 1}})")), DomainError);
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"n": 4, "couplings": {"x": 1}})")), DomainError);
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"n": 4, "couplings": {"7": 1}})")), DomainError);
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"n": 4, "couplings": {"2": 0}})")), DomainError);
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"n": 4, "couplings": {"2": 1}, "axis": [1, 1, 0]})")),
                  DomainError);
}

TEST_CASE("spec files") {
  const auto path = std::filesystem::temp_directory_path() / "kbody_io_test_spec.json";
  {
    std::ofstream out(path);
    out << R"({"n": 3, "couplings": {"1": 1, "2": 1}})";
  }
  CHECK(load_spec_file(path.string()).couplings.size() == 2);
  {
    std::ofstream out(path);
    out << "{not json";
  }
  CHECK_THROWS_AS(load_spec_file(path.string()), DomainError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_spec_file(path.string()), DomainError);
}

TEST_CASE("report serialization") {
  OptimumReport r;
  r.best_params.probs = {0.25, 0.75};
  r.best_qfi = 4.8;
  r.method = OptimumMethod::ClosedForm;
  const auto j = to_json(r);
  CHECK(j["method"] == "ClosedForm");
  CHECK(j["best_qfi"] == 4.8);
  CHECK(j["best_params"]["probs"].size() == 2);

  const auto w = to_json(detect(5.0, 4));
  CHECK(w["verdict"] == "AtLeastThreeLocal");

  MonteCarloReport m;
  m.samples = 10;
  m.violations = 1;
  m.wilson_interval_95 = {0.01, 0.4};
  const auto mj = to_json(m);
  CHECK(mj["wilson_interval_95"].size() == 2);
  CHECK(mj["samples"] == 10);
}
