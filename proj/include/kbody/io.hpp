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

#pragma once

#include <string>

#include "json.hpp"
#include "kbody/product_opt.hpp"
#include "kbody/spectrum.hpp"
#include "kbody/witness.hpp"

namespace kbody {

/// {"n": 3, "couplings": {"1": 1.0, "2": 1.0}, "axis": [0, 0, 1], "normalized": true}
/// `axis` defaults to z and `normalized` to true. Throws DomainError on malformed input.
HamiltonianSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const HamiltonianSpec& spec);
HamiltonianSpec load_spec_file(const std::string& path);

nlohmann::json to_json(const OptimumReport& report);
nlohmann::json to_json(const MonteCarloReport& report);
nlohmann::json to_json(const WitnessReport& report);

const char* to_string(OptimumMethod method);
const char* to_string(Verdict verdict);

}  // namespace kbody
