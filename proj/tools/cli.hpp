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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kbody::cli {

enum class Command { Spectrum, Bound, Optimize, ScanK, ScanGamma, MonteCarlo, Detect };
enum class Format { Csv, Json };

inline constexpr int kUsageError = 2;
inline constexpr int kResourceError = 3;

/// `start:stop:points` with inclusive endpoints.
struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int points = 21;

  std::vector<double> values() const;
  static GridSpec parse(const std::string& text);
};

struct RunConfig {
  Command command = Command::Bound;
  std::optional<int> n;
  std::optional<std::pair<int, int>> n_range;
  std::map<int, double> couplings;
  char axis = 'z';
  bool normalized = true;
  std::optional<std::string> spec_file;
  int k_max = 5;
  GridSpec gamma_grid;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  int starts = 100;
  std::optional<double> observed_qfi;
  std::string out;  // empty: standard output
  std::optional<Format> format;
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = 0;  // meaningful when config is empty (help or usage error)
};

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes one command and writes its output (atomically when `out` is a path).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// "1:1,2:0.5" -> {1: 1, 2: 0.5}; a bare order means weight 1.
std::map<int, double> parse_orders(const std::string& text);

/// Renders a value with 12 significant digits.
std::string format_number(double value);

}  // namespace kbody::cli
