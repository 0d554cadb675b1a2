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

#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kbody/errors.hpp"
#include "kbody/io.hpp"
#include "kbody/product_opt.hpp"
#include "kbody/spectrum.hpp"
#include "kbody/witness.hpp"

namespace kbody::cli {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    const int lo = std::stoi(text.substr(0, colon));
    const int hi = std::stoi(text.substr(colon + 1));
    if (lo > hi) throw UsageError("n-range start exceeds stop");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse n-range '" + text + "'");
  }
}

std::array<double, 3> axis_vector(char axis) {
  switch (axis) {
    case 'x': return {1.0, 0.0, 0.0};
    case 'y': return {0.0, 1.0, 0.0};
    default: return {0.0, 0.0, 1.0};
  }
}

int require_n(const RunConfig& c) {
  if (!c.n) throw UsageError("--n is required");
  return *c.n;
}

std::uint64_t require_seed(const RunConfig& c) {
  if (!c.seed) throw UsageError("this command is randomized and requires --seed");
  return *c.seed;
}

std::vector<int> n_values(const RunConfig& c) {
  if (c.n_range) {
    std::vector<int> ns;
    for (int n = c.n_range->first; n <= c.n_range->second; ++n) ns.push_back(n);
    return ns;
  }
  return {require_n(c)};
}

HamiltonianSpec spec_from_config(const RunConfig& c) {
  if (c.spec_file) return load_spec_file(*c.spec_file);
  HamiltonianSpec spec;
  spec.n_qubits = require_n(c);
  if (c.couplings.empty()) throw UsageError("--orders or --spec-file is required");
  spec.couplings = c.couplings;
  spec.axis = axis_vector(c.axis);
  spec.normalization = c.normalized ? Normalization::OperatorNormHalfN : Normalization::None;
  spec.validate();
  return spec;
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<json> row) { rows_.push_back(std::move(row)); }

  std::string render(Format format) const {
    std::ostringstream os;
    if (format == Format::Json) {
      json arr = json::array();
      for (const auto& row : rows_) {
        json obj = json::object();
        for (std::size_t i = 0; i < header_.size(); ++i) obj[header_[i]] = row[i];
        arr.push_back(obj);
      }
      os << arr.dump(2) << '\n';
      return os.str();
    }
    for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
    os << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "");
        const auto& cell = row[i];
        if (cell.is_number_float()) os << format_number(cell.get<double>());
        else if (cell.is_string()) os << cell.get<std::string>();
        else os << cell.dump();
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<json>> rows_;
};

std::string render_report(const json& report, Format format) {
  if (format == Format::Json) return report.dump(2) + "\n";
  std::ostringstream header, values;
  bool first = true;
  for (const auto& [key, value] : report.items()) {
    header << (first ? "" : ",") << key;
    values << (first ? "" : ",");
    if (value.is_number_float()) {
      values << format_number(value.get<double>());
    } else if (value.is_string()) {
      values << value.get<std::string>();
    } else if (value.is_array() || value.is_object()) {
      // nested values flatten to a ';'-joined list
      const json& flat = value.is_object() ? value.begin().value() : value;
      bool inner_first = true;
      for (const auto& v : flat) {
        values << (inner_first ? "" : ";")
               << (v.is_number_float() ? format_number(v.get<double>()) : v.dump());
        inner_first = false;
      }
    } else {
      values << value.dump();
    }
    first = false;
  }
  return header.str() + "\n" + values.str() + "\n";
}

void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
  if (c.out.empty()) {
    out << content;
    return;
  }
  const std::filesystem::path target(c.out);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot write " + temp.string());
    file << content;
    if (!file.flush()) throw UsageError("failed writing " + temp.string());
  }
  std::filesystem::rename(temp, target);
}

std::string execute(const RunConfig& c) {
  switch (c.command) {
    case Command::Spectrum: {
      const auto spectrum = build_spectrum(spec_from_config(c));
      const Format format = c.format.value_or(Format::Csv);
      if (format == Format::Json) {
        return json{{"n_qubits", spectrum.n_qubits},
                    {"omegas", spectrum.omegas},
                    {"degeneracies", spectrum.degeneracies},
                    {"norm_constant", spectrum.norm_constant}}
                   .dump(2) + "\n";
      }
      Table t({"e", "omega", "degeneracy"});
      for (int e = 0; e <= spectrum.n_qubits; ++e) {
        t.add({e, spectrum.omegas[e], spectrum.degeneracies[e]});
      }
      return t.render(format);
    }
    case Command::Bound: {
      Table t({"N", "B12"});
      for (int n : n_values(c)) t.add({n, bound_b12(n)});
      return t.render(c.format.value_or(Format::Csv));
    }
    case Command::Optimize: {
      const auto spectrum = build_spectrum(spec_from_config(c));
      const auto report = optimize_full(spectrum, c.starts, require_seed(c));
      return render_report(to_json(report), c.format.value_or(Format::Json));
    }
    case Command::ScanK: {
      const std::uint64_t seed = require_seed(c);
      Table t({"N", "k", "max_qfi"});
      for (int n : n_values(c)) {
        for (int k = 1; k <= std::min(c.k_max, n); ++k) {
          const auto spectrum = build_spectrum(HamiltonianSpec::pure_order(n, k));
          t.add({n, k, optimize_full(spectrum, c.starts, seed).best_qfi});
        }
      }
      return t.render(c.format.value_or(Format::Csv));
    }
    case Command::ScanGamma: {
      const auto grid = c.gamma_grid.values();
      const auto rows = gamma_scan(require_n(c), grid, {c.starts, require_seed(c)});
      Table t({"gamma3", "max_qfi", "bound", "violated"});
      for (const auto& r : rows) t.add({r.gamma3, r.max_product_qfi, r.bound, r.violated});
      return t.render(c.format.value_or(Format::Csv));
    }
    case Command::MonteCarlo: {
      MonteCarloConfig mc;
      mc.n_qubits = c.n.value_or(3);
      mc.samples = c.samples;
      mc.seed = require_seed(c);
      if (mc.samples < 1) throw UsageError("--samples must be >= 1");
      return render_report(to_json(monte_carlo_violation(mc)), c.format.value_or(Format::Json));
    }
    case Command::Detect: {
      if (!c.observed_qfi) throw UsageError("--qfi is required");
      return render_report(to_json(detect(*c.observed_qfi, require_n(c))),
                           c.format.value_or(Format::Json));
    }
  }
  throw UsageError("unknown command");
}

}  // namespace

std::vector<double> GridSpec::values() const {
  if (points < 1) throw UsageError("grid needs at least one point");
  if (points == 1) return {start};
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) {
    v[i] = (i == points - 1) ? stop : start + (stop - start) * i / (points - 1);
  }
  return v;
}

GridSpec GridSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw UsageError("grid must look like start:stop:points");
  try {
    GridSpec g{std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2])};
    if (g.points < 1) throw UsageError("grid needs at least one point");
    if (g.stop < g.start) throw UsageError("grid stop must not precede start");
    return g;
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse grid '" + text + "'");
  }
}

std::map<int, double> parse_orders(const std::string& text) {
  std::map<int, double> orders;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    try {
      const auto colon = item.find(':');
      const int k = std::stoi(item.substr(0, colon));
      const double w = colon == std::string::npos ? 1.0 : std::stod(item.substr(colon + 1));
      orders[k] = w;
    } catch (const std::logic_error&) {
      throw UsageError("cannot parse order '" + item + "'");
    }
  }
  if (orders.empty()) throw UsageError("--orders is empty");
  return orders;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Product-state QFI bounds and many-body interaction witnesses"};
  app.require_subcommand(1);

  RunConfig config;
  std::string orders, n_range, grid, format, axis = "z";
  std::optional<std::uint64_t> seed;
  bool raw = false;

  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", config.n, "Qubit count")->check(CLI::Range(1, 64)); };
  auto add_range = [&](CLI::App* sub) { sub->add_option("--n-range", n_range, "Inclusive qubit range lo:hi"); };
  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--orders", orders, "Comma list of order:weight, e.g. 1:1,2:1");
    sub->add_option("--axis", axis, "Local axis")->check(CLI::IsMember({"x", "y", "z"}));
    sub->add_option("--spec-file", config.spec_file, "Hamiltonian spec JSON file")->check(CLI::ExistingFile);
    sub->add_flag("--raw", raw, "Skip the operator-norm normalization");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", config.out, "Output file (default: stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Seed for random starts");
    sub->add_option("--starts", config.starts, "Random multi-start count")->check(CLI::NonNegativeNumber);
  };

  auto* spectrum = app.add_subcommand("spectrum", "Excitation-sector spectrum");
  add_n(spectrum), add_spec(spectrum), add_common(spectrum);

  auto* bound = app.add_subcommand("bound", "B_1+2 product-state bound per qubit count");
  add_n(bound), add_range(bound), add_common(bound);

  auto* optimize = app.add_subcommand("optimize", "Maximal product-state QFI of a Hamiltonian");
  add_n(optimize), add_spec(optimize), add_search(optimize), add_common(optimize);

  auto* scan_k = app.add_subcommand("scan-k", "Maximal product-state QFI per pure interaction order");
  add_n(scan_k), add_range(scan_k), add_search(scan_k), add_common(scan_k);
  scan_k->add_option("--k-max", config.k_max, "Largest interaction order")->check(CLI::PositiveNumber);

  auto* scan_gamma = app.add_subcommand("scan-gamma", "Ising model with a three-body admixture");
  add_n(scan_gamma), add_search(scan_gamma), add_common(scan_gamma);
  scan_gamma->add_option("--gamma-grid", grid, "start:stop:points, endpoints inclusive");

  auto* montecarlo = app.add_subcommand("montecarlo", "Violation frequency over random product states");
  add_n(montecarlo), add_common(montecarlo);
  montecarlo->add_option("--samples", config.samples, "Sample count")->required();
  montecarlo->add_option("--seed", seed, "Seed");

  auto* detect_cmd = app.add_subcommand("detect", "Three-body verdict for an observed QFI");
  add_n(detect_cmd), add_common(detect_cmd);
  detect_cmd->add_option("--qfi", config.observed_qfi, "Observed QFI")->required();

  try {
    app.parse(argc, argv);
    const auto* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    if (name == "spectrum") config.command = Command::Spectrum;
    else if (name == "bound") config.command = Command::Bound;
    else if (name == "optimize") config.command = Command::Optimize;
    else if (name == "scan-k") config.command = Command::ScanK;
    else if (name == "scan-gamma") config.command = Command::ScanGamma;
    else if (name == "montecarlo") config.command = Command::MonteCarlo;
    else config.command = Command::Detect;

    if (!orders.empty()) config.couplings = parse_orders(orders);
    if (!n_range.empty()) config.n_range = parse_range(n_range);
    if (!grid.empty()) config.gamma_grid = GridSpec::parse(grid);
    if (!format.empty()) config.format = format == "json" ? Format::Json : Format::Csv;
    config.axis = axis.front();
    config.normalized = !raw;
    config.seed = seed;
  } catch (const CLI::CallForHelp& e) {
    return {std::nullopt, app.exit(e, out, err)};
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return {std::nullopt, kUsageError};
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return {std::nullopt, kUsageError};
  }
  return {config, 0};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    emit(config, execute(config), out);
    return 0;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResourceError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::logic_error& e) {  // DomainError and friends
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace kbody::cli
