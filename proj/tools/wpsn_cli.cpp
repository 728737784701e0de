// SPDX-License-Identifier: Apache-2.0
//
// wpsn: sum-throughput optimization for IRS-assisted wireless powered sensor networks
// Copyright (C) 2026 The wpsn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line front end: solve, experiment, oracle-check, verify, list-experiments.
// Exit codes: 0 success, 1 config error, 2 non-convergence under --strict, 3 oracle budget
// exceeded, 4 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wpsn/harness.hpp"
#include "wpsn/validation.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kNotConverged = 2, kBudgetExceeded = 3, kVerifyFailed = 4 };

struct Options {
  std::string target;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::string out;
  std::vector<std::string> schemes;
  std::string log_base = "nats";
  bool strict = false;
  unsigned threads = 0;
};

void apply_solver_overrides(wpsn::RunConfig &config, const Options &o) {
  if (o.tol) config.solver.tol = *o.tol;
  if (o.max_iter) config.solver.max_iter = *o.max_iter;
  config.validate();
}

wpsn::RunConfig load_or_default(const std::string &path) {
  return path.empty() ? wpsn::RunConfig{} : wpsn::load_config(path);
}

int cmd_solve(const Options &o) {
  wpsn::RunConfig config = load_or_default(o.target);
  apply_solver_overrides(config, o);
  if (o.schemes.size() > 1) throw wpsn::ConfigError("solve takes a single --scheme");
  const wpsn::SchemeId scheme =
      o.schemes.empty() ? wpsn::SchemeId::Proposed : wpsn::parse_scheme(o.schemes.front());
  const wpsn::SingleRun run = wpsn::run_single(config, o.seed.value_or(0), scheme);
  std::cout << wpsn::solution_report(run, o.log_base == "bits");
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    const auto path = std::filesystem::path(o.out) / "solution.json";
    std::ofstream(path) << wpsn::solution_json(run).dump(2) << '\n';
    std::cout << "wrote " << path.string() << '\n';
  }
  const bool iterative = scheme == wpsn::SchemeId::Proposed || scheme == wpsn::SchemeId::Sdp;
  if (o.strict && iterative && !run.trace.converged) {
    std::cerr << "error: solver did not converge within " << config.solver.max_iter
              << " iterations\n";
    return kNotConverged;
  }
  return kOk;
}

int cmd_experiment(const Options &o) {
  std::optional<wpsn::ExperimentSpec> spec = wpsn::find_experiment(o.target);
  if (!spec) spec = wpsn::spec_from_config(wpsn::load_config(o.target));
  if (o.trials) spec->trials = *o.trials;
  if (o.seed) spec->seed0 = *o.seed;
  if (!o.schemes.empty()) {
    spec->schemes.clear();
    for (const auto &s : o.schemes) spec->schemes.push_back(wpsn::parse_scheme(s));
  }
  apply_solver_overrides(spec->base, o);
  const wpsn::ResultTable table = wpsn::run_experiment(*spec, o.threads);
  const auto paths = wpsn::write_results(table, o.out.empty() ? "results" : o.out);

  const bool bits = o.log_base == "bits";
  std::cout << spec->name << ": " << spec->description << " (" << spec->trials << " trials, "
            << (bits ? "bits" : "nats") << ")\n";
  for (const auto &row : table.rows)
    std::cout << "  " << row.sweep_axis << " = " << row.sweep_value << "  " << wpsn::scheme_name(row.scheme)
              << ": " << (bits ? wpsn::nats_to_bits(row.mean) : row.mean) << '\n';
  std::cout << "failures: " << table.failures << "\nwrote " << paths.csv.string() << " and "
            << paths.metadata.string() << '\n';
  return kOk;
}

int cmd_oracle_check(const Options &o) {
  wpsn::RunConfig config = load_or_default(o.target);
  apply_solver_overrides(config, o);
  try {
    const wpsn::OracleReport r = wpsn::oracle_check(config, o.seed.value_or(0));
    const bool bits = o.log_base == "bits";
    auto rate = [bits](double nats) { return bits ? wpsn::nats_to_bits(nats) : nats; };
    std::cout.precision(10);
    std::cout << "grid: " << r.grid_spec << '\n'
              << "oracle:          " << rate(r.oracle_value) << '\n'
              << "proposed:        " << rate(r.ao_value) << "  ratio " << r.ao_ratio << '\n'
              << "sdp emulation:   " << rate(r.sdp_value) << "  ratio " << r.sdp_ratio << '\n'
              << "quantization slack: " << rate(r.slack) << '\n'
              << (r.pass ? "PASS" : "FAIL") << '\n';
    return r.pass ? kOk : kVerifyFailed;
  } catch (const wpsn::OracleBudgetError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudgetExceeded;
  }
}

int cmd_verify(const Options &o) {
  std::ifstream in(o.target);
  if (!in) throw wpsn::ConfigError(o.target + ": cannot open file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw wpsn::ConfigError(o.target + ": " + e.what());
  }
  const wpsn::VerifyReport report = wpsn::verify_solution(doc);
  for (const auto &v : report.violations) std::cout << "violation: " << v << '\n';
  std::cout << (report.ok ? "OK" : "REJECTED") << '\n';
  return report.ok ? kOk : kVerifyFailed;
}

int cmd_list() {
  for (const auto &spec : wpsn::experiment_catalog()) {
    std::cout << spec.name << "\t" << spec.sweep_axis << " in {";
    for (std::size_t i = 0; i < spec.sweep_values.size(); ++i)
      std::cout << (i ? ", " : "") << spec.sweep_values[i];
    std::cout << "}\t" << spec.description << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Sum-throughput optimization for IRS-assisted wireless powered sensor networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wpsn::kVersion));
  Options o;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--seed", o.seed, "Channel seed (solve, oracle-check) or first trial seed");
    cmd->add_option("--tol", o.tol, "Relative convergence tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", o.max_iter, "Outer iteration cap")->check(CLI::PositiveNumber);
    cmd->add_option("--log-base", o.log_base, "Unit of printed rates")
        ->check(CLI::IsMember({"nats", "bits"}));
    cmd->add_option("--out", o.out, "Output directory");
  };

  CLI::App *solve = app.add_subcommand("solve", "Solve one channel draw");
  solve->add_option("config", o.target, "INI config (defaults when omitted)");
  add_common(solve);
  solve->add_option("--scheme", o.schemes, "Scheme: proposed, sdp, rps, fta, eta or noirs");
  solve->add_flag("--strict", o.strict, "Exit with code 2 when the solver does not converge");

  CLI::App *experiment = app.add_subcommand("experiment", "Run a Monte Carlo sweep");
  experiment->add_option("spec", o.target, "Catalog name or INI file with a [sweep] section")->required();
  add_common(experiment);
  experiment->add_option("--trials", o.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  experiment->add_option("--scheme", o.schemes, "Schemes to run")->delimiter(',');
  experiment->add_option("--threads", o.threads, "Worker threads (0: all cores)");

  CLI::App *oracle = app.add_subcommand("oracle-check", "Compare both solvers with the grid oracle");
  oracle->add_option("config", o.target, "INI config (defaults when omitted)");
  add_common(oracle);

  CLI::App *verify = app.add_subcommand("verify", "Check a solution.json against its channels");
  verify->add_option("solution", o.target, "solution.json written by solve --out")->required();

  app.add_subcommand("list-experiments", "List the experiment catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*experiment) return cmd_experiment(o);
    if (*oracle) return cmd_oracle_check(o);
    if (*verify) return cmd_verify(o);
    return cmd_list();
  } catch (const wpsn::ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument &e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigError;
  }
}
