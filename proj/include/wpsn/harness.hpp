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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wpsn/ao_solver.hpp"
#include "wpsn/config.hpp"

namespace wpsn {

inline constexpr const char *kVersion = "0.1.0";

enum class SchemeId { Proposed, Sdp, Rps, Fta, Eta, NoIrs };

/// CLI and CSV names: proposed, sdp, rps, fta, eta, noirs.
std::string scheme_name(SchemeId scheme);
/// Throws ConfigError for an unknown name.
SchemeId parse_scheme(const std::string &name);
const std::vector<SchemeId> &all_schemes();

struct ExperimentSpec {
  std::string name;
  std::string description;
  std::string sweep_axis;            // a config axis, or "iteration" for a convergence trace
  std::vector<double> sweep_values;
  int trials = 100;
  std::uint64_t seed0 = 0;           // trial t uses seed seed0 + t
  RunConfig base;
  std::vector<SchemeId> schemes;
  bool convergence_trace = false;    // rows are per-iteration trace values, padded with the last

  /// Throws ConfigError; also checks every swept configuration.
  void validate() const;
};

const std::vector<ExperimentSpec> &experiment_catalog();
std::optional<ExperimentSpec> find_experiment(const std::string &name);
/// Experiment from a config file with a [sweep] section.
ExperimentSpec spec_from_config(const RunConfig &config);

struct ResultRow {
  std::string sweep_axis;
  double sweep_value = 0.0;
  SchemeId scheme = SchemeId::Proposed;
  double mean = 0.0;     // nats
  double std_dev = 0.0;  // nats, sample standard deviation, 0 for a single trial
  int trials = 0;        // successful trials
  int failures = 0;
  std::uint64_t seed0 = 0;
};

struct ResultTable {
  std::string name;
  std::vector<ResultRow> rows;  // sweep-major, schemes in spec order
  int failures = 0;
  nlohmann::json metadata;      // config echo, version, timestamp, failure count
};

/// Monte Carlo sweep. Trials run on up to `threads` workers (0: hardware concurrency); results
/// are gathered by trial index, so the table does not depend on the thread count.
ResultTable run_experiment(const ExperimentSpec &spec, unsigned threads = 0);

/// Header plus one line per row, RFC 4180 quoting, '.' decimal separator.
std::string result_csv(const ResultTable &table);

struct OutputPaths {
  std::filesystem::path csv;
  std::filesystem::path metadata;
};

/// Writes <dir>/<name>.csv and <dir>/<name>.meta.json, creating dir if needed.
OutputPaths write_results(const ResultTable &table, const std::filesystem::path &dir);

struct SingleRun {
  RunConfig config;
  std::uint64_t seed = 0;
  SchemeId scheme = SchemeId::Proposed;
  Solution solution;
  AoTrace trace;  // empty for benchmark schemes
  UplinkGains gains;
};

/// One draw of the channels for (config, seed), solved with the given scheme.
SingleRun run_single(const RunConfig &config, std::uint64_t seed,
                     SchemeId scheme = SchemeId::Proposed);

/// Machine-readable solution with the config and seed needed to regenerate the channels.
nlohmann::json solution_json(const SingleRun &run);
/// Human-readable summary; rates in bits when bits is true, nats otherwise.
std::string solution_report(const SingleRun &run, bool bits);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Re-derives the channels from a solution_json document and checks feasibility and the
/// reported rates (1e-9 relative).
VerifyReport verify_solution(const nlohmann::json &document);

struct OracleReport {
  double ao_value = 0.0;
  double sdp_value = 0.0;
  double oracle_value = 0.0;
  double slack = 0.0;
  double ao_ratio = 0.0;
  double sdp_ratio = 0.0;
  bool pass = false;  // both ratios >= 0.99 and both values >= oracle - slack
  std::string grid_spec;
};

/// Throws OracleBudgetError when the instance exceeds the oracle budget.
OracleReport oracle_check(const RunConfig &config, std::uint64_t seed);

}  // namespace wpsn
