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
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wpsn/channel.hpp"

namespace wpsn {

/// Malformed or out-of-range configuration. The message names the line or the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverSettings {
  double tol = 1e-4;
  int max_iter = 50;
  int mm_inner = 1;
  std::string init = "ones";  // ones | random
  std::uint64_t init_seed = 0;
  bool rps_randomize_wit = true;
  double fta_tau0 = 0.5;      // fraction of T
  int oracle_phase_levels = 64;
  int oracle_tau0_grid = 10000;
  std::uint64_t oracle_cap = 1u << 20;
};

struct SweepSettings {
  std::string name = "custom";
  std::string axis;
  std::vector<double> values;
  int trials = 100;
  std::uint64_t seed0 = 0;
  std::vector<std::string> schemes;  // empty: every scheme
};

/// User-facing configuration in the units of the config file (dBm, dB). Every field has a
/// default, so an empty file is valid.
struct RunConfig {
  int n_t = 6;
  int n_r = 30;
  int k = 5;
  double p0_dbm = 25.0;
  double sigma2_dbm = -90.0;
  double eta = 0.8;
  double t_total = 1.0;
  double rician_k1_db = 5.0;
  double pl_ref_db = -30.0;
  PathLossExponents eps;

  Vec3 ps{-10.0, 0.0, 0.0};
  Vec3 ap{10.0, 0.0, 0.0};
  Vec3 irs{-2.0, 6.0, 0.0};
  double spacing_l = 1.0;
  double device_x = 0.0;

  SolverSettings solver;
  std::optional<SweepSettings> sweep;

  SystemParams params() const;
  SystemGeometry geometry() const;
  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

/// Reads INI text with sections [params], [geometry], [solver], [sweep]. Unknown sections and
/// keys are errors. source names the input in diagnostics.
RunConfig parse_config(std::istream &in, const std::string &source = "<config>");
RunConfig load_config(const std::string &path);

/// Sets one sweepable quantity by name (p0_dbm, n_r, eps_ps_irs, irs_x, device_x, ...).
void apply_axis(RunConfig &config, const std::string &axis, double value);
const std::vector<std::string> &sweep_axes();

nlohmann::json to_json(const RunConfig &config);
/// Inverse of to_json; missing fields keep their defaults.
RunConfig config_from_json(const nlohmann::json &j);

}  // namespace wpsn
