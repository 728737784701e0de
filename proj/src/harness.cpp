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

#include "wpsn/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "wpsn/benchmarks.hpp"
#include "wpsn/validation.hpp"

namespace wpsn {

namespace {

const std::vector<std::pair<SchemeId, std::string>> &scheme_names() {
  static const std::vector<std::pair<SchemeId, std::string>> names = {
      {SchemeId::Proposed, "proposed"}, {SchemeId::Sdp, "sdp"}, {SchemeId::Rps, "rps"},
      {SchemeId::Fta, "fta"},           {SchemeId::Eta, "eta"}, {SchemeId::NoIrs, "noirs"}};
  return names;
}

}  // namespace

std::string scheme_name(SchemeId scheme) {
  for (const auto &[id, name] : scheme_names())
    if (id == scheme) return name;
  throw std::invalid_argument("scheme_name: unknown scheme");
}

SchemeId parse_scheme(const std::string &name) {
  for (const auto &[id, n] : scheme_names())
    if (n == name) return id;
  throw ConfigError("unknown scheme '" + name + "' (expected proposed, sdp, rps, fta, eta or noirs)");
}

const std::vector<SchemeId> &all_schemes() {
  static const std::vector<SchemeId> ids = {SchemeId::Proposed, SchemeId::Sdp, SchemeId::Rps,
                                            SchemeId::Fta,      SchemeId::Eta, SchemeId::NoIrs};
  return ids;
}

void ExperimentSpec::validate() const {
  if (name.empty()) throw ConfigError("experiment: name must not be empty");
  if (trials < 1) throw ConfigError("experiment " + name + ": trials must be >= 1");
  if (schemes.empty()) throw ConfigError("experiment " + name + ": no schemes selected");
  if (sweep_values.empty()) throw ConfigError("experiment " + name + ": no sweep values");
  base.validate();
  if (convergence_trace) {
    for (double v : sweep_values)
      if (v < 0.0 || v != std::round(v))
        throw ConfigError("experiment " + name + ": iteration indices must be integers >= 0");
    return;
  }
  for (double v : sweep_values) {
    RunConfig c = base;
    apply_axis(c, sweep_axis, v);
    try {
      c.validate();
    } catch (const ConfigError &e) {
      throw ConfigError("experiment " + name + ", " + sweep_axis + " = " + std::to_string(v) +
                        ": " + e.what());
    }
  }
}

const std::vector<ExperimentSpec> &experiment_catalog() {
  static const std::vector<ExperimentSpec> catalog = [] {
    const std::vector<SchemeId> every = all_schemes();
    const std::vector<double> exponents = {2.0, 2.2, 2.4, 2.6, 2.8, 3.0};
    auto make = [&](std::string name, std::string description, std::string axis,
                    std::vector<double> values) {
      ExperimentSpec s;
      s.name = std::move(name);
      s.description = std::move(description);
      s.sweep_axis = std::move(axis);
      s.sweep_values = std::move(values);
      s.schemes = every;
      return s;
    };
    std::vector<ExperimentSpec> out;

    ExperimentSpec fig3 = make("fig3", "sum throughput versus iteration", "iteration",
                               {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    fig3.trials = 1;
    fig3.schemes = {SchemeId::Proposed, SchemeId::Sdp};
    fig3.convergence_trace = true;
    out.push_back(fig3);

    out.push_back(make("fig4", "sum throughput versus PS transmit power (dBm)", "p0_dbm",
                       {10, 15, 20, 25, 30}));
    out.push_back(make("fig5", "sum throughput versus number of IRS elements", "n_r",
                       {10, 20, 30, 40, 50}));
    out.push_back(make("fig6", "sum throughput versus number of PS antennas", "n_t",
                       {2, 4, 6, 8, 10}));
    out.push_back(make("fig7", "sum throughput versus number of devices", "k",
                       {1, 2, 4, 6, 8, 10, 12}));
    out.push_back(make("fig8", "sum throughput versus PS-IRS path-loss exponent", "eps_ps_irs",
                       exponents));
    out.push_back(make("fig9", "sum throughput versus IRS-device path-loss exponent",
                       "eps_irs_device", exponents));
    out.push_back(make("fig10", "sum throughput versus IRS-AP path-loss exponent", "eps_irs_ap",
                       exponents));
    out.push_back(make("fig11", "sum throughput versus IRS x-coordinate", "irs_x",
                       {-10, -6, -2, 2, 6, 10}));

    ExperimentSpec fig12 = make("fig12",
                                "sum throughput versus device x-coordinate, PS at (-5,0,0) and "
                                "AP at (5,0,0)",
                                "device_x", {-4, -2, 0, 2, 4});
    fig12.base.ps = Vec3(-5.0, 0.0, 0.0);
    fig12.base.ap = Vec3(5.0, 0.0, 0.0);
    out.push_back(fig12);
    return out;
  }();
  return catalog;
}

std::optional<ExperimentSpec> find_experiment(const std::string &name) {
  for (const auto &spec : experiment_catalog())
    if (spec.name == name) return spec;
  return std::nullopt;
}

ExperimentSpec spec_from_config(const RunConfig &config) {
  if (!config.sweep) throw ConfigError("experiment config needs a [sweep] section");
  const SweepSettings &sw = *config.sweep;
  ExperimentSpec spec;
  spec.name = sw.name;
  spec.description = "custom sweep";
  spec.base = config;
  spec.base.sweep.reset();
  spec.trials = sw.trials;
  spec.seed0 = sw.seed0;
  if (sw.axis.empty() || sw.axis == "iteration") {
    spec.sweep_axis = "iteration";
    spec.convergence_trace = true;
    spec.sweep_values = sw.values.empty() ? std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9} : sw.values;
  } else {
    spec.sweep_axis = sw.axis;
    spec.sweep_values = sw.values;
  }
  if (sw.schemes.empty())
    spec.schemes = all_schemes();
  else
    for (const auto &s : sw.schemes) spec.schemes.push_back(parse_scheme(s));
  spec.validate();
  return spec;
}

namespace {

struct SchemeOutcome {
  Solution solution;
  AoTrace trace;
};

AoOptions ao_options(const RunConfig &config) {
  AoOptions o;
  o.tol = config.solver.tol;
  o.max_iter = config.solver.max_iter;
  o.mm_inner_iters = config.solver.mm_inner;
  return o;
}

WetPhaseConfig initial_phases(const RunConfig &config, std::uint64_t seed) {
  if (config.solver.init == "random")
    return WetPhaseConfig::random(config.n_r, config.solver.init_seed + seed);
  return WetPhaseConfig::all_ones(config.n_r);
}

SchemeOutcome solve_scheme(SchemeId scheme, const ChannelSet &channels, const RunConfig &config,
                           const SystemParams &params, std::uint64_t seed) {
  switch (scheme) {
    case SchemeId::Proposed: {
      AoResult r = ao_solve(channels, params, initial_phases(config, seed), ao_options(config));
      return {std::move(r.solution), std::move(r.trace)};
    }
    case SchemeId::Sdp: {
      SdpAoResult r = sdp_ao_emulate(channels, params, initial_phases(config, seed),
                                     config.solver.tol, config.solver.max_iter);
      return {std::move(r.solution), std::move(r.trace)};
    }
    default: {
      BenchmarkScheme b;
      b.kind = scheme == SchemeId::Rps   ? BenchmarkKind::Rps
               : scheme == SchemeId::Fta ? BenchmarkKind::Fta
               : scheme == SchemeId::Eta ? BenchmarkKind::Eta
                                         : BenchmarkKind::NoIrs;
      b.fta_tau0_fraction = config.solver.fta_tau0;
      b.rps_randomize_wit = config.solver.rps_randomize_wit;
      return {solve_benchmark(b, channels, params, seed), {}};
    }
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Runs body(i) for i in [0, n) on up to `threads` workers.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto &th : pool) th.join();
}

constexpr double kFailed = std::numeric_limits<double>::quiet_NaN();

}  // namespace

ResultTable run_experiment(const ExperimentSpec &spec, unsigned threads) {
  spec.validate();
  const std::size_t n_values = spec.sweep_values.size();
  const std::size_t n_schemes = spec.schemes.size();
  const auto trials = static_cast<std::size_t>(spec.trials);
  // In trace mode one trial yields every sweep value (iteration index) at once.
  const std::size_t n_configs = spec.convergence_trace ? 1 : n_values;

  std::vector<RunConfig> configs(n_configs, spec.base);
  if (!spec.convergence_trace)
    for (std::size_t v = 0; v < n_values; ++v) apply_axis(configs[v], spec.sweep_axis, spec.sweep_values[v]);

  // values[(config * trials + trial) * n_schemes + scheme] holds one entry per sweep value in
  // trace mode and a single entry otherwise.
  std::vector<std::vector<double>> values(n_configs * trials * n_schemes);
  parallel_for(n_configs * trials, threads, [&](std::size_t task) {
    const std::size_t c = task / trials;
    const std::uint64_t seed = spec.seed0 + task % trials;
    const RunConfig &config = configs[c];
    const SystemParams params = config.params();
    std::optional<ChannelSet> channels;
    try {
      channels = gen_channels(params, config.geometry(), seed);
    } catch (const std::exception &) {
    }
    for (std::size_t s = 0; s < n_schemes; ++s) {
      std::vector<double> &out = values[task * n_schemes + s];
      const std::size_t width = spec.convergence_trace ? n_values : 1;
      try {
        if (!channels) throw std::runtime_error("channel generation failed");
        const SchemeOutcome r = solve_scheme(spec.schemes[s], *channels, config, params, seed);
        if (!std::isfinite(r.solution.sum_rate)) throw std::runtime_error("non-finite sum rate");
        if (spec.convergence_trace) {
          const auto &t = r.trace.objective_per_iter;
          for (double idx : spec.sweep_values) {
            const auto i = static_cast<std::size_t>(idx);
            out.push_back(t.empty() ? r.solution.sum_rate : t[std::min(i, t.size() - 1)]);
          }
        } else {
          out.push_back(r.solution.sum_rate);
        }
      } catch (const std::exception &) {
        out.assign(width, kFailed);
      }
    }
  });

  ResultTable table;
  table.name = spec.name;
  for (std::size_t v = 0; v < n_values; ++v) {
    const std::size_t c = spec.convergence_trace ? 0 : v;
    const std::size_t slot = spec.convergence_trace ? v : 0;
    for (std::size_t s = 0; s < n_schemes; ++s) {
      double sum = 0.0;
      int ok = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const double x = values[(c * trials + t) * n_schemes + s][slot];
        if (std::isnan(x)) continue;
        sum += x;
        ++ok;
      }
      const double mean = ok > 0 ? sum / ok : kFailed;
      double sq = 0.0;
      for (std::size_t t = 0; t < trials; ++t) {
        const double x = values[(c * trials + t) * n_schemes + s][slot];
        if (!std::isnan(x)) sq += (x - mean) * (x - mean);
      }
      ResultRow row;
      row.sweep_axis = spec.sweep_axis;
      row.sweep_value = spec.sweep_values[v];
      row.scheme = spec.schemes[s];
      row.mean = mean;
      row.std_dev = ok > 1 ? std::sqrt(sq / (ok - 1)) : 0.0;
      row.trials = ok;
      row.failures = spec.trials - ok;
      row.seed0 = spec.seed0;
      table.rows.push_back(row);
    }
  }
  // A failed trial counts once per scheme and configuration, independent of trace width.
  for (std::size_t c = 0; c < n_configs; ++c)
    for (std::size_t t = 0; t < trials; ++t)
      for (std::size_t s = 0; s < n_schemes; ++s)
        if (std::isnan(values[(c * trials + t) * n_schemes + s].front())) ++table.failures;

  std::vector<std::string> names;
  for (SchemeId s : spec.schemes) names.push_back(scheme_name(s));
  table.metadata = {{"name", spec.name},
                    {"description", spec.description},
                    {"version", kVersion},
                    {"timestamp", utc_timestamp()},
                    {"sweep_axis", spec.sweep_axis},
                    {"sweep_values", spec.sweep_values},
                    {"trials", spec.trials},
                    {"seed0", spec.seed0},
                    {"schemes", names},
                    {"failures", table.failures},
                    {"rate_unit", "nats per unit bandwidth per frame; bits columns are nats / ln 2"},
                    {"config", to_json(spec.base)}};
  return table;
}

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// Locale-independent shortest round-trip formatting.
std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string result_csv(const ResultTable &table) {
  std::ostringstream out;
  out << "sweep_axis,sweep_value,scheme,mean_nats,std_nats,mean_bits,std_bits,trials,failures,seed0\r\n";
  for (const ResultRow &r : table.rows) {
    out << csv_field(r.sweep_axis) << ',' << csv_number(r.sweep_value) << ','
        << csv_field(scheme_name(r.scheme)) << ',' << csv_number(r.mean) << ','
        << csv_number(r.std_dev) << ',' << csv_number(nats_to_bits(r.mean)) << ','
        << csv_number(nats_to_bits(r.std_dev)) << ',' << r.trials << ',' << r.failures << ','
        << r.seed0 << "\r\n";
  }
  return out.str();
}

OutputPaths write_results(const ResultTable &table, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  OutputPaths paths{dir / (table.name + ".csv"), dir / (table.name + ".meta.json")};
  {
    std::ofstream csv(paths.csv, std::ios::binary);
    csv << result_csv(table);
    if (!csv) throw std::runtime_error("cannot write " + paths.csv.string());
  }
  {
    std::ofstream meta(paths.metadata);
    meta << table.metadata.dump(2) << '\n';
    if (!meta) throw std::runtime_error("cannot write " + paths.metadata.string());
  }
  return paths;
}

SingleRun run_single(const RunConfig &config, std::uint64_t seed, SchemeId scheme) {
  config.validate();
  const SystemParams params = config.params();
  const ChannelSet channels = gen_channels(params, config.geometry(), seed);
  SchemeOutcome r = solve_scheme(scheme, channels, config, params, seed);
  SingleRun run;
  run.config = config;
  run.seed = seed;
  run.scheme = scheme;
  const ChannelSet &effective = scheme == SchemeId::NoIrs ? without_irs(channels) : channels;
  run.gains = uplink_gains(effective, r.solution.wit, params);
  run.solution = std::move(r.solution);
  run.trace = std::move(r.trace);
  return run;
}

namespace {

nlohmann::json complex_json(const CVector &v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

CVector complex_from(const nlohmann::json &j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = cdouble(j.at(i).at(0).get<double>(), j.at(i).at(1).get<double>());
  return v;
}

}  // namespace

nlohmann::json solution_json(const SingleRun &run) {
  const Solution &s = run.solution;
  nlohmann::json theta_k = nlohmann::json::array();
  for (const auto &t : s.wit.theta_k) theta_k.push_back(complex_json(t));
  nlohmann::json xi = nlohmann::json::array();
  for (double x : run.gains.xi) xi.push_back(std::isfinite(x) ? nlohmann::json(x) : nlohmann::json());
  std::vector<double> tau(s.tau.tau.data(), s.tau.tau.data() + s.tau.tau.size());
  return {{"version", kVersion},
          {"seed", run.seed},
          {"scheme", scheme_name(run.scheme)},
          {"config", to_json(run.config)},
          {"w", complex_json(s.w.w)},
          {"w_power", s.w.power()},
          {"tau", tau},
          {"theta0", complex_json(s.wet.theta0)},
          {"theta_k", theta_k},
          {"per_device_rate_nats", s.per_device_rate},
          {"sum_rate_nats", s.sum_rate},
          {"sum_rate_bits", nats_to_bits(s.sum_rate)},
          {"xi", xi},
          {"trace_nats", run.trace.objective_per_iter},
          {"iterations", run.trace.iterations},
          {"converged", run.trace.converged}};
}

std::string solution_report(const SingleRun &run, bool bits) {
  const Solution &s = run.solution;
  const char *unit = bits ? "bits" : "nats";
  auto rate = [bits](double nats) { return bits ? nats_to_bits(nats) : nats; };
  std::ostringstream out;
  out.precision(10);
  out << "scheme: " << scheme_name(run.scheme) << "  seed: " << run.seed << '\n';
  out << "N_T = " << run.config.n_t << ", N_R = " << run.config.n_r << ", K = " << run.config.k
      << ", P0 = " << run.config.p0_dbm << " dBm\n";
  if (!run.trace.objective_per_iter.empty()) {
    out << "objective per iteration (" << unit << "):\n";
    for (std::size_t i = 0; i < run.trace.objective_per_iter.size(); ++i)
      out << "  " << i << ": " << rate(run.trace.objective_per_iter[i]) << '\n';
    out << "iterations: " << run.trace.iterations
        << (run.trace.converged ? " (converged)" : " (not converged)") << '\n';
  }
  out << "tau:";
  for (Eigen::Index i = 0; i < s.tau.tau.size(); ++i) out << ' ' << s.tau.tau(i);
  out << "\n||w||^2: " << s.w.power() << " W\n";
  out << "per-device rate (" << unit << "):";
  for (double r : s.per_device_rate) out << ' ' << rate(r);
  out << "\nxi:";
  for (double x : run.gains.xi) out << ' ' << x;
  out << "\nsum rate: " << rate(s.sum_rate) << ' ' << unit << '\n';
  return out.str();
}

VerifyReport verify_solution(const nlohmann::json &doc) {
  VerifyReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };
  try {
    const RunConfig config = config_from_json(doc.at("config"));
    const SystemParams params = config.params();
    const auto seed = doc.at("seed").get<std::uint64_t>();
    const SchemeId scheme = parse_scheme(doc.at("scheme").get<std::string>());
    ChannelSet channels = gen_channels(params, config.geometry(), seed);
    if (scheme == SchemeId::NoIrs) channels = without_irs(channels);

    Solution s;
    s.w.w = complex_from(doc.at("w"));
    const auto tau = doc.at("tau").get<std::vector<double>>();
    s.tau.tau = Eigen::Map<const RVector>(tau.data(), static_cast<Eigen::Index>(tau.size()));
    s.wet.theta0 = complex_from(doc.at("theta0"));
    for (const auto &t : doc.at("theta_k")) s.wit.theta_k.push_back(complex_from(t));
    const auto reported = doc.at("per_device_rate_nats").get<std::vector<double>>();
    const double reported_sum = doc.at("sum_rate_nats").get<double>();

    if (s.w.w.size() != params.n_t) fail("w has " + std::to_string(s.w.w.size()) + " entries, expected N_T");
    if (s.tau.tau.size() != params.k + 1) fail("tau must have K + 1 entries");
    if (s.wet.theta0.size() != params.n_r) fail("theta0 must have N_R entries");
    if (static_cast<int>(s.wit.theta_k.size()) != params.k) fail("theta_k must have K vectors");
    for (const auto &t : s.wit.theta_k)
      if (t.size() != params.n_r) fail("theta_k vectors must have N_R entries");
    if (static_cast<int>(reported.size()) != params.k) fail("per-device rates must have K entries");
    if (!report.ok) return report;

    if (s.w.power() > params.p0 * (1.0 + 1e-9))
      fail("beamformer power " + std::to_string(s.w.power()) + " exceeds P0");
    for (Eigen::Index i = 0; i < s.tau.tau.size(); ++i)
      if (s.tau.tau(i) < -1e-12) fail("tau[" + std::to_string(i) + "] is negative");
    if (std::abs(s.tau.total() - params.t_total) > 1e-9 * params.t_total)
      fail("time slots sum to " + std::to_string(s.tau.total()) + ", expected T");
    if (!s.wet.unit_modulus(1e-9)) fail("theta0 is not unit modulus");
    if (!s.wit.unit_modulus(1e-9)) fail("theta_k is not unit modulus");
    if (!report.ok) return report;

    const RateBreakdown rates = sum_throughput(channels, params, s.w, s.tau, s.wet, s.wit);
    auto close = [](double a, double b) {
      return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)) + 1e-300;
    };
    for (std::size_t k = 0; k < reported.size(); ++k)
      if (!close(rates.per_device[k], reported[k]))
        fail("device " + std::to_string(k) + " rate does not match the channels");
    if (!close(rates.sum, reported_sum)) fail("sum rate does not match the channels");
  } catch (const std::exception &e) {
    fail(std::string("malformed solution: ") + e.what());
  }
  return report;
}

OracleReport oracle_check(const RunConfig &config, std::uint64_t seed) {
  config.validate();
  const SystemParams params = config.params();
  const ChannelSet channels = gen_channels(params, config.geometry(), seed);
  const SolverSettings &sv = config.solver;
  OracleBudget budget;
  budget.max_points = sv.oracle_cap;
  const OracleResult oracle =
      brute_force_oracle(channels, params, sv.oracle_phase_levels, sv.oracle_tau0_grid, budget);

  const AoResult ao = ao_solve(channels, params, initial_phases(config, seed), ao_options(config));
  const SdpAoResult sdp =
      sdp_ao_emulate(channels, params, initial_phases(config, seed), sv.tol, sv.max_iter);

  OracleReport r;
  r.ao_value = ao.solution.sum_rate;
  r.sdp_value = sdp.solution.sum_rate;
  r.oracle_value = oracle.best_value;
  r.slack = std::max(
      quantization_slack(channels, params, ao.solution, sv.oracle_phase_levels, sv.oracle_tau0_grid),
      quantization_slack(channels, params, sdp.solution, sv.oracle_phase_levels, sv.oracle_tau0_grid));
  auto ratio = [&](double v) { return oracle.best_value > 0.0 ? v / oracle.best_value : 1.0; };
  r.ao_ratio = ratio(r.ao_value);
  r.sdp_ratio = ratio(r.sdp_value);
  r.pass = r.ao_ratio >= 0.99 && r.sdp_ratio >= 0.99 && r.ao_value >= r.oracle_value - r.slack &&
           r.sdp_value >= r.oracle_value - r.slack;
  r.grid_spec = oracle.grid_spec;
  return r;
}

}  // namespace wpsn
