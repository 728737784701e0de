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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wpsn/benchmarks.hpp"
#include "wpsn/harness.hpp"
#include "wpsn/numerics.hpp"
#include "wpsn/validation.hpp"

using namespace wpsn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Traces collected by criteria 1-3 for the monotonicity criterion.
std::vector<AoTrace> g_traces;
// Inner rank-one chains collected by criterion 2.
std::vector<ScaChainLog> g_chains;

Verdict closed_form_vs_oracle() {
  const auto start = Clock::now();
  SystemParams p;
  p.n_t = 2;
  p.n_r = 2;
  p.k = 2;
  const SystemGeometry g = SystemGeometry::standard(p.k);
  int close = 0;
  int below = 0;
  double worst = 1e300;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ChannelSet ch = gen_channels(p, g, seed);
    const AoResult ao = ao_solve(ch, p, WetPhaseConfig::all_ones(p.n_r));
    g_traces.push_back(ao.trace);
    const OracleResult o = brute_force_oracle(ch, p, 64, 10000);
    const double slack = quantization_slack(ch, p, ao.solution, 64, 10000);
    const double ratio = ao.solution.sum_rate / o.best_value;
    worst = std::min(worst, ratio);
    if (ratio >= 0.99) ++close;
    if (ao.solution.sum_rate < o.best_value - slack) ++below;
  }
  const double elapsed = seconds_since(start);
  return {close >= 95 && below == 0 && elapsed <= 120.0,
          fmt("%d/100 seeds at >= 0.99 x oracle (worst ratio %.6f), %d below oracle - slack, %.1f s",
              close, worst, below, elapsed)};
}

Verdict scheme_agreement() {
  const auto start = Clock::now();
  SystemParams p;
  const SystemGeometry g = SystemGeometry::standard(p.k);
  int agree = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ChannelSet ch = gen_channels(p, g, seed);
    const AoResult ao = ao_solve(ch, p, WetPhaseConfig::all_ones(p.n_r));
    const SdpAoResult sdp = sdp_ao_emulate(ch, p, WetPhaseConfig::all_ones(p.n_r));
    g_traces.push_back(ao.trace);
    g_traces.push_back(sdp.trace);
    g_chains.push_back(sdp.chain);
    const double rel = std::abs(sdp.solution.sum_rate - ao.solution.sum_rate) / ao.solution.sum_rate;
    worst = std::max(worst, rel);
    if (rel <= 0.01) ++agree;
  }
  const double elapsed = seconds_since(start);
  return {agree == 50 && elapsed <= 120.0,
          fmt("%d/50 seeds within 1%% (worst %.3g relative), %.1f s", agree, worst, elapsed)};
}

Verdict convergence_speed() {
  SystemParams p;
  const SystemGeometry g = SystemGeometry::standard(p.k);
  int fast = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const AoResult ao = ao_solve(gen_channels(p, g, seed), p, WetPhaseConfig::all_ones(p.n_r));
    g_traces.push_back(ao.trace);
    const auto &t = ao.trace.objective_per_iter;
    for (std::size_t m = 1; m < t.size() && m <= 10; ++m)
      if (std::abs(t[m] - t[m - 1]) < 1e-3 * std::abs(t[m])) {
        ++fast;
        break;
      }
  }
  return {fast >= 90, fmt("%d/100 seeds reach relative change < 1e-3 within 10 iterations", fast)};
}

Verdict monotone_ao() {
  int violations = 0;
  for (const AoTrace &t : g_traces)
    if (!t.non_decreasing(1e-9)) ++violations;
  return {violations == 0 && !g_traces.empty(),
          fmt("%d violations over %zu traces", violations, g_traces.size())};
}

Verdict wit_tightness() {
  SystemParams p;
  std::mt19937_64 rng(2024);
  double worst_bound = 0.0;
  double worst_identity = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    p.n_r = 1 + draw % 64;
    p.k = 1 + draw % 5;
    const ChannelSet ch = gen_channels(p, SystemGeometry::standard(p.k), rng());
    const WitPhaseConfig wit = optimal_wit_phases(ch);
    const UplinkGains gains = uplink_gains(ch, wit, p);
    for (int k = 0; k < p.k; ++k) {
      const auto i = static_cast<std::size_t>(k);
      const double bound = uplink_cascade(ch, k).cwiseAbs().sum() + std::abs(ch.h_d[i]);
      const double achieved = std::abs(uplink_coefficient(ch, wit.theta_k[i], k));
      worst_bound = std::max(worst_bound, std::abs(achieved - bound) / bound);
      const double identity = (1.0 + gains.xi[i]) * (1.0 + gains.xi[i]) * std::norm(ch.h_d[i]);
      worst_identity = std::max(worst_identity, std::abs(gains.t[i] - identity) / gains.t[i]);
    }
  }
  return {worst_bound <= 1e-10 && worst_identity <= 1e-9,
          fmt("max relative gap to the modulus bound %.3g, to (1+xi)^2 |h_d|^2 %.3g", worst_bound,
              worst_identity)};
}

Verdict tau0_closed_form() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> p0_dbm(0.0, 40.0);
  std::uniform_real_distribution<double> log_rho(-3.0, 3.0);
  std::uniform_real_distribution<double> frame(0.5, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double p0 = dbm_to_watts(p0_dbm(rng));
    const double rho = std::pow(10.0, log_rho(rng));
    const double t = frame(rng);
    worst = std::max(worst, std::abs(optimal_tau0(rho, p0, t) - golden_tau0(rho, p0, t, 1e-10)) / t);
  }
  const double limit_one = std::abs(optimal_tau0(1.0, 1.0, 1.0) - (1.0 - 1.0 / kE));
  const double limit_zero = std::abs(optimal_tau0(0.0, 1.0, 1.0));
  return {worst <= 1e-4 && limit_one <= 1e-9 && limit_zero <= 1e-9,
          fmt("max |closed form - golden| = %.3g T, c = 0 error %.3g, c = -1 error %.3g", worst,
              limit_one, limit_zero)};
}

Verdict lambert_round_trip() {
  const double lo = -1.0 / kE + 1e-6;
  double worst = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    // Half the points linear on [lo, 1], half log-spaced on [1, 1e3].
    const double y = i < n / 2 ? lo + (1.0 - lo) * i / (n / 2 - 1)
                               : std::pow(10.0, 3.0 * (i - n / 2) / (n / 2 - 1));
    const double w = numerics::lambert_w0(y);
    worst = std::max(worst, std::abs(w * std::exp(w) - y));
  }
  return {worst <= 1e-10, fmt("max |W(y) exp(W(y)) - y| = %.3g over %d points", worst, n)};
}

Verdict benchmark_dominance() {
  SystemParams p;
  const SystemGeometry g = SystemGeometry::standard(p.k);
  int violations = 0;
  int draws = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ChannelSet ch = gen_channels(p, g, seed);
    for (BenchmarkKind kind : {BenchmarkKind::Rps, BenchmarkKind::Fta, BenchmarkKind::Eta, BenchmarkKind::NoIrs}) {
      BenchmarkScheme scheme;
      scheme.kind = kind;
      const Solution b = solve_benchmark(scheme, ch, p, seed);
      const AoResult ao = ao_solve(ch, p, b.wet);
      ++draws;
      if (ao.solution.sum_rate < b.sum_rate - 1e-9) ++violations;
    }
  }

  int invariance = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    BenchmarkScheme none;
    none.kind = BenchmarkKind::NoIrs;
    double first = -1.0;
    for (int n_r : {10, 30, 50}) {
      SystemParams q = p;
      q.n_r = n_r;
      const double v = solve_benchmark(none, gen_channels(q, g, seed), q, seed).sum_rate;
      if (first < 0.0) first = v;
      if (std::abs(v - first) > 1e-12 * first) ++invariance;
    }
  }

  auto means = [](const std::string &axis, std::vector<double> values) {
    ExperimentSpec spec;
    spec.name = "trend_" + axis;
    spec.sweep_axis = axis;
    spec.sweep_values = std::move(values);
    spec.trials = 100;
    spec.schemes = {SchemeId::Proposed};
    std::vector<double> out;
    for (const ResultRow &r : run_experiment(spec).rows) out.push_back(r.mean);
    return out;
  };
  auto increasing = [](const std::vector<double> &v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] > v[i - 1])) return false;
    return true;
  };
  const auto by_power = means("p0_dbm", {15, 20, 25, 30});
  const auto by_size = means("n_r", {10, 30, 50});
  return {violations == 0 && invariance == 0 && increasing(by_power) && increasing(by_size),
          fmt("%d/%d dominance violations, %d no-IRS invariance violations, mean vs P0 "
              "%.4f %.4f %.4f %.4f, vs N_R %.4f %.4f %.4f nats",
              violations, draws, invariance, by_power[0], by_power[1], by_power[2], by_power[3],
              by_size[0], by_size[1], by_size[2])};
}

Verdict rank_one_chain() {
  double worst_ratio = 0.0;
  int descents = 0;
  std::size_t steps = 0;
  for (const ScaChainLog &log : g_chains) {
    for (double r : log.rank_ratio) worst_ratio = std::max(worst_ratio, r);
    steps += log.rank_ratio.size();
    for (std::size_t c = 0; c < log.chain_start.size(); ++c) {
      const std::size_t end = c + 1 < log.chain_start.size() ? log.chain_start[c + 1] : log.objective.size();
      for (std::size_t i = log.chain_start[c] + 1; i < end; ++i)
        if (log.objective[i] < log.objective[i - 1] - 1e-9) ++descents;
    }
  }
  return {steps > 0 && worst_ratio <= 1e-9 && descents == 0,
          fmt("%zu steps, max lambda2/lambda1 = %.3g, %d objective decreases", steps, worst_ratio, descents)};
}

Verdict randomization_recovery() {
  std::mt19937_64 rng(99);
  double worst = 0.0;
  auto objective = [](const WetPhaseConfig &w) { return w.theta0.real().sum(); };
  for (int i = 0; i < 100; ++i) {
    const int n_r = 1 + static_cast<int>(rng() % 64);
    const WetPhaseConfig truth = WetPhaseConfig::random(n_r, rng());
    const CVector x = lift_wet_phases(truth);
    const RandomizationResult r = gaussian_randomization(PsdMatrix(x * x.adjoint()), 10, rng(), objective);
    worst = std::max(worst, (r.phases.theta0 - truth.theta0).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-9, fmt("max phase error %.3g over 100 rank-one inputs", worst)};
}

Verdict determinism() {
  int mismatches = 0;
  for (const char *name : {"fig3", "fig4", "fig12"}) {
    ExperimentSpec spec = *find_experiment(name);
    spec.trials = std::min(spec.trials, 3);
    const std::string a = result_csv(run_experiment(spec, 1));
    const std::string b = result_csv(run_experiment(spec, 4));
    if (a != b) ++mismatches;
  }
  return {mismatches == 0, fmt("%d of 3 experiments differ between re-runs", mismatches)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"closed-form solution vs grid oracle", closed_form_vs_oracle},
      {"SDP emulation vs low-complexity scheme", scheme_agreement},
      {"convergence speed", convergence_speed},
      {"monotone alternating optimization", monotone_ao},
      {"uplink phase alignment tightness", wit_tightness},
      {"closed-form harvesting time vs golden search", tau0_closed_form},
      {"Lambert W round trip", lambert_round_trip},
      {"benchmark dominance and trends", benchmark_dominance},
      {"rank-one linearized chain", rank_one_chain},
      {"Gaussian randomization on rank-one input", randomization_recovery},
      {"deterministic experiment output", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s  %2zu  %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
