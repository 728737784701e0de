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
#include <optional>
#include <vector>

#include "wpsn/channel.hpp"
#include "wpsn/wit_align.hpp"

namespace wpsn {

/// Diagonal of the energy-reflection matrix Theta_0.
struct WetPhaseConfig {
  CVector theta0;

  static WetPhaseConfig all_ones(int n_r);
  /// Phases i.i.d. uniform on [0, 2*pi).
  static WetPhaseConfig random(int n_r, std::uint64_t seed);
  bool unit_modulus(double tol = 1e-12) const;
};

/// [tau_0, tau_1, ..., tau_K] in seconds.
struct TimeAllocation {
  RVector tau;

  double tau0() const { return tau(0); }
  double total() const { return tau.sum(); }
};

struct Beamformer {
  CVector w;

  double power() const { return w.squaredNorm(); }
};

/// Rates are in nats per unit bandwidth over one frame.
struct Solution {
  Beamformer w;
  TimeAllocation tau;
  WetPhaseConfig wet;
  WitPhaseConfig wit;
  std::vector<double> per_device_rate;
  double sum_rate = 0.0;
};

/// objective_per_iter[0] is the sum rate at the initial phases with optimal beamformer and
/// times; entry m >= 1 is the sum rate after the m-th phase update.
struct AoTrace {
  std::vector<double> objective_per_iter;
  int iterations = 0;
  bool converged = false;

  /// True when no entry drops below its predecessor by more than slack.
  bool non_decreasing(double slack = 1e-9) const;
};

struct AoOptions {
  double tol = 1e-4;        // relative change of the sum rate
  int max_iter = 50;
  int mm_inner_iters = 1;   // surrogate minimizations per outer iteration
  std::optional<double> pinned_tau0;  // fixes tau_0 instead of the Lambert-W optimum
};

struct AoResult {
  Solution solution;
  AoTrace trace;
  UplinkGains gains;
  double rho_max = 0.0;  // of G~ G~^H at the final beamforming step
};

inline double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

/// Effective downlink channels g~_k with g~_k^H = g_r,k^H Theta_0 G_0 + g_d,k^H.
std::vector<CVector> effective_downlink(const ChannelSet &channels, const WetPhaseConfig &wet);

/// N_T x K matrix whose k-th column is sqrt(t~_k) g~_k.
CMatrix build_g_matrix(const UplinkGains &gains, const std::vector<CVector> &g_tilde);

struct BeamformerResult {
  Beamformer beamformer;
  double rho_max = 0.0;
  bool degenerate = false;
};

/// w = sqrt(P0) * nu_max(G~ G~^H).
BeamformerResult optimal_beamformer(const CMatrix &g_matrix, double p0);

/// (T - tau0) * log(1 + tau0 * gain / (T - tau0)), the sum rate as a function of the harvesting
/// time once the uplink slots are split optimally; gain = P0 * rho_max. Zero at tau0 = T.
double harvest_time_objective(double tau0, double gain, double t_total);

/// Maximizer of harvest_time_objective over [0, T] through the principal Lambert W branch.
double optimal_tau0(double rho_max, double p0, double t_total);

/// Uplink slots proportional to q_k = tau0 t~_k |g~_k^H w|^2 on the remaining T - tau0.
/// All q_k == 0 falls back to a uniform split.
TimeAllocation optimal_tau_k(double tau0, const UplinkGains &gains,
                             const std::vector<CVector> &g_tilde, const Beamformer &w,
                             double t_total);

/// sum_k t~_k |g~_k^H w|^2 for the given WET phases.
double wet_objective(const ChannelSet &channels, const Beamformer &w, const UplinkGains &gains,
                     const WetPhaseConfig &wet);

/// Majorization-minimization update of the WET phases around current_theta0. Never decreases
/// wet_objective.
WetPhaseConfig mm_wet_phase_update(const ChannelSet &channels, const Beamformer &w,
                                   const UplinkGains &gains, const WetPhaseConfig &current_theta0,
                                   int inner_iters = 1);

struct RateBreakdown {
  std::vector<double> per_device;
  double sum = 0.0;
};

/// R_k = tau_k log(1 + eta tau0 |g~_k^H w|^2 |h_k Theta_k h_r + h_d,k|^2 / (tau_k sigma^2));
/// a device with tau_k == 0 contributes 0.
RateBreakdown sum_throughput(const ChannelSet &channels, const SystemParams &params,
                             const Beamformer &w, const TimeAllocation &tau,
                             const WetPhaseConfig &wet, const WitPhaseConfig &wit);

/// Low-complexity alternating optimization: closed-form beamformer, harvesting time and slot
/// split for fixed WET phases, then one MM phase update, until the relative change of the sum
/// rate drops below tol. WIT phases are fixed up front by optimal_wit_phases.
AoResult ao_solve(const ChannelSet &channels, const SystemParams &params,
                  const WetPhaseConfig &init_theta0, const AoOptions &options = {});

/// Packs the fields into a Solution with rates evaluated by sum_throughput.
Solution make_solution(const ChannelSet &channels, const SystemParams &params, Beamformer w,
                       TimeAllocation tau, WetPhaseConfig wet, WitPhaseConfig wit);

}  // namespace wpsn
