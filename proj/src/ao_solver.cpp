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

#include "wpsn/ao_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "wpsn/numerics.hpp"

namespace wpsn {

WetPhaseConfig WetPhaseConfig::all_ones(int n_r) { return {CVector::Ones(n_r)}; }

WetPhaseConfig WetPhaseConfig::random(int n_r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  WetPhaseConfig cfg{CVector(n_r)};
  for (int n = 0; n < n_r; ++n) cfg.theta0(n) = phasor(phase(rng));
  return cfg;
}

bool WetPhaseConfig::unit_modulus(double tol) const {
  return ((theta0.cwiseAbs().array() - 1.0).abs() <= tol).all();
}

bool AoTrace::non_decreasing(double slack) const {
  for (std::size_t i = 1; i < objective_per_iter.size(); ++i)
    if (objective_per_iter[i] < objective_per_iter[i - 1] - slack) return false;
  return true;
}

std::vector<CVector> effective_downlink(const ChannelSet &channels, const WetPhaseConfig &wet) {
  if (wet.theta0.size() != channels.n_r())
    throw std::invalid_argument("effective_downlink: WET phase vector has wrong length");
  const CMatrix g0_adj = channels.g0.adjoint();
  const CVector theta_conj = wet.theta0.conjugate();
  std::vector<CVector> out;
  out.reserve(channels.g_d.size());
  for (int k = 0; k < channels.k(); ++k) {
    const auto idx = static_cast<std::size_t>(k);
    out.push_back(g0_adj * theta_conj.cwiseProduct(channels.g_r[idx]) + channels.g_d[idx]);
  }
  return out;
}

CMatrix build_g_matrix(const UplinkGains &gains, const std::vector<CVector> &g_tilde) {
  if (g_tilde.empty() || static_cast<int>(g_tilde.size()) != gains.k())
    throw std::invalid_argument("build_g_matrix: device count mismatch");
  const Eigen::Index n_t = g_tilde.front().size();
  CMatrix g(n_t, static_cast<Eigen::Index>(g_tilde.size()));
  for (std::size_t k = 0; k < g_tilde.size(); ++k) {
    if (gains.t_tilde[k] < 0.0) throw std::invalid_argument("build_g_matrix: negative gain");
    g.col(static_cast<Eigen::Index>(k)) = std::sqrt(gains.t_tilde[k]) * g_tilde[k];
  }
  return g;
}

BeamformerResult optimal_beamformer(const CMatrix &g_matrix, double p0) {
  if (!(p0 > 0.0)) throw std::invalid_argument("optimal_beamformer: p0 must be positive");
  const numerics::HermitianMatrix gram(g_matrix * g_matrix.adjoint());
  const numerics::Eigenpair ep = numerics::max_eigenpair(gram);
  BeamformerResult out;
  out.beamformer.w = std::sqrt(p0) * ep.vector;
  out.rho_max = std::max(0.0, ep.value);
  out.degenerate = ep.degenerate;
  return out;
}

double harvest_time_objective(double tau0, double gain, double t_total) {
  const double uplink = t_total - tau0;
  if (uplink <= 0.0 || tau0 <= 0.0 || gain <= 0.0) return 0.0;
  return uplink * std::log1p(tau0 * gain / uplink);
}

double optimal_tau0(double rho_max, double p0, double t_total) {
  if (rho_max < 0.0) throw std::invalid_argument("optimal_tau0: rho_max must be >= 0");
  const double gain = p0 * rho_max;
  // The objective is identically zero without any harvested power.
  if (!(gain > 0.0)) return 0.0;
  const double c = gain - 1.0;
  if (std::abs(c) < 1e-9) return (1.0 - 1.0 / kE) * t_total;
  // x = exp(W(c/e) + 1) solves x log x - x = c; x - 1 and c + x = gain + (x - 1) are formed
  // without cancellation.
  const double x_minus_1 = std::expm1(numerics::lambert_w0(c / kE) + 1.0);
  const double tau0 = t_total * x_minus_1 / (gain + x_minus_1);
  return std::clamp(tau0, 0.0, t_total);
}

TimeAllocation optimal_tau_k(double tau0, const UplinkGains &gains,
                             const std::vector<CVector> &g_tilde, const Beamformer &w,
                             double t_total) {
  if (!(tau0 >= 0.0 && tau0 <= t_total))
    throw std::invalid_argument("optimal_tau_k: tau0 outside [0, T]");
  const auto k = static_cast<Eigen::Index>(g_tilde.size());
  // tau0 cancels from the proportional split, so the weights omit it.
  RVector weight(k);
  for (Eigen::Index i = 0; i < k; ++i)
    weight(i) = gains.t_tilde[static_cast<std::size_t>(i)] *
                std::norm(g_tilde[static_cast<std::size_t>(i)].dot(w.w));
  const double total = weight.sum();

  TimeAllocation out{RVector(k + 1)};
  out.tau(0) = tau0;
  const double uplink = t_total - tau0;
  if (total > 0.0 && std::isfinite(total))
    out.tau.tail(k) = uplink * weight / total;
  else
    out.tau.tail(k).setConstant(uplink / static_cast<double>(k));
  return out;
}

double wet_objective(const ChannelSet &channels, const Beamformer &w, const UplinkGains &gains,
                     const WetPhaseConfig &wet) {
  const auto g_tilde = effective_downlink(channels, wet);
  double total = 0.0;
  for (std::size_t k = 0; k < g_tilde.size(); ++k)
    total += gains.t_tilde[k] * std::norm(g_tilde[k].dot(w.w));
  return total;
}

namespace {

// Smallest eigenvalue of the PSD matrix phi, from the dominant eigenvalue of trace*I - phi.
// Any value in [0, lambda_min] keeps the surrogate a valid majorizer, so the estimate is
// rounded down.
double smallest_eigenvalue_lower_bound(const CMatrix &phi) {
  const double scale = std::real(phi.trace());
  if (!(scale > 0.0)) return 0.0;
  const CMatrix shifted =
      CMatrix::Identity(phi.rows(), phi.cols()) - phi / scale;
  const numerics::Eigenpair ep = numerics::max_eigenpair(numerics::HermitianMatrix(shifted));
  if (!ep.converged) return 0.0;
  return std::max(0.0, (1.0 - ep.value - 1e-8) * scale);
}

}  // namespace

WetPhaseConfig mm_wet_phase_update(const ChannelSet &channels, const Beamformer &w,
                                   const UplinkGains &gains, const WetPhaseConfig &current_theta0,
                                   int inner_iters) {
  const int n_r = channels.n_r();
  if (current_theta0.theta0.size() != n_r)
    throw std::invalid_argument("mm_wet_phase_update: WET phase vector has wrong length");

  // With v = conj(diag Theta_0): g~_k^H w = v^H b_k + d_k, b_k = diag(g_r,k^H) G_0 w,
  // d_k = g_d,k^H w. Maximize sum t~_k |v^H b_k + d_k|^2 = v^H Phi1 v + 2 Re{v^H gamma} + e1.
  const CVector g0w = channels.g0 * w.w;
  CMatrix phi1 = CMatrix::Zero(n_r, n_r);
  CVector gamma = CVector::Zero(n_r);
  for (int k = 0; k < channels.k(); ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const CVector b = channels.g_r[idx].conjugate().cwiseProduct(g0w);
    const cdouble d = channels.g_d[idx].dot(w.w);
    phi1 += gains.t_tilde[idx] * b * b.adjoint();
    gamma += gains.t_tilde[idx] * std::conj(d) * b;
  }

  // rho_max(-Phi1) = -lambda_min(Phi1), exactly zero when rank(Phi1) <= K < N_R.
  const double lambda_min = (n_r > channels.k()) ? 0.0 : smallest_eigenvalue_lower_bound(phi1);

  CVector v = current_theta0.theta0.conjugate();
  for (int it = 0; it < std::max(1, inner_iters); ++it) {
    const CVector gamma_tilde = phi1 * v - lambda_min * v + gamma;
    for (int n = 0; n < n_r; ++n)
      if (gamma_tilde(n) != cdouble(0.0, 0.0)) v(n) = phasor(std::arg(gamma_tilde(n)));
  }
  return {v.conjugate()};
}

RateBreakdown sum_throughput(const ChannelSet &channels, const SystemParams &params,
                             const Beamformer &w, const TimeAllocation &tau,
                             const WetPhaseConfig &wet, const WitPhaseConfig &wit) {
  const int k_count = channels.k();
  if (tau.tau.size() != k_count + 1)
    throw std::invalid_argument("sum_throughput: time allocation must have K + 1 entries");
  if (static_cast<int>(wit.theta_k.size()) != k_count)
    throw std::invalid_argument("sum_throughput: WIT configuration has wrong device count");
  const auto g_tilde = effective_downlink(channels, wet);
  const double tau0 = tau.tau0();

  RateBreakdown out;
  out.per_device.reserve(static_cast<std::size_t>(k_count));
  for (int k = 0; k < k_count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const double tau_k = tau.tau(k + 1);
    double rate = 0.0;
    if (tau_k > 0.0 && tau0 > 0.0) {
      const double harvested = params.eta * tau0 * std::norm(g_tilde[idx].dot(w.w));
      const double uplink = std::norm(uplink_coefficient(channels, wit.theta_k[idx], k));
      rate = tau_k * std::log1p(harvested * uplink / (tau_k * params.sigma2));
    }
    out.per_device.push_back(rate);
  }
  for (double r : out.per_device) out.sum += r;
  return out;
}

Solution make_solution(const ChannelSet &channels, const SystemParams &params, Beamformer w,
                       TimeAllocation tau, WetPhaseConfig wet, WitPhaseConfig wit) {
  const RateBreakdown rates = sum_throughput(channels, params, w, tau, wet, wit);
  Solution s;
  s.w = std::move(w);
  s.tau = std::move(tau);
  s.wet = std::move(wet);
  s.wit = std::move(wit);
  s.per_device_rate = rates.per_device;
  s.sum_rate = rates.sum;
  return s;
}

namespace {

bool relative_change_below(double current, double previous, double tol) {
  const double denom = std::max(std::abs(previous), std::abs(current));
  if (denom == 0.0) return true;
  return std::abs(current - previous) / denom < tol;
}

}  // namespace

AoResult ao_solve(const ChannelSet &channels, const SystemParams &params,
                  const WetPhaseConfig &init_theta0, const AoOptions &options) {
  params.validate();
  if (!(options.tol > 0.0)) throw std::invalid_argument("ao_solve: tol must be positive");
  if (options.max_iter < 1) throw std::invalid_argument("ao_solve: max_iter must be >= 1");
  if (options.pinned_tau0 && !(*options.pinned_tau0 >= 0.0 && *options.pinned_tau0 <= params.t_total))
    throw std::invalid_argument("ao_solve: pinned tau0 outside [0, T]");

  AoResult result;
  const WitPhaseConfig wit = optimal_wit_phases(channels);
  result.gains = uplink_gains(channels, wit, params);
  const double t_total = params.t_total;

  WetPhaseConfig wet = init_theta0;
  Beamformer w;
  TimeAllocation tau;
  AoTrace &trace = result.trace;

  for (int m = 1; m <= options.max_iter; ++m) {
    // Beamformer, harvesting time and uplink slots for the current WET phases.
    const auto g_tilde = effective_downlink(channels, wet);
    const BeamformerResult bf = optimal_beamformer(build_g_matrix(result.gains, g_tilde), params.p0);
    w = bf.beamformer;
    result.rho_max = bf.rho_max;
    const double tau0 =
        options.pinned_tau0 ? *options.pinned_tau0 : optimal_tau0(bf.rho_max, params.p0, t_total);
    tau = optimal_tau_k(tau0, result.gains, g_tilde, w, t_total);
    if (m == 1)
      trace.objective_per_iter.push_back(sum_throughput(channels, params, w, tau, wet, wit).sum);

    // WET phase update, slots re-split for the new phases.
    wet = mm_wet_phase_update(channels, w, result.gains, wet, options.mm_inner_iters);
    tau = optimal_tau_k(tau0, result.gains, effective_downlink(channels, wet), w, t_total);
    const double value = sum_throughput(channels, params, w, tau, wet, wit).sum;
    const double previous = trace.objective_per_iter.back();
    trace.objective_per_iter.push_back(value);
    trace.iterations = m;
    if (relative_change_below(value, previous, options.tol)) {
      trace.converged = true;
      break;
    }
  }

  result.solution = make_solution(channels, params, std::move(w), std::move(tau), std::move(wet), wit);
  return result;
}

}  // namespace wpsn
