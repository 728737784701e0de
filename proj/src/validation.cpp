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

#include "wpsn/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "wpsn/numerics.hpp"

namespace wpsn {

PsdMatrix::PsdMatrix(const CMatrix &entries)
    : entries_(numerics::HermitianMatrix(entries).entries()) {
  const RVector eig = eigenvalues();
  const double floor = -1e-9 * std::max(1.0, eig.maxCoeff());
  if (eig.minCoeff() < floor)
    throw std::invalid_argument("PsdMatrix: matrix has a negative eigenvalue " +
                                std::to_string(eig.minCoeff()));
}

RVector PsdMatrix::eigenvalues() const {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(entries_, Eigen::EigenvaluesOnly).eigenvalues();
}

PsdMatrix sca_v0_step(const std::vector<CVector> &g_tilde, const UplinkGains &gains,
                      const TimeAllocation &tau, double p0, const PsdMatrix &v0_prev) {
  const auto k = g_tilde.size();
  if (k == 0 || static_cast<int>(k) != gains.k() || tau.tau.size() != static_cast<Eigen::Index>(k + 1))
    throw std::invalid_argument("sca_v0_step: device count mismatch");
  const double budget = tau.tau0() * p0;
  if (v0_prev.trace() > budget + 1e-9 * std::max(1.0, budget))
    throw std::invalid_argument("sca_v0_step: previous iterate exceeds the energy budget");

  const Eigen::Index n_t = g_tilde.front().size();
  CMatrix weighted = CMatrix::Zero(n_t, n_t);
  for (std::size_t i = 0; i < k; ++i) {
    const double tau_k = tau.tau(static_cast<Eigen::Index>(i) + 1);
    if (!(tau_k > 0.0)) continue;
    const double energy = std::real(g_tilde[i].dot(v0_prev.entries() * g_tilde[i]));
    const double c = gains.t_tilde[i] / (1.0 + gains.t_tilde[i] * energy / tau_k);
    weighted += c * g_tilde[i] * g_tilde[i].adjoint();
  }
  const numerics::Eigenpair ep = numerics::max_eigenpair(numerics::HermitianMatrix(weighted));
  return PsdMatrix(budget * ep.vector * ep.vector.adjoint());
}

namespace {

struct TimeUpdate {
  TimeAllocation tau;
  double value = 0.0;
};

// Harvesting time and slot split that are optimal for a fixed beamformer.
TimeUpdate time_update(const ChannelSet &channels, const SystemParams &params,
                       const UplinkGains &gains, const std::vector<CVector> &g_tilde,
                       const Beamformer &w, const WetPhaseConfig &wet, const WitPhaseConfig &wit) {
  double s = 0.0;
  for (std::size_t k = 0; k < g_tilde.size(); ++k)
    s += gains.t_tilde[k] * std::norm(g_tilde[k].dot(w.w));
  const double tau0 = optimal_tau0(s / params.p0, params.p0, params.t_total);
  TimeUpdate out;
  out.tau = optimal_tau_k(tau0, gains, g_tilde, w, params.t_total);
  out.value = sum_throughput(channels, params, w, out.tau, wet, wit).sum;
  return out;
}

double rank_ratio(const PsdMatrix &v) {
  const RVector eig = v.eigenvalues();
  const double top = eig(eig.size() - 1);
  if (!(top > 0.0)) return 0.0;
  double rest = 0.0;
  for (Eigen::Index i = 0; i + 1 < eig.size(); ++i) rest = std::max(rest, std::abs(eig(i)));
  return rest / top;
}

bool relative_change_below(double current, double previous, double tol) {
  const double denom = std::max(std::abs(previous), std::abs(current));
  if (denom == 0.0) return true;
  return std::abs(current - previous) / denom < tol;
}

}  // namespace

SdpAoResult sdp_ao_emulate(const ChannelSet &channels, const SystemParams &params,
                           const WetPhaseConfig &init_theta0, double tol, int max_iter) {
  params.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("sdp_ao_emulate: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("sdp_ao_emulate: max_iter must be >= 1");
  constexpr double kInnerTol = 1e-6;
  constexpr int kInnerMax = 100;

  SdpAoResult result;
  const WitPhaseConfig wit = optimal_wit_phases(channels);
  const UplinkGains gains = uplink_gains(channels, wit, params);

  WetPhaseConfig wet = init_theta0;
  Beamformer w{CVector::Constant(channels.n_t(), cdouble(std::sqrt(params.p0 / channels.n_t()), 0.0))};
  TimeAllocation tau;
  AoTrace &trace = result.trace;
  ScaChainLog &log = result.chain;

  for (int m = 1; m <= max_iter; ++m) {
    const auto g_tilde = effective_downlink(channels, wet);
    log.chain_start.push_back(log.objective.size());
    TimeUpdate current = time_update(channels, params, gains, g_tilde, w, wet, wit);
    log.objective.push_back(current.value);
    bool chain_converged = false;
    for (int step = 0; step < kInnerMax; ++step) {
      const double tau0 = current.tau.tau0();
      if (!(tau0 > 0.0)) {
        chain_converged = true;
        break;
      }
      const PsdMatrix v_prev(tau0 * w.w * w.w.adjoint());
      const PsdMatrix v_next = sca_v0_step(g_tilde, gains, current.tau, params.p0, v_prev);
      log.rank_ratio.push_back(rank_ratio(v_next));
      const numerics::Eigenpair ep =
          numerics::max_eigenpair(numerics::HermitianMatrix(v_next.entries()));
      w.w = std::sqrt(std::max(0.0, ep.value) / tau0) * ep.vector;
      const double previous = current.value;
      current = time_update(channels, params, gains, g_tilde, w, wet, wit);
      log.objective.push_back(current.value);
      if (relative_change_below(current.value, previous, kInnerTol)) {
        chain_converged = true;
        break;
      }
    }
    if (!chain_converged) ++log.non_converged_chains;
    tau = current.tau;
    if (m == 1) trace.objective_per_iter.push_back(current.value);

    wet = mm_wet_phase_update(channels, w, gains, wet);
    tau = optimal_tau_k(tau.tau0(), gains, effective_downlink(channels, wet), w, params.t_total);
    const double value = sum_throughput(channels, params, w, tau, wet, wit).sum;
    const double previous = trace.objective_per_iter.back();
    trace.objective_per_iter.push_back(value);
    trace.iterations = m;
    if (relative_change_below(value, previous, tol)) {
      trace.converged = true;
      break;
    }
  }

  result.solution = make_solution(channels, params, std::move(w), std::move(tau), std::move(wet), wit);
  return result;
}

CVector lift_wet_phases(const WetPhaseConfig &wet) {
  CVector lifted(wet.theta0.size() + 1);
  lifted.head(wet.theta0.size()) = wet.theta0.conjugate();
  lifted(wet.theta0.size()) = cdouble(1.0, 0.0);
  return lifted;
}

WetPhaseConfig unlift_wet_phases(const CVector &lifted) {
  if (lifted.size() < 2) throw std::invalid_argument("unlift_wet_phases: need N_R + 1 >= 2 entries");
  const Eigen::Index n_r = lifted.size() - 1;
  const double reference = safe_arg(lifted(n_r));
  WetPhaseConfig wet{CVector(n_r)};
  for (Eigen::Index n = 0; n < n_r; ++n) wet.theta0(n) = phasor(reference - safe_arg(lifted(n)));
  return wet;
}

RandomizationResult gaussian_randomization(
    const PsdMatrix &delta0, int num_samples, std::uint64_t seed,
    const std::function<double(const WetPhaseConfig &)> &objective) {
  if (delta0.dim() < 2)
    throw std::invalid_argument("gaussian_randomization: Delta0 must have dimension N_R + 1 >= 2");
  if (num_samples < 1) throw std::invalid_argument("gaussian_randomization: num_samples must be >= 1");
  const Eigen::Index n_r = delta0.dim() - 1;

  RandomizationResult out;
  if (delta0.entries().cwiseAbs().maxCoeff() == 0.0) {
    out.phases = WetPhaseConfig::all_ones(static_cast<int>(n_r));
    out.objective = objective(out.phases);
    out.zero_input = true;
    return out;
  }

  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(delta0.entries());
  RVector lambda = eig.eigenvalues();
  const double cutoff = 1e-10 * lambda.maxCoeff();
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    lambda(i) = lambda(i) > cutoff ? std::sqrt(lambda(i)) : 0.0;
  const CMatrix factor = eig.eigenvectors() * lambda.asDiagonal();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  bool have_best = false;
  for (int s = 0; s < num_samples; ++s) {
    CVector kappa(delta0.dim());
    for (Eigen::Index i = 0; i < kappa.size(); ++i) {
      const double x = normal(rng);
      const double y = normal(rng);
      kappa(i) = cdouble(x, y) / std::sqrt(2.0);
    }
    WetPhaseConfig candidate = unlift_wet_phases(factor * kappa);
    const double value = objective(candidate);
    if (!have_best || value > out.objective) {
      out.phases = std::move(candidate);
      out.objective = value;
      have_best = true;
    }
  }
  return out;
}

double golden_tau0(double rho_max, double p0, double t_total, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("golden_tau0: tol must be positive");
  const double gain = p0 * rho_max;
  if (!(gain > 0.0)) return 0.0;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = t_total;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = harvest_time_objective(x1, gain, t_total);
  double f2 = harvest_time_objective(x2, gain, t_total);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = harvest_time_objective(x2, gain, t_total);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = harvest_time_objective(x1, gain, t_total);
    }
  }
  return 0.5 * (lo + hi);
}

OracleResult brute_force_oracle(const ChannelSet &channels, const SystemParams &params,
                                int phase_levels, int tau0_grid, const OracleBudget &budget) {
  if (phase_levels < 1) throw std::invalid_argument("brute_force_oracle: phase_levels must be >= 1");
  if (tau0_grid < 2) throw std::invalid_argument("brute_force_oracle: tau0_grid must be >= 2");
  const int n_r = channels.n_r();
  if (channels.n_t() > budget.max_dim || n_r > budget.max_dim || channels.k() > budget.max_dim)
    throw OracleBudgetError("brute_force_oracle: N_T, N_R and K must each be <= " +
                            std::to_string(budget.max_dim));
  std::uint64_t points = 1;
  for (int n = 0; n < n_r; ++n) {
    points *= static_cast<std::uint64_t>(phase_levels);
    if (points > budget.max_points)
      throw OracleBudgetError("brute_force_oracle: phase grid exceeds " +
                              std::to_string(budget.max_points) + " points");
  }

  const WitPhaseConfig wit = optimal_wit_phases(channels);
  const UplinkGains gains = uplink_gains(channels, wit, params);

  OracleResult out;
  bool have_best = false;
  std::vector<int> index(static_cast<std::size_t>(n_r), 0);
  WetPhaseConfig wet{CVector(n_r)};
  for (std::uint64_t p = 0; p < points; ++p) {
    for (int n = 0; n < n_r; ++n)
      wet.theta0(n) = phasor(2.0 * kPi * index[static_cast<std::size_t>(n)] / phase_levels);
    const CMatrix g = build_g_matrix(gains, effective_downlink(channels, wet));
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(g * g.adjoint(), Eigen::EigenvaluesOnly);
    const double rho = std::max(0.0, eig.eigenvalues().maxCoeff());
    if (!have_best || rho > out.best_rho) {
      out.best_rho = rho;
      out.best_theta0 = wet;
      have_best = true;
    }
    // Last element varies fastest.
    for (int n = n_r - 1; n >= 0; --n) {
      auto &i = index[static_cast<std::size_t>(n)];
      if (++i < phase_levels) break;
      i = 0;
    }
  }

  // The time objective is increasing in rho for every tau0, so the best rho is optimal on
  // every tau0 grid point.
  const double gain = params.p0 * out.best_rho;
  for (int i = 0; i < tau0_grid; ++i) {
    const double tau0 = params.t_total * i / (tau0_grid - 1);
    const double value = harvest_time_objective(tau0, gain, params.t_total);
    if (i == 0 || value > out.best_value) {
      out.best_value = value;
      out.best_tau0 = tau0;
    }
  }

  std::ostringstream spec;
  spec << phase_levels << " phase levels per element over " << n_r << " elements, " << tau0_grid
       << " uniform tau0 points on [0, " << params.t_total << "]";
  out.grid_spec = spec.str();
  return out;
}

double quantization_slack(const ChannelSet &channels, const SystemParams &params,
                          const Solution &solution, int phase_levels, int tau0_grid) {
  if (phase_levels < 1 || tau0_grid < 2)
    throw std::invalid_argument("quantization_slack: invalid grid");
  const UplinkGains gains = uplink_gains(channels, solution.wit, params);
  const auto g_tilde = effective_downlink(channels, solution.wet);
  const CVector g0w = channels.g0 * solution.w.w;
  const double step = 2.0 * kPi / phase_levels;

  double s_solution = 0.0;
  double s_lower = 0.0;
  for (int k = 0; k < channels.k(); ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const double amplitude = std::abs(g_tilde[idx].dot(solution.w.w));
    const double spread = channels.g_r[idx].conjugate().cwiseProduct(g0w).cwiseAbs().sum();
    const double lower = std::max(0.0, amplitude - step * spread);
    s_solution += gains.t_tilde[idx] * amplitude * amplitude;
    s_lower += gains.t_tilde[idx] * lower * lower;
  }

  const double t = params.t_total;
  auto best = [&](double s) {
    return harvest_time_objective(optimal_tau0(s / params.p0, params.p0, t), s, t);
  };
  const double phase_part = best(s_solution) - best(s_lower);

  const double tau_star = optimal_tau0(s_solution / params.p0, params.p0, t);
  const double h = t / (tau0_grid - 1);
  const double at_star = harvest_time_objective(tau_star, s_solution, t);
  const double neighbour = std::min(harvest_time_objective(std::max(0.0, tau_star - h), s_solution, t),
                                    harvest_time_objective(std::min(t, tau_star + h), s_solution, t));
  return std::max(0.0, phase_part) + std::max(0.0, at_star - neighbour);
}

}  // namespace wpsn
