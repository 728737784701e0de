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
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpsn/ao_solver.hpp"

namespace wpsn {

/// Hermitian positive semidefinite matrix. Construction rejects non-Hermitian input (1e-12,
/// scaled like HermitianMatrix) and any eigenvalue below -1e-9 * max(1, lambda_max).
class PsdMatrix {
 public:
  explicit PsdMatrix(const CMatrix &entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const CMatrix &entries() const { return entries_; }
  double trace() const { return std::real(entries_.trace()); }
  /// Eigenvalues in ascending order.
  RVector eigenvalues() const;

 private:
  CMatrix entries_;
};

/// Linearized rank-one step for the harvesting covariance V0 = tau0 w w^H with the slots fixed.
/// Returns tau0 * P0 * u u^H, u the dominant eigenvector of sum_k c_k g~_k g~_k^H with
/// c_k = t~_k / (1 + t~_k g~_k^H V0_prev g~_k / tau_k); devices with tau_k == 0 get c_k = 0.
PsdMatrix sca_v0_step(const std::vector<CVector> &g_tilde, const UplinkGains &gains,
                      const TimeAllocation &tau, double p0, const PsdMatrix &v0_prev);

/// Per-step record of the inner rank-one chain.
struct ScaChainLog {
  std::vector<double> rank_ratio;  // lambda_2 / lambda_1 of every sca_v0_step output
  std::vector<double> objective;   // sum rate after every time update, per chain
  std::vector<std::size_t> chain_start;  // index into objective where each chain begins
  int non_converged_chains = 0;
};

struct SdpAoResult {
  Solution solution;
  AoTrace trace;
  ScaChainLog chain;
};

/// Alternating optimization in which the beamformer/time step iterates sca_v0_step with
/// closed-form time updates (tol 1e-6 relative, at most 100 steps) and the phase step is the MM
/// update. The beamformer is recovered from the rank-one V0 by eigendecomposition.
SdpAoResult sdp_ao_emulate(const ChannelSet &channels, const SystemParams &params,
                           const WetPhaseConfig &init_theta0, double tol = 1e-4,
                           int max_iter = 50);

/// [conj(theta0); 1], the lifted phase vector whose outer product is Delta0.
CVector lift_wet_phases(const WetPhaseConfig &wet);

/// Inverse of lift_wet_phases up to a common phase: theta0_n = exp(-j (arg x_n - arg x_last)).
WetPhaseConfig unlift_wet_phases(const CVector &lifted);

struct RandomizationResult {
  WetPhaseConfig phases;
  double objective = 0.0;
  bool zero_input = false;  // Delta0 == 0, phases are all ones
};

/// Gaussian randomization of a relaxed Delta0 of dimension N_R + 1: candidates
/// x = U Lambda^{1/2} kappa with kappa ~ CN(0, I), unit-modulus phases relative to the last
/// coordinate, best candidate under objective. Eigenvalues below 1e-10 * lambda_max count as 0.
RandomizationResult gaussian_randomization(
    const PsdMatrix &delta0, int num_samples, std::uint64_t seed,
    const std::function<double(const WetPhaseConfig &)> &objective);

/// Golden-section maximizer of harvest_time_objective over [0, T]; 0 when P0 * rho_max == 0.
double golden_tau0(double rho_max, double p0, double t_total, double tol);

class OracleBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  double best_value = 0.0;
  WetPhaseConfig best_theta0;
  double best_tau0 = 0.0;
  double best_rho = 0.0;
  std::string grid_spec;
};

struct OracleBudget {
  int max_dim = 3;                  // bound on each of N_T, N_R, K
  std::uint64_t max_points = 1u << 20;  // phase_levels^N_R
};

/// Exhaustive search over theta0 phases {2 pi i / phase_levels} per element and a uniform
/// tau0 grid of tau0_grid points on [0, T]. Each grid point uses the optimal WIT phases,
/// beamformer and slot split. Ties go to the first point in lexicographic grid order.
OracleResult brute_force_oracle(const ChannelSet &channels, const SystemParams &params,
                                int phase_levels, int tau0_grid, const OracleBudget &budget = {});

/// First-order bound on how far a continuous solution can sit above the best oracle grid point:
/// phase error 2 pi / phase_levels per element times sum_n |b_k(n)| on every downlink amplitude,
/// plus the loss from the nearest tau0 grid point.
double quantization_slack(const ChannelSet &channels, const SystemParams &params,
                          const Solution &solution, int phase_levels, int tau0_grid);

}  // namespace wpsn
