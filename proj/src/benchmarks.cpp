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

#include "wpsn/benchmarks.hpp"

#include <random>
#include <stdexcept>

namespace wpsn {

void BenchmarkScheme::validate() const {
  if (kind == BenchmarkKind::Fta && !(fta_tau0_fraction > 0.0 && fta_tau0_fraction < 1.0))
    throw std::invalid_argument("BenchmarkScheme: FTA tau0 fraction must lie in (0, 1)");
}

namespace {

// Closed-form beamformer, harvesting time and slot split for fixed phases.
Solution closed_form_solution(const ChannelSet &channels, const SystemParams &params,
                              WetPhaseConfig wet, WitPhaseConfig wit) {
  const UplinkGains gains = uplink_gains(channels, wit, params);
  const auto g_tilde = effective_downlink(channels, wet);
  const BeamformerResult bf = optimal_beamformer(build_g_matrix(gains, g_tilde), params.p0);
  const double tau0 = optimal_tau0(bf.rho_max, params.p0, params.t_total);
  TimeAllocation tau = optimal_tau_k(tau0, gains, g_tilde, bf.beamformer, params.t_total);
  return make_solution(channels, params, bf.beamformer, std::move(tau), std::move(wet), std::move(wit));
}

Solution solve_rps(const BenchmarkScheme &scheme, const ChannelSet &channels,
                   const SystemParams &params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  const int n_r = channels.n_r();
  WetPhaseConfig wet{CVector(n_r)};
  for (int n = 0; n < n_r; ++n) wet.theta0(n) = phasor(phase(rng));
  WitPhaseConfig wit;
  if (scheme.rps_randomize_wit) {
    for (int k = 0; k < channels.k(); ++k) {
      CVector theta(n_r);
      for (int n = 0; n < n_r; ++n) theta(n) = phasor(phase(rng));
      wit.theta_k.push_back(std::move(theta));
    }
  } else {
    wit = optimal_wit_phases(channels);
  }
  return closed_form_solution(channels, params, std::move(wet), std::move(wit));
}

Solution solve_eta(const ChannelSet &channels, const SystemParams &params) {
  const double slot = params.t_total / (channels.k() + 1);
  AoOptions options;
  options.pinned_tau0 = slot;
  const AoResult ao = ao_solve(channels, params, WetPhaseConfig::all_ones(channels.n_r()), options);
  TimeAllocation tau{RVector::Constant(channels.k() + 1, slot)};
  const Solution &s = ao.solution;
  return make_solution(channels, params, s.w, std::move(tau), s.wet, s.wit);
}

}  // namespace

Solution solve_benchmark(const BenchmarkScheme &scheme, const ChannelSet &channels,
                         const SystemParams &params, std::uint64_t seed) {
  scheme.validate();
  params.validate();
  switch (scheme.kind) {
    case BenchmarkKind::Rps:
      return solve_rps(scheme, channels, params, seed);
    case BenchmarkKind::Fta: {
      AoOptions options;
      options.pinned_tau0 = scheme.fta_tau0_fraction * params.t_total;
      return ao_solve(channels, params, WetPhaseConfig::all_ones(channels.n_r()), options).solution;
    }
    case BenchmarkKind::Eta:
      return solve_eta(channels, params);
    case BenchmarkKind::NoIrs: {
      const ChannelSet direct = without_irs(channels);
      return closed_form_solution(direct, params, WetPhaseConfig::all_ones(channels.n_r()),
                                  optimal_wit_phases(direct));
    }
  }
  throw std::invalid_argument("solve_benchmark: unknown scheme");
}

}  // namespace wpsn
