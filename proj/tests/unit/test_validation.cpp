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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/oracles.hpp"
#include "wpsn/validation.hpp"

using namespace wpsn;

namespace {

SystemParams tiny_params() {
  SystemParams p;
  p.n_t = 2;
  p.n_r = 2;
  p.k = 2;
  return p;
}

ChannelSet tiny_channels(std::uint64_t seed) {
  const SystemParams p = tiny_params();
  return gen_channels(p, SystemGeometry::standard(p.k), seed);
}

struct Instance {
  std::vector<CVector> g_tilde;
  UplinkGains gains;
};

Instance random_instance(std::mt19937_64 &rng, int n_t, int k) {
  Instance in;
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int i = 0; i < k; ++i) {
    in.g_tilde.push_back(test::random_complex(rng, n_t, 1).col(0));
    in.gains.t_tilde.push_back(u(rng));
  }
  in.gains.t = in.gains.t_tilde;
  in.gains.xi.assign(static_cast<std::size_t>(k), 0.0);
  return in;
}

double linearized(const Instance &in, const TimeAllocation &tau, const CMatrix &v_prev, const CMatrix &v) {
  double total = 0.0;
  for (std::size_t k = 0; k < in.g_tilde.size(); ++k) {
    const auto &g = in.g_tilde[k];
    const double prev = std::real(g.dot(v_prev * g));
    total += in.gains.t_tilde[k] * std::real(g.dot(v * g)) /
             (1.0 + in.gains.t_tilde[k] * prev / tau.tau(static_cast<Eigen::Index>(k) + 1));
  }
  return total;
}

}  // namespace

TEST_CASE("PsdMatrix accepts PSD input and rejects indefinite input") {
  std::mt19937_64 rng(1);
  const CMatrix g = test::random_complex(rng, 3, 2);
  CHECK_NOTHROW(PsdMatrix(g * g.adjoint()));
  CMatrix indefinite = CMatrix::Identity(2, 2);
  indefinite(1, 1) = -0.5;
  CHECK_THROWS_AS(PsdMatrix{indefinite}, std::invalid_argument);
  const PsdMatrix m(CMatrix::Identity(3, 3) * 2.0);
  CHECK(m.trace() == doctest::Approx(6.0));
  CHECK(m.eigenvalues().minCoeff() == doctest::Approx(2.0));
}

TEST_CASE("single-device linearized step aligns with the channel") {
  std::mt19937_64 rng(2);
  const Instance in = random_instance(rng, 3, 1);
  TimeAllocation tau{RVector(2)};
  tau.tau << 0.4, 0.6;
  const CVector w = test::random_complex(rng, 3, 1).col(0);
  const PsdMatrix prev(0.4 * w * w.adjoint() / w.squaredNorm() * 0.5);
  const PsdMatrix v = sca_v0_step(in.g_tilde, in.gains, tau, 0.5, prev);
  CHECK(v.trace() == doctest::Approx(0.2));
  const CVector u = in.g_tilde[0] / in.g_tilde[0].norm();
  CHECK((v.entries() - 0.2 * u * u.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("equal weights reproduce the closed-form beamformer direction") {
  std::mt19937_64 rng(3);
  const Instance in = random_instance(rng, 3, 3);
  const double p0 = 2.0;
  const Beamformer w0{CVector::Constant(3, cdouble(std::sqrt(p0 / 3.0), 0.0))};
  // The proportional split makes every weight t~_k / (1 + const).
  const TimeAllocation tau = optimal_tau_k(0.5, in.gains, in.g_tilde, w0, 1.0);
  const PsdMatrix prev(0.5 * w0.w * w0.w.adjoint());
  const PsdMatrix v = sca_v0_step(in.g_tilde, in.gains, tau, p0, prev);
  const BeamformerResult bf = optimal_beamformer(build_g_matrix(in.gains, in.g_tilde), p0);
  const CMatrix expected = 0.5 * bf.beamformer.w * bf.beamformer.w.adjoint();
  CHECK((v.entries() - expected).cwiseAbs().maxCoeff() < 1e-8 * expected.cwiseAbs().maxCoeff());
}

TEST_CASE("linearized step beats random feasible covariances and is rank one") {
  std::mt19937_64 rng(4);
  const Instance in = random_instance(rng, 3, 3);
  TimeAllocation tau{RVector(4)};
  tau.tau << 0.3, 0.2, 0.1, 0.4;
  const double p0 = 1.0;
  const double budget = 0.3 * p0;
  const CMatrix w = test::random_complex(rng, 3, 1);
  const CMatrix v_prev = budget * w * w.adjoint() / w.squaredNorm();
  const PsdMatrix v = sca_v0_step(in.g_tilde, in.gains, tau, p0, PsdMatrix(v_prev));
  const RVector eig = v.eigenvalues();
  CHECK(std::abs(eig(1)) <= 1e-9 * eig(2));
  const double value = linearized(in, tau, v_prev, v.entries());
  for (int i = 0; i < 10000; ++i) {
    const CMatrix g = test::random_complex(rng, 3, 1 + i % 3);
    CMatrix probe = g * g.adjoint();
    probe *= budget / std::real(probe.trace());
    CHECK(linearized(in, tau, v_prev, probe) <= value * (1.0 + 1e-12));
  }
  const CMatrix too_big = 2.0 * budget * w * w.adjoint() / w.squaredNorm();
  CHECK_THROWS_AS(sca_v0_step(in.g_tilde, in.gains, tau, p0, PsdMatrix(too_big)), std::invalid_argument);
}

TEST_CASE("SDP emulation: disconnected IRS matches the direct closed form") {
  SystemParams p;
  const ChannelSet ch = without_irs(gen_channels(p, SystemGeometry::standard(p.k), 8));
  const SdpAoResult sdp = sdp_ao_emulate(ch, p, WetPhaseConfig::all_ones(p.n_r));
  const AoResult ao = ao_solve(ch, p, WetPhaseConfig::all_ones(p.n_r));
  CHECK(sdp.solution.sum_rate == doctest::Approx(ao.solution.sum_rate).epsilon(1e-9));
  CHECK(sdp.trace.iterations == 1);
}

TEST_CASE("SDP emulation: default deployment agrees with the low-complexity scheme") {
  SystemParams p;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ChannelSet ch = gen_channels(p, SystemGeometry::standard(p.k), seed);
    const SdpAoResult sdp = sdp_ao_emulate(ch, p, WetPhaseConfig::all_ones(p.n_r));
    const AoResult ao = ao_solve(ch, p, WetPhaseConfig::all_ones(p.n_r));
    CHECK(sdp.trace.non_decreasing());
    CHECK(sdp.trace.converged);
    CHECK(sdp.chain.non_converged_chains == 0);
    CHECK(std::abs(sdp.solution.sum_rate - ao.solution.sum_rate) <= 0.01 * ao.solution.sum_rate);
    CHECK(sdp.solution.w.power() == doctest::Approx(p.p0).epsilon(1e-9));
    for (double r : sdp.chain.rank_ratio) CHECK(r <= 1e-9);
    const auto &obj = sdp.chain.objective;
    for (std::size_t c = 0; c < sdp.chain.chain_start.size(); ++c) {
      const std::size_t end = c + 1 < sdp.chain.chain_start.size() ? sdp.chain.chain_start[c + 1] : obj.size();
      for (std::size_t i = sdp.chain.chain_start[c] + 1; i < end; ++i) CHECK(obj[i] >= obj[i - 1] - 1e-9);
    }
  }
}

TEST_CASE("lifting round trip") {
  const WetPhaseConfig wet = WetPhaseConfig::random(5, 3);
  const CVector lifted = lift_wet_phases(wet);
  CHECK(lifted.size() == 6);
  CHECK(lifted(5) == cdouble(1.0, 0.0));
  CHECK((unlift_wet_phases(lifted).theta0 - wet.theta0).norm() < 1e-14);
  CHECK((unlift_wet_phases(cdouble(0.0, 2.0) * lifted).theta0 - wet.theta0).norm() < 1e-14);
}

TEST_CASE("Gaussian randomization recovers rank-one input") {
  auto zero = [](const WetPhaseConfig &) { return 0.0; };
  for (std::uint64_t s = 0; s < 20; ++s) {
    const WetPhaseConfig wet = WetPhaseConfig::random(6, s);
    const CVector x = lift_wet_phases(wet);
    for (int samples : {1, 7}) {
      const RandomizationResult r = gaussian_randomization(PsdMatrix(x * x.adjoint()), samples, s, zero);
      CHECK_FALSE(r.zero_input);
      CHECK((r.phases.theta0 - wet.theta0).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("Gaussian randomization: zero input, more samples, identity input") {
  auto sum_real = [](const WetPhaseConfig &w) { return w.theta0.real().sum(); };
  const RandomizationResult z = gaussian_randomization(PsdMatrix(CMatrix::Zero(4, 4)), 10, 1, sum_real);
  CHECK(z.zero_input);
  CHECK((z.phases.theta0 - CVector::Ones(3)).norm() == 0.0);

  std::mt19937_64 rng(5);
  const CMatrix g = test::random_complex(rng, 5, 3);
  const PsdMatrix delta(g * g.adjoint());
  const double one = gaussian_randomization(delta, 1, 9, sum_real).objective;
  const double many = gaussian_randomization(delta, 100, 9, sum_real).objective;
  CHECK(many >= one);

  const PsdMatrix identity(CMatrix::Identity(5, 5));
  const double best = gaussian_randomization(identity, 200, 3, sum_real).objective;
  std::vector<double> random_values;
  for (int i = 0; i < 1001; ++i) random_values.push_back(sum_real({test::random_phases(rng, 4)}));
  std::nth_element(random_values.begin(), random_values.begin() + 500, random_values.end());
  CHECK(best >= random_values[500]);
}

TEST_CASE("golden search for the harvesting time") {
  CHECK(golden_tau0(0.0, 1.0, 1.0, 1e-9) == 0.0);
  CHECK(golden_tau0(1.0, 1.0, 2.0, 1e-9) == doctest::Approx(2.0 * (1.0 - 1.0 / kE)).epsilon(1e-8));
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> rho(1e-3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double r = rho(rng);
    CHECK(std::abs(golden_tau0(r, 1.0, 1.0, 1e-8) - optimal_tau0(r, 1.0, 1.0)) <= 1e-4);
  }
  CHECK_THROWS_AS(golden_tau0(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("oracle with a single phase level is the all-ones solution") {
  const SystemParams p = tiny_params();
  const ChannelSet ch = tiny_channels(4);
  const OracleResult o = brute_force_oracle(ch, p, 1, 10001);
  CHECK((o.best_theta0.theta0 - CVector::Ones(2)).norm() == 0.0);
  const UplinkGains gains = uplink_gains(ch, optimal_wit_phases(ch), p);
  const BeamformerResult bf =
      optimal_beamformer(build_g_matrix(gains, effective_downlink(ch, WetPhaseConfig::all_ones(2))), p.p0);
  CHECK(o.best_rho == doctest::Approx(bf.rho_max).epsilon(1e-9));
  const double exact = harvest_time_objective(optimal_tau0(bf.rho_max, p.p0, 1.0), p.p0 * bf.rho_max, 1.0);
  CHECK(o.best_value <= exact * (1.0 + 1e-12));
  CHECK(o.best_value >= exact * (1.0 - 1e-6));
  // The first AO iterate starts from the same phases and can only improve on them.
  const AoResult ao = ao_solve(ch, p, WetPhaseConfig::all_ones(2));
  CHECK(o.best_value <= ao.solution.sum_rate * (1.0 + 1e-12));
}

TEST_CASE("oracle on a disconnected IRS is flat in the phases") {
  const SystemParams p = tiny_params();
  const ChannelSet ch = without_irs(tiny_channels(5));
  const OracleResult coarse = brute_force_oracle(ch, p, 1, 101);
  const OracleResult fine = brute_force_oracle(ch, p, 16, 101);
  CHECK(std::abs(fine.best_value - coarse.best_value) <= 1e-12 * coarse.best_value);
  // Ties keep the first grid point.
  CHECK((fine.best_theta0.theta0 - CVector::Ones(2)).norm() == 0.0);
}

TEST_CASE("oracle is never far above the continuous solution") {
  const SystemParams p = tiny_params();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ChannelSet ch = tiny_channels(seed);
    const AoResult ao = ao_solve(ch, p, WetPhaseConfig::all_ones(2));
    const OracleResult o = brute_force_oracle(ch, p, 64, 10000);
    const double slack = quantization_slack(ch, p, ao.solution, 64, 10000);
    CHECK(slack >= 0.0);
    CHECK(o.best_value >= ao.solution.sum_rate - slack);
    CHECK(ao.solution.sum_rate >= o.best_value - slack);
    CHECK_FALSE(o.grid_spec.empty());
  }
}

TEST_CASE("oracle enforces its budget") {
  SystemParams p;
  p.n_t = 2;
  p.n_r = 4;
  p.k = 2;
  const ChannelSet ch = gen_channels(p, SystemGeometry::standard(2), 1);
  CHECK_THROWS_AS(brute_force_oracle(ch, p, 4, 10), OracleBudgetError);
  const SystemParams t = tiny_params();
  OracleBudget small;
  small.max_points = 100;
  CHECK_THROWS_AS(brute_force_oracle(tiny_channels(1), t, 64, 10, small), OracleBudgetError);
  CHECK_THROWS_AS(brute_force_oracle(tiny_channels(1), t, 0, 10), std::invalid_argument);
}
