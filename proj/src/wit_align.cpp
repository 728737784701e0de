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

#include "wpsn/wit_align.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wpsn {

WitPhaseConfig WitPhaseConfig::all_ones(int k, int n_r) {
  WitPhaseConfig cfg;
  cfg.theta_k.assign(static_cast<std::size_t>(k), CVector::Ones(n_r));
  return cfg;
}

bool WitPhaseConfig::unit_modulus(double tol) const {
  for (const auto &theta : theta_k)
    for (Eigen::Index n = 0; n < theta.size(); ++n)
      if (std::abs(std::abs(theta(n)) - 1.0) > tol) return false;
  return true;
}

CVector uplink_cascade(const ChannelSet &channels, int k) {
  return channels.g_r[static_cast<std::size_t>(k)].cwiseProduct(channels.h_r);
}

cdouble uplink_coefficient(const ChannelSet &channels, const CVector &theta, int k) {
  return theta.cwiseProduct(uplink_cascade(channels, k)).sum() +
         channels.h_d[static_cast<std::size_t>(k)];
}

WitPhaseConfig optimal_wit_phases(const ChannelSet &channels) {
  WitPhaseConfig cfg;
  for (int k = 0; k < channels.k(); ++k) {
    const CVector b = uplink_cascade(channels, k);
    const double direct_phase = safe_arg(channels.h_d[static_cast<std::size_t>(k)]);
    CVector theta(b.size());
    for (Eigen::Index n = 0; n < b.size(); ++n) theta(n) = phasor(direct_phase - safe_arg(b(n)));
    cfg.theta_k.push_back(std::move(theta));
  }
  return cfg;
}

UplinkGains uplink_gains(const ChannelSet &channels, const WitPhaseConfig &wit,
                         const SystemParams &params) {
  if (static_cast<int>(wit.theta_k.size()) != channels.k())
    throw std::invalid_argument("uplink_gains: WIT configuration has wrong device count");
  UplinkGains g;
  for (int k = 0; k < channels.k(); ++k) {
    const auto &theta = wit.theta_k[static_cast<std::size_t>(k)];
    if (theta.size() != channels.n_r())
      throw std::invalid_argument("uplink_gains: WIT phase vector has wrong length");
    const double t = std::norm(uplink_coefficient(channels, theta, k));
    const double reflected = uplink_cascade(channels, k).cwiseAbs().sum();
    const double direct = std::abs(channels.h_d[static_cast<std::size_t>(k)]);
    double xi;
    if (direct > 0.0)
      xi = reflected / direct;
    else
      xi = reflected > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    g.t.push_back(t);
    g.t_tilde.push_back(params.eta * t / params.sigma2);
    g.xi.push_back(xi);
  }
  return g;
}

}  // namespace wpsn
