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

#include <vector>

#include "wpsn/channel.hpp"

namespace wpsn {

/// Diagonals of the uplink reflection matrices Theta_k, one unit-modulus vector per device.
struct WitPhaseConfig {
  std::vector<CVector> theta_k;

  static WitPhaseConfig all_ones(int k, int n_r);
  bool unit_modulus(double tol = 1e-12) const;
};

struct UplinkGains {
  std::vector<double> t;        // |h_k Theta_k h_r + h_d,k|^2
  std::vector<double> t_tilde;  // eta * t_k / sigma^2
  // Reflected-to-direct amplitude ratio. +inf flags h_d,k == 0 with a reflected path present.
  std::vector<double> xi;

  int k() const { return static_cast<int>(t.size()); }
};

/// Cascaded uplink coefficients b_k = diag(h_k) h_r, i.e. g_r,k .* h_r elementwise.
CVector uplink_cascade(const ChannelSet &channels, int k);

/// Combined uplink coefficient h_k Theta_k h_r + h_d,k for one device.
cdouble uplink_coefficient(const ChannelSet &channels, const CVector &theta, int k);

/// Phase-aligns every reflected uplink path with the direct path:
/// alpha_k,n = arg(h_d,k) - arg(b_k[n]), with arg(0) := 0.
WitPhaseConfig optimal_wit_phases(const ChannelSet &channels);

UplinkGains uplink_gains(const ChannelSet &channels, const WitPhaseConfig &wit,
                         const SystemParams &params);

}  // namespace wpsn
