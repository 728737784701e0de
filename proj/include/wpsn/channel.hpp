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
#include <vector>

#include "wpsn/types.hpp"

namespace wpsn {

enum class LinkClass { PsIrs, PsDevice, IrsDevice, IrsAp, DeviceAp };

/// Path-loss exponents per link class. IRS-adjacent links default to 2.2, direct links to 3.6.
struct PathLossExponents {
  double ps_irs = 2.2;
  double ps_device = 3.6;
  double irs_device = 2.2;
  double irs_ap = 2.2;
  double device_ap = 3.6;

  double of(LinkClass link) const;
};

/// Scalar system constants, all on a linear scale (watts, linear gains).
struct SystemParams {
  int n_t = 6;                      // PS antennas
  int n_r = 30;                     // IRS elements
  int k = 5;                        // IoT devices
  double p0 = dbm_to_watts(25.0);   // PS power budget
  double sigma2 = dbm_to_watts(-90.0);
  double eta = 0.8;                 // energy conversion efficiency
  double t_total = 1.0;             // frame length T
  double rician_k1 = db_to_linear(5.0);
  double pl_ref = db_to_linear(-30.0);  // path loss at 1 m
  PathLossExponents pl_exponents;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

struct SystemGeometry {
  Vec3 ps_pos{-10.0, 0.0, 0.0};
  Vec3 ap_pos{10.0, 0.0, 0.0};
  Vec3 irs_pos{-2.0, 6.0, 0.0};
  std::vector<Vec3> device_positions;
  double spacing_l = 1.0;

  /// Default deployment: devices interleaved along the z axis through (device_x, 0, 0),
  /// device n (1-based) at z = n*l/2 for odd n and z = -(n-1)*l/2 for even n.
  static SystemGeometry standard(int k, double spacing_l = 1.0, double device_x = 0.0);

  void validate(int k) const;
};

/// One random draw of every channel coefficient. The device->IRS uplink channel h_k is not
/// stored: it equals g_r[k] transposed.
struct ChannelSet {
  CMatrix g0;                 // PS -> IRS, N_R x N_T
  std::vector<CVector> g_d;   // PS -> device k, length N_T
  std::vector<CVector> g_r;   // IRS <-> device k, length N_R
  std::vector<cdouble> h_d;   // device k -> AP
  CVector h_r;                // IRS -> AP, length N_R
  std::uint64_t seed = 0;

  int n_t() const { return static_cast<int>(g0.cols()); }
  int n_r() const { return static_cast<int>(g0.rows()); }
  int k() const { return static_cast<int>(h_d.size()); }

  bool all_finite() const;
};

/// Exact (bitwise on values) equality of two channel draws, including dimensions.
bool identical(const ChannelSet &a, const ChannelSet &b);

/// pl_ref * d^(-eps). Throws std::domain_error for d <= 0.
double path_loss(double d, double eps, double pl_ref = db_to_linear(-30.0));

/// Half-wavelength ULA steering vector: entry n is exp(j*pi*n*sin(phi)), n = 0..n_elems-1,
/// with phi the azimuth of rx_pos seen from tx_pos in the x-y plane.
CVector los_component(const Vec3 &tx_pos, const Vec3 &rx_pos, int n_elems);

/// Draws a full ChannelSet. IRS-adjacent links are Rician with factor params.rician_k1 around
/// the steering-vector LOS; direct links are Rayleigh. Each link is scaled by the square root of
/// its path loss. Every link class and device owns an independent mt19937_64 stream seeded from
/// (seed, link, device index), so direct links do not depend on N_R.
ChannelSet gen_channels(const SystemParams &params, const SystemGeometry &geom, std::uint64_t seed);

/// Copy of the channels with the IRS removed (all reflected links zero).
ChannelSet without_irs(const ChannelSet &channels);

}  // namespace wpsn
