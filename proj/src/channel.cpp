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

#include "wpsn/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace wpsn {

double PathLossExponents::of(LinkClass link) const {
  switch (link) {
    case LinkClass::PsIrs: return ps_irs;
    case LinkClass::PsDevice: return ps_device;
    case LinkClass::IrsDevice: return irs_device;
    case LinkClass::IrsAp: return irs_ap;
    case LinkClass::DeviceAp: return device_ap;
  }
  throw std::invalid_argument("PathLossExponents::of: unknown link class");
}

void SystemParams::validate() const {
  auto fail = [](const std::string &field, const std::string &why) {
    throw std::invalid_argument("SystemParams." + field + ": " + why);
  };
  if (n_t < 1) fail("n_t", "must be >= 1");
  if (n_r < 1) fail("n_r", "must be >= 1");
  if (k < 1) fail("k", "must be >= 1");
  if (!(p0 > 0.0) || !std::isfinite(p0)) fail("p0", "must be positive and finite");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) fail("sigma2", "must be positive and finite");
  if (!(eta >= 0.0 && eta <= 1.0)) fail("eta", "must lie in [0, 1]");
  if (!(t_total > 0.0) || !std::isfinite(t_total)) fail("t_total", "must be positive and finite");
  if (!(rician_k1 >= 0.0)) fail("rician_k1", "must be >= 0");
  if (!(pl_ref > 0.0)) fail("pl_ref", "must be positive");
  const PathLossExponents &e = pl_exponents;
  for (double eps : {e.ps_irs, e.ps_device, e.irs_device, e.irs_ap, e.device_ap})
    if (!(eps > 0.0) || !std::isfinite(eps)) fail("pl_exponents", "all exponents must be positive");
}

SystemGeometry SystemGeometry::standard(int k, double spacing_l, double device_x) {
  SystemGeometry g;
  g.spacing_l = spacing_l;
  g.device_positions.reserve(static_cast<std::size_t>(std::max(k, 0)));
  for (int n = 1; n <= k; ++n) {
    const double z = (n % 2 == 1) ? n * spacing_l / 2.0 : -(n - 1) * spacing_l / 2.0;
    g.device_positions.emplace_back(device_x, 0.0, z);
  }
  return g;
}

void SystemGeometry::validate(int k) const {
  if (static_cast<int>(device_positions.size()) != k)
    throw std::invalid_argument("SystemGeometry: expected " + std::to_string(k) +
                                " device positions, got " +
                                std::to_string(device_positions.size()));
  auto finite = [](const Vec3 &p) { return p.allFinite(); };
  if (!finite(ps_pos) || !finite(ap_pos) || !finite(irs_pos))
    throw std::invalid_argument("SystemGeometry: node positions must be finite");
  for (const Vec3 &p : device_positions)
    if (!finite(p)) throw std::invalid_argument("SystemGeometry: device positions must be finite");
}

bool ChannelSet::all_finite() const {
  if (!g0.allFinite() || !h_r.allFinite()) return false;
  for (const auto &v : g_d)
    if (!v.allFinite()) return false;
  for (const auto &v : g_r)
    if (!v.allFinite()) return false;
  for (const auto &h : h_d)
    if (!std::isfinite(h.real()) || !std::isfinite(h.imag())) return false;
  return true;
}

namespace {

template <typename A, typename B>
bool same_values(const A &a, const B &b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

}  // namespace

bool identical(const ChannelSet &a, const ChannelSet &b) {
  if (a.seed != b.seed || !same_values(a.g0, b.g0) || !same_values(a.h_r, b.h_r)) return false;
  if (a.g_d.size() != b.g_d.size() || a.g_r.size() != b.g_r.size() || a.h_d != b.h_d) return false;
  for (std::size_t i = 0; i < a.g_d.size(); ++i)
    if (!same_values(a.g_d[i], b.g_d[i])) return false;
  for (std::size_t i = 0; i < a.g_r.size(); ++i)
    if (!same_values(a.g_r[i], b.g_r[i])) return false;
  return true;
}

double path_loss(double d, double eps, double pl_ref) {
  if (!(d > 0.0)) throw std::domain_error("path_loss: distance must be positive");
  return pl_ref * std::pow(d, -eps);
}

CVector los_component(const Vec3 &tx_pos, const Vec3 &rx_pos, int n_elems) {
  const Vec3 delta = rx_pos - tx_pos;
  const double azimuth = std::atan2(delta.y(), delta.x());
  const double s = std::sin(azimuth);
  CVector a(n_elems);
  for (int n = 0; n < n_elems; ++n) a(n) = phasor(kPi * n * s);
  return a;
}

namespace {

// Independent generator per (seed, link class, device index).
class StreamFactory {
 public:
  explicit StreamFactory(std::uint64_t seed) : seed_(seed) {}

  std::mt19937_64 stream(LinkClass link, int index) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed_ & 0xffffffffu),
                      static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(link) + 1u, static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
  }

 private:
  std::uint64_t seed_;
};

// Circularly symmetric CN(0, 1) entries: (x + jy)/sqrt(2).
CMatrix complex_gaussian(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double x = normal(rng);
      const double y = normal(rng);
      m(r, c) = cdouble(x, y) / std::sqrt(2.0);
    }
  return m;
}

}  // namespace

ChannelSet gen_channels(const SystemParams &params, const SystemGeometry &geom, std::uint64_t seed) {
  params.validate();
  geom.validate(params.k);

  const StreamFactory streams(seed);
  const double k1 = params.rician_k1;
  const double los_w = std::sqrt(k1 / (k1 + 1.0));
  const double nlos_w = std::sqrt(1.0 / (k1 + 1.0));
  const PathLossExponents &eps = params.pl_exponents;
  auto amplitude = [&](const Vec3 &a, const Vec3 &b, LinkClass link) {
    return std::sqrt(path_loss((a - b).norm(), eps.of(link), params.pl_ref));
  };

  ChannelSet ch;
  ch.seed = seed;

  {
    auto rng = streams.stream(LinkClass::PsIrs, 0);
    const CMatrix los = los_component(geom.ps_pos, geom.irs_pos, params.n_r) *
                        los_component(geom.ps_pos, geom.irs_pos, params.n_t).adjoint();
    ch.g0 = amplitude(geom.ps_pos, geom.irs_pos, LinkClass::PsIrs) *
            (los_w * los + nlos_w * complex_gaussian(rng, params.n_r, params.n_t));
  }
  {
    auto rng = streams.stream(LinkClass::IrsAp, 0);
    const CVector los = los_component(geom.irs_pos, geom.ap_pos, params.n_r);
    ch.h_r = amplitude(geom.irs_pos, geom.ap_pos, LinkClass::IrsAp) *
             (los_w * los + nlos_w * complex_gaussian(rng, params.n_r, 1).col(0));
  }

  for (int k = 0; k < params.k; ++k) {
    const Vec3 &dev = geom.device_positions[static_cast<std::size_t>(k)];
    {
      auto rng = streams.stream(LinkClass::IrsDevice, k);
      const CVector los = los_component(geom.irs_pos, dev, params.n_r);
      ch.g_r.push_back(amplitude(geom.irs_pos, dev, LinkClass::IrsDevice) *
                       (los_w * los + nlos_w * complex_gaussian(rng, params.n_r, 1).col(0)));
    }
    {
      auto rng = streams.stream(LinkClass::PsDevice, k);
      ch.g_d.push_back(amplitude(geom.ps_pos, dev, LinkClass::PsDevice) *
                       complex_gaussian(rng, params.n_t, 1).col(0));
    }
    {
      auto rng = streams.stream(LinkClass::DeviceAp, k);
      ch.h_d.push_back(amplitude(dev, geom.ap_pos, LinkClass::DeviceAp) *
                       complex_gaussian(rng, 1, 1)(0, 0));
    }
  }
  return ch;
}

ChannelSet without_irs(const ChannelSet &channels) {
  ChannelSet out = channels;
  out.g0.setZero();
  out.h_r.setZero();
  for (auto &g : out.g_r) g.setZero();
  return out;
}

}  // namespace wpsn
