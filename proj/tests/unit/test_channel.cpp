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

#include "wpsn/channel.hpp"

using namespace wpsn;

TEST_CASE("path_loss reference values") {
  CHECK(path_loss(1.0, 2.2) == doctest::Approx(1e-3).epsilon(1e-14));
  CHECK(path_loss(1.0, 3.6) == doctest::Approx(1e-3).epsilon(1e-14));
  CHECK(path_loss(10.0, 2.0) == doctest::Approx(1e-5).epsilon(1e-14));
  CHECK(path_loss(std::sqrt(2.0), 3.0) == doctest::Approx(1e-3 * std::pow(2.0, -1.5)).epsilon(1e-14));
  // Same value evaluated in dB: -30 - 30 log10(sqrt 2).
  CHECK(linear_to_db(path_loss(std::sqrt(2.0), 3.0)) ==
        doctest::Approx(-30.0 - 30.0 * std::log10(std::sqrt(2.0))));
  CHECK_THROWS_AS(path_loss(0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(path_loss(-1.0, 2.0), std::domain_error);
}

TEST_CASE("los_component steering vectors") {
  const CVector broadside = los_component({0, 0, 0}, {5, 0, 0}, 4);
  for (int n = 0; n < 4; ++n) CHECK(std::abs(broadside(n) - 1.0) < 1e-15);
  CHECK(los_component({0, 0, 0}, {1, 1, 0}, 1).size() == 1);
  CHECK(std::abs(los_component({0, 0, 0}, {1, 1, 0}, 1)(0) - 1.0) < 1e-15);
  const CVector endfire = los_component({0, 0, 0}, {0, 3, 0}, 2);
  CHECK(std::abs(endfire(0) - 1.0) < 1e-15);
  CHECK(std::abs(endfire(1) - cdouble(-1.0, 0.0)) < 1e-15);
  const CVector any = los_component({-10, 0, 0}, {-2, 6, 0}, 30);
  CHECK(((any.cwiseAbs().array() - 1.0).abs() < 1e-15).all());
}

TEST_CASE("default geometry places devices alternately along z") {
  const SystemGeometry g = SystemGeometry::standard(4, 2.0);
  REQUIRE(g.device_positions.size() == 4);
  CHECK(g.device_positions[0].z() == 1.0);
  CHECK(g.device_positions[1].z() == -1.0);
  CHECK(g.device_positions[2].z() == 3.0);
  CHECK(g.device_positions[3].z() == -3.0);
  CHECK(g.ps_pos == Vec3(-10, 0, 0));
  CHECK(g.ap_pos == Vec3(10, 0, 0));
  CHECK(g.irs_pos == Vec3(-2, 6, 0));
  CHECK_THROWS_AS(g.validate(3), std::invalid_argument);
}

TEST_CASE("SystemParams defaults and validation") {
  SystemParams p;
  CHECK(p.p0 == doctest::Approx(0.316227766016838));
  CHECK(p.sigma2 == doctest::Approx(1e-12));
  CHECK(p.pl_ref == doctest::Approx(1e-3));
  CHECK(p.rician_k1 == doctest::Approx(3.1622776601683795));
  CHECK_NOTHROW(p.validate());
  p.eta = 1.5;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("eta"), std::invalid_argument);
}

TEST_CASE("gen_channels shapes and determinism") {
  SystemParams p;
  const SystemGeometry g = SystemGeometry::standard(p.k);
  const ChannelSet a = gen_channels(p, g, 42);
  const ChannelSet b = gen_channels(p, g, 42);
  const ChannelSet c = gen_channels(p, g, 43);
  CHECK(identical(a, b));
  CHECK_FALSE(identical(a, c));
  CHECK(a.n_t() == 6);
  CHECK(a.n_r() == 30);
  CHECK(a.k() == 5);
  CHECK(a.h_r.size() == 30);
  CHECK(a.g_d[0].size() == 6);
  CHECK(a.all_finite());
}

TEST_CASE("pure LOS limit gives unit-modulus reflected links scaled by path loss") {
  SystemParams p;
  p.rician_k1 = 1e12;
  const SystemGeometry g = SystemGeometry::standard(p.k);
  const ChannelSet ch = gen_channels(p, g, 3);
  for (int k = 0; k < p.k; ++k) {
    const double amp =
        std::sqrt(path_loss((g.irs_pos - g.device_positions[static_cast<std::size_t>(k)]).norm(), 2.2));
    for (int n = 0; n < p.n_r; ++n)
      CHECK(std::abs(std::abs(ch.g_r[static_cast<std::size_t>(k)](n)) - amp) <= 1e-4 * amp);
  }
}

TEST_CASE("direct links do not depend on the IRS size") {
  SystemParams small;
  small.n_r = 4;
  SystemParams large = small;
  large.n_r = 50;
  const SystemGeometry g = SystemGeometry::standard(small.k);
  const ChannelSet a = gen_channels(small, g, 9);
  const ChannelSet b = gen_channels(large, g, 9);
  for (std::size_t k = 0; k < a.g_d.size(); ++k) {
    CHECK((a.g_d[k].array() == b.g_d[k].array()).all());
    CHECK(a.h_d[k] == b.h_d[k]);
  }
}

TEST_CASE("Rayleigh direct link has unit normalized power") {
  SystemParams p;
  p.k = 1;
  p.n_r = 1;
  p.n_t = 1;
  const SystemGeometry g = SystemGeometry::standard(1);
  const double pl = path_loss((g.device_positions[0] - g.ap_pos).norm(), 3.6);
  double sum = 0.0;
  const int draws = 100000;
  for (int s = 0; s < draws; ++s) sum += std::norm(gen_channels(p, g, static_cast<std::uint64_t>(s)).h_d[0]) / pl;
  CHECK(sum / draws == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("without_irs zeroes every reflected link only") {
  SystemParams p;
  const ChannelSet ch = gen_channels(p, SystemGeometry::standard(p.k), 1);
  const ChannelSet d = without_irs(ch);
  CHECK(d.g0.cwiseAbs().maxCoeff() == 0.0);
  CHECK(d.h_r.cwiseAbs().maxCoeff() == 0.0);
  for (const auto &g : d.g_r) CHECK(g.cwiseAbs().maxCoeff() == 0.0);
  CHECK(d.h_d == ch.h_d);
}
