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

#include "wpsn/ao_solver.hpp"

namespace wpsn {

enum class BenchmarkKind {
  Rps,    // random phase shifts
  Fta,    // fixed harvesting time
  Eta,    // equal time slots
  NoIrs,  // reflected links removed
};

struct BenchmarkScheme {
  BenchmarkKind kind = BenchmarkKind::Rps;
  double fta_tau0_fraction = 0.5;  // tau0 / T for Fta, in (0, 1)
  bool rps_randomize_wit = true;   // Rps draws the uplink phases too

  void validate() const;
};

/// Solves one benchmark. Everything the scheme does not pin is optimized with the closed forms:
///  - Rps: uniform random WET phases (and WIT phases unless disabled), optimal beamformer,
///    harvesting time and slot split.
///  - Fta: alternating optimization with tau0 pinned to fta_tau0_fraction * T.
///  - Eta: phases and beamformer from the alternating optimization with tau0 pinned to
///    T / (K + 1), then every slot set to T / (K + 1).
///  - NoIrs: reflected links zeroed, closed-form beamformer and times on the direct links.
/// seed only affects Rps.
Solution solve_benchmark(const BenchmarkScheme &scheme, const ChannelSet &channels,
                         const SystemParams &params, std::uint64_t seed);

}  // namespace wpsn
