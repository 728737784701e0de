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

#include "wpsn/types.hpp"

namespace wpsn::numerics {

/// Principal branch W0 of the Lambert W function, i.e. the x >= -1 solving x*exp(x) = y.
///
/// Halley iteration seeded by a branch-point series near -1/e, log1p in the mid range and the
/// asymptotic log expansion for large y. Inputs up to 1e-15 below -1/e are clamped to the branch
/// point; anything further below throws std::domain_error.
double lambert_w0(double y);

/// Complex square matrix that equals its conjugate transpose.
///
/// Construction checks the Hermitian property (1e-12 per element, scaled by the largest entry
/// when it exceeds 1) and stores the exactly symmetrized matrix (A + A^H) / 2.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix &entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const CMatrix &entries() const { return entries_; }

  // Real part of v^H H v.
  double quadratic_form(const CVector &v) const;

 private:
  CMatrix entries_;
};

struct Eigenpair {
  double value = 0.0;   // rho_max
  CVector vector;       // unit-norm nu_max, first nonzero entry real and >= 0
  bool converged = false;
  bool degenerate = false;  // dominant eigenvalue (numerically) repeated
  int iterations = 0;
};

/// Dominant eigenpair of a Hermitian positive semidefinite matrix by power iteration.
///
/// Starts from the normalized all-ones vector. If that run stalls, or lands on an eigenvalue
/// below trace/dim (start vector orthogonal to the dominant eigenspace), it restarts once from
/// the first canonical basis vector. Convergence: ||H v - lambda v|| <= tol * max(1, lambda).
/// A non-converged result still carries the best iterate with converged = false.
Eigenpair max_eigenpair(const HermitianMatrix &h, double tol = 1e-10, int max_iter = 10000);

}  // namespace wpsn::numerics
