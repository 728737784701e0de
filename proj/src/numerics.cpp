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

#include "wpsn/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace wpsn::numerics {

double lambert_w0(double y) {
  constexpr double branch_point = -1.0 / kE;
  if (std::isnan(y)) throw std::domain_error("lambert_w0: argument is NaN");
  if (y < branch_point) {
    if (y >= branch_point - 1e-15) return -1.0;
    throw std::domain_error("lambert_w0: argument " + std::to_string(y) + " below -1/e");
  }
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return y;

  double w;
  if (y < -0.25) {
    // Series in p = sqrt(2(e*y + 1)) around the branch point.
    const double p = std::sqrt(std::max(0.0, 2.0 * (kE * y + 1.0)));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (y < 3.0) {
    w = std::log1p(y);
  } else {
    const double l1 = std::log(y);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - y;
    const double wp1 = w + 1.0;
    if (wp1 <= 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (w < -1.0) w = -1.0;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

HermitianMatrix::HermitianMatrix(const CMatrix &entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0)
    throw std::invalid_argument("HermitianMatrix: matrix must be square and non-empty");
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12 * scale))
    throw std::invalid_argument("HermitianMatrix: matrix is not Hermitian (max |A - A^H| = " +
                                std::to_string(asym) + ")");
  entries_ = 0.5 * (entries + entries.adjoint());
}

double HermitianMatrix::quadratic_form(const CVector &v) const {
  return std::real(v.dot(entries_ * v));
}

namespace {

struct PowerRun {
  double value = 0.0;
  CVector vector;
  bool converged = false;
  int iterations = 0;
};

PowerRun power_run(const CMatrix &a, CVector x, double tol, int max_iter) {
  x.normalize();
  PowerRun run;
  for (int it = 1; it <= max_iter; ++it) {
    const CVector y = a * x;
    const double lambda = std::real(x.dot(y));
    const double residual = (y - lambda * x).norm();
    run.value = lambda;
    run.vector = x;
    run.iterations = it;
    if (residual <= tol * std::max(1.0, std::abs(lambda))) {
      run.converged = true;
      return run;
    }
    const double ny = y.norm();
    if (ny == 0.0) break;
    x = y / ny;
  }
  return run;
}

// Rotates v so that its first non-negligible entry is real and non-negative.
void fix_global_phase(CVector &v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-12) {
      v *= std::conj(v(i)) / mag;
      v(i) = cdouble(std::real(v(i)), 0.0);
      return;
    }
  }
}

// One-sided test: a Rayleigh quotient of the deflated matrix close to lambda proves the
// dominant eigenvalue is repeated. A short run can miss slow cases, never invents one.
bool dominant_is_repeated(const CMatrix &a, const CVector &v, double lambda) {
  const Eigen::Index n = a.rows();
  if (n < 2) return false;
  const CMatrix deflated = a - lambda * v * v.adjoint();
  CVector x = CVector::Ones(n);
  x -= v * v.dot(x);
  for (Eigen::Index j = 0; x.norm() < 1e-8 && j < n; ++j) {
    x = CVector::Unit(n, j);
    x -= v * v.dot(x);
  }
  if (x.norm() < 1e-8) return false;
  x.normalize();
  const double threshold = lambda - 1e-8 * std::max(std::abs(lambda), 1e-300);
  for (int it = 0; it < 200; ++it) {
    const CVector y = deflated * x;
    const double rq = std::real(x.dot(y));
    if (rq >= threshold) return true;
    CVector next = y - v * v.dot(y);
    const double nn = next.norm();
    if (nn == 0.0) return false;
    x = next / nn;
  }
  return false;
}

}  // namespace

Eigenpair max_eigenpair(const HermitianMatrix &h, double tol, int max_iter) {
  const CMatrix &a = h.entries();
  const Eigen::Index n = h.dim();
  const double mean_eig = std::real(a.trace()) / static_cast<double>(n);

  PowerRun run = power_run(a, CVector::Ones(n), tol, max_iter);
  const double slack = tol * std::max(1.0, std::abs(mean_eig));
  if (!run.converged || run.value < mean_eig - slack) {
    PowerRun reseeded = power_run(a, CVector::Unit(n, 0), tol, max_iter);
    const int total = run.iterations + reseeded.iterations;
    const bool take = (reseeded.converged == run.converged) ? reseeded.value > run.value
                                                            : reseeded.converged;
    if (take) run = std::move(reseeded);
    run.iterations = total;
  }

  Eigenpair out;
  out.value = run.value;
  out.vector = std::move(run.vector);
  out.converged = run.converged;
  out.iterations = run.iterations;
  fix_global_phase(out.vector);
  out.degenerate = !out.converged || dominant_is_repeated(a, out.vector, out.value);
  return out;
}

}  // namespace wpsn::numerics
