// Copyright 2026 The quantum-bottleneck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qib/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qib/error.hpp"

namespace qib {

double quantum_bound(int n, double beta) { return (1.0 - beta) * std::log(n); }

double classical_bound(int d, int n, double beta) {
  if (n < 1 || n >= d) {
    std::ostringstream msg;
    msg << "classical_bound: requires 1 <= n < d, got d = " << d << ", n = " << n;
    throw ValidationError(msg.str());
  }
  const int m = d / n, l = d % n;
  const double dd = d;
  double h = (n - l) * m / dd * std::log(dd / m);
  if (l > 0) h += l * (m + 1) / dd * std::log(dd / (m + 1));
  return (1.0 - beta) * h;
}

CQChannel fourier_feature_channel(int d, int n, int k) {
  if (n < 2 || n >= d || k < 1) {
    std::ostringstream msg;
    msg << "fourier_feature_channel: requires 2 <= n < d and k >= 1, got d = " << d
        << ", n = " << n << ", k = " << k;
    throw ValidationError(msg.str());
  }
  std::vector<DensityOperator> states;
  states.reserve(static_cast<std::size_t>(d) * k);
  ComplexMatrix avg = ComplexMatrix::Zero(n, n);
  for (int x1 = 0; x1 < d; ++x1) {
    ComplexVector psi(n);
    for (int t = 0; t < n; ++t)
      psi(t) = std::polar(1.0 / std::sqrt(n), 2.0 * std::numbers::pi * x1 * t / d);
    const DensityOperator rho = DensityOperator::pure(psi);
    avg += rho.matrix() / d;
    for (int x2 = 0; x2 < k; ++x2) states.push_back(rho);
  }
  const double err = (avg - ComplexMatrix::Identity(n, n) / n).norm();
  if (err > 1e-12) {
    std::ostringstream msg;
    msg << "fourier_feature_channel: average state deviates from identity/n by " << err;
    throw NumericalError(msg.str());
  }
  return CQChannel(std::move(states), false);
}

CQState copy_state(int d, int k) {
  if (d < 1 || k < 1) throw ValidationError("copy_state: requires d >= 1 and k >= 1");
  std::vector<DensityOperator> rho;
  rho.reserve(static_cast<std::size_t>(d) * k);
  for (int x1 = 0; x1 < d; ++x1) {
    RealVector p = RealVector::Zero(d);
    p(x1) = 1.0;
    const DensityOperator r = DensityOperator::diagonal(p);
    for (int x2 = 0; x2 < k; ++x2) rho.push_back(r);
  }
  return CQState(RealVector::Constant(d * k, 1.0 / (d * k)), std::move(rho));
}

namespace {

double xlogx_sum(const RealVector& v) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) > 0.0) s += v(i) * std::log(v(i));
  return s;
}

}  // namespace

DeterministicOptimum brute_force_classical_opt(const CQState& state, int dim_t, double alpha,
                                               double beta) {
  (void)alpha;  // H(T|X) vanishes on deterministic maps
  const int nx = state.size_x(), dy = state.dim_y();
  if (dim_t < 1) throw ValidationError("brute_force_classical_opt: dimT must be >= 1");
  if (nx * std::log(static_cast<double>(dim_t)) > std::log(kMaxEnumeration)) {
    std::ostringstream msg;
    msg << "brute_force_classical_opt: " << dim_t << "^" << nx
        << " maps exceed the enumeration limit of 1e7; use random restarts of run_qib instead";
    throw ValidationError(msg.str());
  }

  bool diagonal_y = true;
  for (int x = 0; x < nx; ++x) diagonal_y = diagonal_y && is_diagonal(state.rho(x).matrix());
  const double h_y = von_neumann_entropy(rho_Y(state));

  std::vector<ComplexMatrix> weighted(static_cast<std::size_t>(nx));
  for (int x = 0; x < nx; ++x) weighted[static_cast<std::size_t>(x)] = state.px()(x) * state.rho(x).matrix();

  std::vector<int> map(static_cast<std::size_t>(nx), 0);
  DeterministicOptimum best;
  bool have = false;
  std::vector<ComplexMatrix> blocks(static_cast<std::size_t>(dim_t));
  RealVector pt(dim_t);
  while (true) {
    pt.setZero();
    for (auto& b : blocks) b = ComplexMatrix::Zero(dy, dy);
    for (int x = 0; x < nx; ++x) {
      const auto t = static_cast<std::size_t>(map[static_cast<std::size_t>(x)]);
      pt(static_cast<Eigen::Index>(t)) += state.px()(x);
      blocks[t] += weighted[static_cast<std::size_t>(x)];
    }
    // H(YT) = -sum_t Tr B_t ln B_t for the block-diagonal joint operator.
    double h_yt = 0.0;
    for (const ComplexMatrix& b : blocks) {
      h_yt -= diagonal_y ? xlogx_sum(b.diagonal().real())
                         : xlogx_sum(eigvals_hermitian(HermitianOperator(b)));
    }
    const double h_t = -xlogx_sum(pt);
    const double f = h_t - beta * (h_t + h_y - h_yt);
    if (!have || f < best.value - 1e-12) {
      best.value = f;
      best.map = map;
      have = true;
    }
    int pos = nx - 1;
    while (pos >= 0 && ++map[static_cast<std::size_t>(pos)] == dim_t) {
      map[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return best;
}

AdvantageReport advantage_gap(int d, int n, double alpha, double beta) {
  if (!(beta >= 1.0) || !(alpha <= 1.0) || alpha < 0.0) {
    std::ostringstream msg;
    msg << "advantage_gap: requires beta >= 1 >= alpha >= 0, got alpha = " << alpha
        << ", beta = " << beta;
    throw ValidationError(msg.str());
  }
  if (n < 2 || n >= d) {
    std::ostringstream msg;
    msg << "advantage_gap: requires 2 <= n < d, got d = " << d << ", n = " << n;
    throw ValidationError(msg.str());
  }
  AdvantageReport r;
  r.quantum = quantum_bound(n, beta);
  r.classical = classical_bound(d, n, beta);
  r.gap = r.classical - r.quantum;
  r.achieved_quantum = objective_f_alpha(copy_state(d), fourier_feature_channel(d, n), alpha, beta);
  return r;
}

}  // namespace qib
