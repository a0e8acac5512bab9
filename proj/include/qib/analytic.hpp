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

// Closed-form values for the uniform classical copy state, the Fourier
// feature channel that attains the quantum value, and an exhaustive search
// over deterministic classical maps.

#pragma once

#include <vector>

#include "qib/cq_model.hpp"

namespace qib {

/// (1 - beta) ln n.
double quantum_bound(int n, double beta);

/// (1 - beta) [ l(m+1)/d ln(d/(m+1)) + (n-l)m/d ln(d/m) ] with d = mn + l.
/// Throws ValidationError unless 1 <= n < d.
double classical_bound(int d, int n, double beta);

/// Pure states n^{-1/2} sum_t exp(2 pi i x1 t / d)|t> for x = x1 * k + x2,
/// independent of x2. Throws NumericalError if the uniform average is not
/// identity / n.
CQChannel fourier_feature_channel(int d, int n, int k = 1);

/// Uniform P_X over d * k points with rho_{Y|x1 * k + x2} = |x1><x1|.
CQState copy_state(int d, int k = 1);

struct DeterministicOptimum {
  double value = 0.0;
  /// map[x] = t.
  std::vector<int> map;
};

inline constexpr double kMaxEnumeration = 1e7;

/// Minimum of f_alpha over all deterministic maps X -> T, enumerated
/// lexicographically with map[0] most significant; the first map wins ties
/// (within 1e-12). Throws ValidationError when dim_t^|X| exceeds 1e7.
DeterministicOptimum brute_force_classical_opt(const CQState& state, int dim_t, double alpha,
                                               double beta);

struct AdvantageReport {
  double quantum = 0.0;
  double classical = 0.0;
  /// classical - quantum; zero when n divides d.
  double gap = 0.0;
  /// f_alpha of fourier_feature_channel(d, n) on copy_state(d).
  double achieved_quantum = 0.0;
};

/// Requires beta >= 1 >= alpha and 2 <= n < d.
AdvantageReport advantage_gap(int d, int n, double alpha, double beta);

}  // namespace qib
