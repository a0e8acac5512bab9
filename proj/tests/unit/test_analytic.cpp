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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qib/analytic.hpp"
#include "qib/error.hpp"
#include "qib/qib_engine.hpp"

using namespace qib;

namespace {

// Best (1 - beta) H(T) over all maps {0..d-1} -> {0..n-1}, by enumeration.
double enumerate_copy(int d, int n, double beta) {
  std::vector<int> map(static_cast<std::size_t>(d), 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (int t : map) ++count[static_cast<std::size_t>(t)];
    double h = 0.0;
    for (int c : count)
      if (c > 0) h -= c / static_cast<double>(d) * std::log(c / static_cast<double>(d));
    best = std::min(best, (1.0 - beta) * h);
    int i = 0;
    while (i < d && ++map[static_cast<std::size_t>(i)] == n) map[static_cast<std::size_t>(i++)] = 0;
    if (i == d) break;
  }
  return best;
}

}  // namespace

TEST_CASE("bounds") {
  CHECK(quantum_bound(2, 2.0) == doctest::Approx(-std::log(2.0)));
  CHECK(classical_bound(3, 2, 2.0) == doctest::Approx(-0.636514168294813).epsilon(1e-12));
  CHECK(classical_bound(4, 2, 2.0) == doctest::Approx(quantum_bound(2, 2.0)));
  CHECK_THROWS_AS(classical_bound(3, 3, 2.0), ValidationError);
  CHECK_THROWS_AS(classical_bound(3, 0, 2.0), ValidationError);
  for (int d = 3; d <= 7; ++d)
    for (int n = 2; n < d; ++n)
      CHECK(classical_bound(d, n, 2.5) == doctest::Approx(enumerate_copy(d, n, 2.5)).epsilon(1e-12));
}

TEST_CASE("copy state") {
  const CQState s = copy_state(4, 2);
  CHECK(s.size_x() == 8);
  CHECK(s.dim_y() == 4);
  CHECK(holevo_information(s) == doctest::Approx(std::log(4.0)));
  CHECK_THROWS_AS(copy_state(0), ValidationError);
}

TEST_CASE("fourier feature channel attains the quantum bound") {
  for (auto [d, n] : {std::pair{3, 2}, {5, 2}, {5, 3}, {7, 4}}) {
    const CQChannel c = fourier_feature_channel(d, n);
    CHECK(c.dim_t() == n);
    CHECK_FALSE(c.classical());
    const double f = oracle::f_alpha(copy_state(d), c, 1.0, 2.0);
    CHECK(std::abs(f - quantum_bound(n, 2.0)) < 1e-9);
  }
  CHECK_THROWS_AS(fourier_feature_channel(3, 3), ValidationError);
}

TEST_CASE("brute force matches the classical bound") {
  for (auto [d, n] : {std::pair{3, 2}, {5, 2}, {5, 3}, {7, 4}}) {
    const DeterministicOptimum o = brute_force_classical_opt(copy_state(d), n, 1.0, 2.0);
    CHECK(std::abs(o.value - classical_bound(d, n, 2.0)) < 1e-9);
    CHECK(o.map.size() == static_cast<std::size_t>(d));
    CHECK(objective_f_alpha(copy_state(d), CQChannel::deterministic(o.map, n), 1.0, 2.0) ==
          doctest::Approx(o.value));
  }
  CHECK_THROWS_AS(brute_force_classical_opt(copy_state(30), 30, 1.0, 2.0), ValidationError);
}

TEST_CASE("advantage gap") {
  const AdvantageReport r = advantage_gap(3, 2, 1.0, 2.0);
  CHECK(std::abs(r.gap - (std::log(2.0) - 0.636514)) < 1e-6);
  CHECK(r.gap == doctest::Approx(r.classical - r.quantum));
  CHECK(std::abs(r.achieved_quantum - r.quantum) < 1e-9);
  CHECK(advantage_gap(4, 2, 1.0, 2.0).gap == doctest::Approx(0.0));
  CHECK_THROWS_AS(advantage_gap(3, 2, 1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(advantage_gap(3, 1, 1.0, 2.0), ValidationError);
}
