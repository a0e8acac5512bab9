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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "qib/error.hpp"
#include "qib/experiments.hpp"
#include "qib/parallel.hpp"

using namespace qib;

TEST_CASE("qubit density") {
  const DensityOperator r = qubit_density(0.0, 0.25);
  CHECK(r.matrix()(0, 0).real() == doctest::Approx(0.75));
  CHECK(r.matrix()(1, 1).real() == doctest::Approx(0.25));
  const DensityOperator flip = qubit_density(std::numbers::pi / 2, 0.0);
  CHECK(flip.matrix()(1, 1).real() == doctest::Approx(1.0));
  const DensityOperator q = qubit_density(0.3, 0.1);
  CHECK(oracle::entropy(q.matrix()) == doctest::Approx(-0.9 * std::log(0.9) - 0.1 * std::log(0.1)));
}

TEST_CASE("random qubit ensemble") {
  const CQState a = gen_random_qubit_ensemble(16, 3), b = gen_random_qubit_ensemble(16, 3);
  CHECK(a.size_x() == 16);
  CHECK(a.dim_y() == 2);
  for (int x = 0; x < 16; ++x) {
    CHECK(a.px()(x) == doctest::Approx(1.0 / 16));
    CHECK(a.rho(x).matrix() == b.rho(x).matrix());
    // lambda < 1/2 keeps every state away from the maximally mixed one.
    CHECK(oracle::entropy(a.rho(x).matrix()) < std::log(2.0));
  }
  CHECK(gen_random_qubit_ensemble(16, 4).rho(0).matrix() != a.rho(0).matrix());
}

TEST_CASE("gamma sweep shares the initial channel") {
  const CQState s = gen_random_qubit_ensemble(8, 1);
  ObjectiveConfig cfg;
  cfg.beta = 5.0;
  cfg.dim_t = 2;
  cfg.classical = true;
  cfg.max_iters = 30;
  const auto serial = gamma_sweep(s, cfg, {1.0, 0.5}, 1);
  const auto threaded = gamma_sweep(s, cfg, {1.0, 0.5}, 2);
  REQUIRE(serial.size() == 2);
  CHECK(serial[0].result.trace.records[0].f == serial[1].result.trace.records[0].f);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(serial[i].gamma == threaded[i].gamma);
    CHECK(serial[i].result.trace.records.back().f == threaded[i].result.trace.records.back().f);
  }
}

TEST_CASE("beta sweep") {
  const CQState s = gen_random_qubit_ensemble(6, 2);
  ObjectiveConfig cfg;
  cfg.dim_t = 2;
  const auto rows = beta_sweep(s, cfg, {0.1, 10.0}, 20, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].i_ty < 1e-3);
  CHECK(rows[1].i_ty > rows[0].i_ty);
  CHECK(rows[0].kappa_lower_bound == rows[1].kappa_lower_bound);
  for (const BetaRow& r : rows) CHECK(r.status == RunStatus::kConverged);
}

TEST_CASE("classifier dataset") {
  const LabeledDataset d = gen_classifier_dataset(5);
  CHECK(d.train.size() + d.test.size() == static_cast<std::size_t>(kClassifierRecords));
  CHECK(d.train.size() == d.test.size());
  for (const auto* part : {&d.train, &d.test})
    for (const LabeledRecord& r : *part) {
      CHECK(r.x1 >= 0);
      CHECK(r.x1 <= kClassifierX1);
      CHECK(r.x2 >= 0);
      CHECK(r.x2 <= kClassifierX2);
      CHECK(r.y >= 0);
      CHECK(r.y < kClassifierLabels);
    }
  const LabeledDataset again = gen_classifier_dataset(5);
  CHECK(again.train[7].x2 == d.train[7].x2);
}

TEST_CASE("empirical state") {
  const std::vector<LabeledRecord> recs{{0, 0, 0}, {0, 0, 1}, {2, 3, 2}, {0, 0, 0}};
  const EmpiricalState e = empirical_cq_state(recs, 3);
  REQUIRE(e.cells.size() == 2);
  CHECK(e.index_of(0, 0) == 0);
  CHECK(e.index_of(2, 3) == 1);
  CHECK(e.index_of(1, 1) == -1);
  CHECK(e.state.px()(0) == doctest::Approx(0.75));
  CHECK(e.state.rho(0).matrix()(0, 0).real() == doctest::Approx(2.0 / 3));
  CHECK(e.state.rho(1).matrix()(2, 2).real() == doctest::Approx(1.0));
}

TEST_CASE("kernel classifier separates a toy problem") {
  // Four points, two classes, orthogonal pure features.
  std::vector<DensityOperator> feats{
      DensityOperator::diagonal(RealVector::Unit(2, 0)), DensityOperator::diagonal(RealVector::Unit(2, 0)),
      DensityOperator::diagonal(RealVector::Unit(2, 1)), DensityOperator::diagonal(RealVector::Unit(2, 1))};
  Eigen::MatrixXd g(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = hs_kernel(feats[i], feats[j]);
  CHECK(g(0, 1) == doctest::Approx(1.0));
  CHECK(g(0, 2) == doctest::Approx(0.0));
  const KernelClassifier m = train_classifier(g, {0, 0, 1, 1}, 2);
  CHECK(predict(m, g) == std::vector<int>{0, 0, 1, 1});
  const CQChannel c(feats, true);
  CHECK(hs_kernel(c, 0, 3) == doctest::Approx(0.0));
  CHECK_THROWS(train_classifier(g, {0, 0, 1}, 2));
}

TEST_CASE("classify pipeline") {
  ClassifyConfig cfg;
  cfg.objective.seed = 3;
  const ClassifyResult a = classify_pipeline(cfg), b = classify_pipeline(cfg);
  CHECK(a.f_quantum == b.f_quantum);
  CHECK(a.acc_quantum == b.acc_quantum);
  CHECK(a.f_quantum < a.f_classical);
  CHECK(a.grid.size() == static_cast<std::size_t>((kClassifierX1 + 1) * (kClassifierX2 + 1)));
  for (double acc : {a.acc_quantum, a.acc_classical, a.acc_linear_ref}) {
    CHECK(acc >= 0.0);
    CHECK(acc <= 1.0);
  }
}

TEST_CASE("suffstats ensemble and baseline") {
  const SuffStatsSpec spec = SuffStatsSpec::from_seed(4);
  const SuffStatsEnsemble e = gen_suffstats_ensemble(spec);
  const int n = spec.size_x1 * spec.size_x2;
  CHECK(e.state.size_x() == n);
  std::vector<int> sorted = e.permutation;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i) CHECK(sorted[i] == i);

  std::vector<int> map(static_cast<std::size_t>(n));
  for (int x1 = 0; x1 < spec.size_x1; ++x1)
    for (int x2 = 0; x2 < spec.size_x2; ++x2) map[e.permutation[x1 * spec.size_x2 + x2]] = x1;
  const CQChannel det = CQChannel::deterministic(map, spec.size_x1);
  const BaselineMetrics b = baseline_discard_x2(e.state, e.permutation, spec.size_x1, spec.size_x2, 20.0);
  CHECK(b.f_dib == doctest::Approx(oracle::f_alpha(e.state, det, 0.0, 20.0)).epsilon(1e-10));
  CHECK(b.i_x1y == doctest::Approx(mutual_info_TY(e.state, det)).epsilon(1e-10));
  CHECK(b.h_t == doctest::Approx(std::log(spec.size_x1)).epsilon(1e-10));

  const ObjectiveConfig cfg = default_suffstats_config(spec);
  CHECK(cfg.alpha == 0.0);
  CHECK(cfg.beta == 20.0);
  CHECK(cfg.dim_t == n);
  CHECK(cfg.classical);
}

TEST_CASE("parallel_for rethrows the first failure") {
  std::atomic<int> hits{0};
  parallel_for(10, 3, [&](std::size_t) { ++hits; });
  CHECK(hits == 10);
  CHECK_THROWS_WITH(parallel_for(10, 3,
                                 [](std::size_t i) {
                                   if (i == 4 || i == 7) throw std::runtime_error(std::to_string(i));
                                 }),
                    "4");
}
