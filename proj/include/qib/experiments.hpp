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

// Reproducible pipelines: the random qubit ensemble with gamma and beta
// sweeps, kernel classification with learned feature maps, and sufficient
// statistics extraction with QDIB.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qib/cq_model.hpp"
#include "qib/qib_engine.hpp"

namespace qib {

/// e^{i theta X} diag(1 - lambda, lambda) e^{-i theta X}, X the Pauli matrix.
DensityOperator qubit_density(double theta, double lambda);

/// Uniform P_X with theta_x ~ U[0, pi) and lambda_x ~ U[0, 1/2).
CQState gen_random_qubit_ensemble(int size_x, std::uint64_t seed);

struct GammaRun {
  double gamma = 0.0;
  RunResult result;
};

/// One run_qib per gamma, all from the initial channel seeded by config.seed.
std::vector<GammaRun> gamma_sweep(const CQState& state, const ObjectiveConfig& config,
                                  const std::vector<double>& gammas, int jobs = 1);

struct BetaRow {
  double beta = 0.0;
  double f = 0.0;
  double h_t = 0.0;
  double i_tx = 0.0;
  double i_ty = 0.0;
  double kappa_lower_bound = 0.0;
  RunStatus status = RunStatus::kMaxIters;
};

/// Converged metrics per beta. Run i starts from a channel seeded by
/// derive_seed(config.seed, "beta-sweep", i); gamma follows config (default
/// alpha).
std::vector<BetaRow> beta_sweep(const CQState& state, const ObjectiveConfig& config,
                                const std::vector<double>& betas, int kappa_samples = 200,
                                int jobs = 1);

// ---- classification ------------------------------------------------------

inline constexpr int kClassifierLabels = 3;
inline constexpr int kClassifierX1 = 3;
inline constexpr int kClassifierX2 = 10;
inline constexpr int kClassifierRecords = 400;

struct LabeledRecord {
  int x1 = 0;
  int x2 = 0;
  int y = 0;
};

struct LabeledDataset {
  std::vector<LabeledRecord> train;
  std::vector<LabeledRecord> test;
};

/// Labels uniform on {0,1,2}; latent x1 = y, latent x2 = x1 with probability
/// 2/11 and each other value with 1/11; a random bijection of the 3 x 10 grid;
/// per-coordinate noise U[0, 1.2) on x1 = 2 and on x2 = 9, U[0, 1) otherwise,
/// floored. 400 records split 50/50 by a seeded shuffle.
LabeledDataset gen_classifier_dataset(std::uint64_t seed);

struct EmpiricalState {
  CQState state;
  /// Distinct (x1, x2) cells in lexicographic order; cell i is symbol x = i.
  std::vector<std::pair<int, int>> cells;

  /// Symbol of a cell, or -1 if it never occurs.
  int index_of(int x1, int x2) const;
};

/// Empirical P(x) and label distributions encoded as diagonal rho_{Y|x}.
EmpiricalState empirical_cq_state(const std::vector<LabeledRecord>& records, int num_labels);

/// Tr[sigma_{T|x} sigma_{T|x2}].
double hs_kernel(const CQChannel& channel, int x, int x2);
double hs_kernel(const DensityOperator& a, const DensityOperator& b);

/// One-vs-rest kernel least squares. Column c of `coefficients` and bias(c)
/// score class c.
struct KernelClassifier {
  Eigen::MatrixXd coefficients;
  RealVector bias;
};

/// Solves (G + ridge I) a = z per class with z in {+1, -1}, then
/// b = mean(z - G a). Throws NumericalError if the system is not positive
/// definite.
KernelClassifier train_classifier(const Eigen::MatrixXd& gram, const std::vector<int>& labels,
                                  int num_classes, double ridge = 1e-3);

/// `kernel_rows(i, j)` = K(query i, training point j). Ties go to the lower
/// class index.
std::vector<int> predict(const KernelClassifier& model, const Eigen::MatrixXd& kernel_rows);

struct ClassifyConfig {
  /// Defaults: alpha = gamma = 1, beta = 15, one qubit of T.
  ObjectiveConfig objective = [] {
    ObjectiveConfig c;
    c.alpha = 1.0;
    c.beta = 15.0;
    c.dim_t = 2;
    c.max_iters = 2000;
    return c;
  }();
  double ridge = 1e-3;
};

struct GridPrediction {
  int x1 = 0;
  int x2 = 0;
  int quantum = 0;
  int classical = 0;
  int linear = 0;
};

struct ClassifyResult {
  double f_quantum = 0.0;
  double f_classical = 0.0;
  double acc_quantum = 0.0;
  double acc_classical = 0.0;
  double acc_linear_ref = 0.0;
  double train_acc_quantum = 0.0;
  double train_acc_classical = 0.0;
  RunStatus status_quantum = RunStatus::kMaxIters;
  RunStatus status_classical = RunStatus::kMaxIters;
  /// Test records whose cell never occurs in training.
  int unseen_test_records = 0;
  std::vector<GridPrediction> grid;
  EmpiricalState train_state;
};

/// Dataset and initial channel both derive from config.objective.seed; the
/// classical-T run differs from the quantum-T run only in the diagonal
/// restriction.
ClassifyResult classify_pipeline(const ClassifyConfig& config);

// ---- sufficient statistics -----------------------------------------------

struct SuffStatsSpec {
  int size_x1 = 5;
  int size_x2 = 20;
  /// Number of measurement repetitions; the noise half-width is 1/sqrt(nu).
  double nu = 20.0;
  std::uint64_t permutation_seed = 0;
  std::uint64_t noise_seed = 0;

  static SuffStatsSpec from_seed(std::uint64_t seed);
};

struct SuffStatsEnsemble {
  CQState state;
  /// permutation[x1 * size_x2 + x2] is the observed symbol of (x1, x2).
  std::vector<int> permutation;
};

/// theta = pi x1/|X1| (1 + r), lambda = x1/(4|X1|)(1 + r') with r, r' uniform
/// in (-1/sqrt(nu), 1/sqrt(nu)); lambda is clamped to [0, 1] with a warning.
SuffStatsEnsemble gen_suffstats_ensemble(const SuffStatsSpec& spec);

struct BaselineMetrics {
  double f_dib = 0.0;
  double i_x1y = 0.0;
  double h_t = 0.0;
};

/// The deterministic map x -> x1 after undoing the permutation.
BaselineMetrics baseline_discard_x2(const CQState& state, const std::vector<int>& permutation,
                                    int size_x1, int size_x2, double beta);

struct SuffStatsResult {
  SuffStatsEnsemble ensemble;
  RunResult run;
  BaselineMetrics baseline;
  double i_xy = 0.0;
  /// I(X:Y) - I(T:Y) at the final channel.
  double epsilon = 0.0;
  int support_t = 0;
  /// Updates until f_DIB first drops below the baseline; -1 if never.
  int updates_to_beat_baseline = -1;
};

/// Runs run_qdib with the given config (defaults: beta = 20, classical T with
/// |T| = |X|).
SuffStatsResult suffstats_pipeline(const SuffStatsSpec& spec, const ObjectiveConfig& config);
ObjectiveConfig default_suffstats_config(const SuffStatsSpec& spec);

}  // namespace qib
