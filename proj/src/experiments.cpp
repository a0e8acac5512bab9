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

#include "qib/experiments.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "qib/diagnostics.hpp"
#include "qib/error.hpp"
#include "qib/parallel.hpp"
#include "qib/qdib_engine.hpp"
#include "qib/random.hpp"

namespace qib {

DensityOperator qubit_density(double theta, double lambda) {
  ComplexMatrix u(2, 2);
  const Complex c = std::cos(theta), s = Complex(0.0, std::sin(theta));
  u << c, s, s, c;
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0 - lambda;
  d(1, 1) = lambda;
  return DensityOperator::assume_valid(HermitianOperator(u * d * u.adjoint()));
}

CQState gen_random_qubit_ensemble(int size_x, std::uint64_t seed) {
  if (size_x < 1) throw ValidationError("gen_random_qubit_ensemble: sizeX must be >= 1");
  Rng rng(seed);
  std::vector<DensityOperator> rho;
  rho.reserve(static_cast<std::size_t>(size_x));
  for (int x = 0; x < size_x; ++x) {
    const double theta = rng.uniform(0.0, std::numbers::pi);
    const double lambda = rng.uniform(0.0, 0.5);
    rho.push_back(qubit_density(theta, lambda));
  }
  return CQState(RealVector::Constant(size_x, 1.0 / size_x), std::move(rho));
}

std::vector<GammaRun> gamma_sweep(const CQState& state, const ObjectiveConfig& config,
                                  const std::vector<double>& gammas, int jobs) {
  config.validate();
  const CQChannel initial =
      random_channel(config.dim_t, state.size_x(), config.classical, config.seed);
  std::vector<GammaRun> out(gammas.size(), GammaRun{0.0, RunResult{initial, {}}});
  parallel_for(gammas.size(), jobs, [&](std::size_t i) {
    ObjectiveConfig c = config;
    c.gamma = gammas[i];
    out[i] = GammaRun{gammas[i], run_qib(state, c, initial)};
  });
  return out;
}

std::vector<BetaRow> beta_sweep(const CQState& state, const ObjectiveConfig& config,
                                const std::vector<double>& betas, int kappa_samples, int jobs) {
  config.validate();
  const double kappa = estimate_kappa(state, kappa_samples, derive_seed(config.seed, "kappa", 0));
  std::vector<BetaRow> out(betas.size());
  parallel_for(betas.size(), jobs, [&](std::size_t i) {
    ObjectiveConfig c = config;
    c.beta = betas[i];
    c.seed = derive_seed(config.seed, "beta-sweep", i);
    const RunResult r = run_qib(state, c);
    const IterationRecord& last = r.trace.records.back();
    out[i] = BetaRow{betas[i], last.f, last.h_t, last.i_tx, last.i_ty, kappa, r.trace.status};
  });
  return out;
}

// ---- classification ------------------------------------------------------

LabeledDataset gen_classifier_dataset(std::uint64_t seed) {
  Rng rng(seed);
  const int cells = kClassifierX1 * kClassifierX2;
  const std::vector<int> grid_perm = rng.permutation(cells);

  auto noisy = [&](int v, int edge) {
    const double width = v == edge ? 1.2 : 1.0;
    return static_cast<int>(std::floor(v + rng.uniform(0.0, width)));
  };

  std::vector<LabeledRecord> records;
  records.reserve(kClassifierRecords);
  for (int i = 0; i < kClassifierRecords; ++i) {
    const int y = static_cast<int>(rng.below(kClassifierLabels));
    const int x1 = y;
    // Eleven equally likely slots: two for x2 = x1, one for every other value.
    const int slot = static_cast<int>(rng.below(kClassifierX2 + 1));
    int x2 = x1;
    if (slot >= 2) {
      x2 = slot - 2;
      if (x2 >= x1) ++x2;
    }
    const int observed = grid_perm[static_cast<std::size_t>(x1 * kClassifierX2 + x2)];
    const int o1 = observed / kClassifierX2, o2 = observed % kClassifierX2;
    const int n1 = noisy(o1, kClassifierX1 - 1);
    const int n2 = noisy(o2, kClassifierX2 - 1);
    records.push_back({n1, n2, y});
  }

  const std::vector<int> order = rng.permutation(kClassifierRecords);
  LabeledDataset ds;
  for (int i = 0; i < kClassifierRecords; ++i) {
    const LabeledRecord& r = records[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    (i < kClassifierRecords / 2 ? ds.train : ds.test).push_back(r);
  }
  return ds;
}

int EmpiricalState::index_of(int x1, int x2) const {
  const auto it = std::lower_bound(cells.begin(), cells.end(), std::make_pair(x1, x2));
  if (it == cells.end() || *it != std::make_pair(x1, x2)) return -1;
  return static_cast<int>(it - cells.begin());
}

EmpiricalState empirical_cq_state(const std::vector<LabeledRecord>& records, int num_labels) {
  if (records.empty()) throw ValidationError("empirical_cq_state: empty dataset");
  if (num_labels < 1) throw ValidationError("empirical_cq_state: num_labels must be >= 1");
  std::map<std::pair<int, int>, RealVector> counts;
  for (const LabeledRecord& r : records) {
    if (r.y < 0 || r.y >= num_labels) {
      std::ostringstream msg;
      msg << "empirical_cq_state: label " << r.y << " outside [0, " << num_labels << ")";
      throw ValidationError(msg.str());
    }
    auto [it, inserted] = counts.try_emplace({r.x1, r.x2}, RealVector::Zero(num_labels));
    it->second(r.y) += 1.0;
  }
  const double total = static_cast<double>(records.size());
  std::vector<std::pair<int, int>> cells;
  std::vector<DensityOperator> rho;
  RealVector px(static_cast<Eigen::Index>(counts.size()));
  Eigen::Index i = 0;
  for (const auto& [cell, c] : counts) {
    cells.push_back(cell);
    const double n = c.sum();
    px(i++) = n / total;
    rho.push_back(DensityOperator::assume_valid(HermitianOperator::diagonal(c / n)));
  }
  return EmpiricalState{CQState(px, std::move(rho)), std::move(cells)};
}

double hs_kernel(const DensityOperator& a, const DensityOperator& b) {
  return a.matrix().cwiseProduct(b.matrix().transpose()).sum().real();
}

double hs_kernel(const CQChannel& channel, int x, int x2) {
  return hs_kernel(channel.sigma(x), channel.sigma(x2));
}

KernelClassifier train_classifier(const Eigen::MatrixXd& gram, const std::vector<int>& labels,
                                  int num_classes, double ridge) {
  const Eigen::Index n = gram.rows();
  if (gram.cols() != n || static_cast<std::size_t>(n) != labels.size() || n == 0)
    throw ValidationError("train_classifier: gram and labels disagree in size");
  if (!(ridge >= 0.0)) throw ValidationError("train_classifier: ridge must be >= 0");
  const Eigen::MatrixXd reg = gram + ridge * Eigen::MatrixXd::Identity(n, n);
  const Eigen::LLT<Eigen::MatrixXd> llt(reg);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "train_classifier: regularized gram is not positive definite at ridge " << ridge
        << "; increase the ridge";
    throw NumericalError(msg.str());
  }
  KernelClassifier model;
  model.coefficients.resize(n, num_classes);
  model.bias.resize(num_classes);
  for (int c = 0; c < num_classes; ++c) {
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = labels[static_cast<std::size_t>(i)] == c ? 1.0 : -1.0;
    const Eigen::VectorXd a = llt.solve(z);
    model.coefficients.col(c) = a;
    model.bias(c) = (z - gram * a).mean();
  }
  return model;
}

std::vector<int> predict(const KernelClassifier& model, const Eigen::MatrixXd& kernel_rows) {
  const Eigen::MatrixXd scores =
      (kernel_rows * model.coefficients).rowwise() + model.bias.transpose();
  std::vector<int> out(static_cast<std::size_t>(scores.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < scores.cols(); ++c)
      if (scores(i, c) > scores(i, best)) best = c;
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

namespace {

double accuracy(const std::vector<int>& predicted, const std::vector<LabeledRecord>& records) {
  int hits = 0;
  for (std::size_t i = 0; i < records.size(); ++i) hits += predicted[i] == records[i].y;
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

// Feature state of an arbitrary cell: the trained sigma_{T|x}, or the
// maximally mixed state when the cell never occurred in training.
DensityOperator feature(const EmpiricalState& es, const CQChannel& channel, int x1, int x2) {
  const int idx = es.index_of(x1, x2);
  return idx < 0 ? DensityOperator::maximally_mixed(channel.dim_t()) : channel.sigma(idx);
}

struct FeatureModel {
  KernelClassifier model;
  std::vector<DensityOperator> train_features;
};

FeatureModel fit_features(const EmpiricalState& es, const CQChannel& channel,
                          const std::vector<LabeledRecord>& train, double ridge) {
  FeatureModel fm;
  for (const LabeledRecord& r : train) fm.train_features.push_back(feature(es, channel, r.x1, r.x2));
  const auto n = static_cast<Eigen::Index>(train.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      gram(i, j) = gram(j, i) = hs_kernel(fm.train_features[static_cast<std::size_t>(i)],
                                          fm.train_features[static_cast<std::size_t>(j)]);
  std::vector<int> labels;
  for (const LabeledRecord& r : train) labels.push_back(r.y);
  fm.model = train_classifier(gram, labels, kClassifierLabels, ridge);
  return fm;
}

std::vector<int> predict_cells(const FeatureModel& fm, const EmpiricalState& es,
                               const CQChannel& channel,
                               const std::vector<std::pair<int, int>>& cells) {
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(cells.size()),
                       static_cast<Eigen::Index>(fm.train_features.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const DensityOperator f = feature(es, channel, cells[i].first, cells[i].second);
    for (std::size_t j = 0; j < fm.train_features.size(); ++j)
      rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          hs_kernel(f, fm.train_features[j]);
  }
  return predict(fm.model, rows);
}

std::vector<int> predict_linear(const std::vector<LabeledRecord>& train,
                                const std::vector<std::pair<int, int>>& cells, double ridge) {
  const auto n = static_cast<Eigen::Index>(train.size());
  auto k = [](int a1, int a2, int b1, int b2) { return double(a1) * b1 + double(a2) * b2; };
  Eigen::MatrixXd gram(n, n);
  std::vector<int> labels;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& a = train[static_cast<std::size_t>(i)];
    labels.push_back(a.y);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& b = train[static_cast<std::size_t>(j)];
      gram(i, j) = k(a.x1, a.x2, b.x1, b.x2);
    }
  }
  const KernelClassifier model = train_classifier(gram, labels, kClassifierLabels, ridge);
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(cells.size()), n);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& b = train[static_cast<std::size_t>(j)];
      rows(static_cast<Eigen::Index>(i), j) = k(cells[i].first, cells[i].second, b.x1, b.x2);
    }
  return predict(model, rows);
}

std::vector<std::pair<int, int>> cells_of(const std::vector<LabeledRecord>& records) {
  std::vector<std::pair<int, int>> out;
  out.reserve(records.size());
  for (const LabeledRecord& r : records) out.emplace_back(r.x1, r.x2);
  return out;
}

}  // namespace

ClassifyResult classify_pipeline(const ClassifyConfig& config) {
  config.objective.validate();
  const std::uint64_t seed = config.objective.seed;
  const LabeledDataset ds = gen_classifier_dataset(derive_seed(seed, "dataset", 0));
  EmpiricalState es = empirical_cq_state(ds.train, kClassifierLabels);

  ObjectiveConfig quantum = config.objective;
  quantum.seed = derive_seed(seed, "init", 0);
  quantum.classical = false;
  ObjectiveConfig classical = quantum;
  classical.classical = true;
  const RunResult rq = run_qib(es.state, quantum);
  const RunResult rc = run_qib(es.state, classical);

  ClassifyResult out{.grid = {}, .train_state = es};
  out.f_quantum = rq.trace.records.back().f;
  out.f_classical = rc.trace.records.back().f;
  out.status_quantum = rq.trace.status;
  out.status_classical = rc.trace.status;

  const auto test_cells = cells_of(ds.test);
  const auto train_cells = cells_of(ds.train);
  for (const auto& [x1, x2] : test_cells) out.unseen_test_records += es.index_of(x1, x2) < 0;
  if (out.unseen_test_records > 0) {
    std::ostringstream msg;
    msg << "classify: " << out.unseen_test_records
        << " test records fall in cells unseen during training; using the maximally mixed state";
    warn(msg.str());
  }

  const FeatureModel fq = fit_features(es, rq.channel, ds.train, config.ridge);
  const FeatureModel fc = fit_features(es, rc.channel, ds.train, config.ridge);
  out.acc_quantum = accuracy(predict_cells(fq, es, rq.channel, test_cells), ds.test);
  out.acc_classical = accuracy(predict_cells(fc, es, rc.channel, test_cells), ds.test);
  out.train_acc_quantum = accuracy(predict_cells(fq, es, rq.channel, train_cells), ds.train);
  out.train_acc_classical = accuracy(predict_cells(fc, es, rc.channel, train_cells), ds.train);
  out.acc_linear_ref = accuracy(predict_linear(ds.train, test_cells, config.ridge), ds.test);

  std::vector<std::pair<int, int>> grid;
  for (int x1 = 0; x1 <= kClassifierX1; ++x1)
    for (int x2 = 0; x2 <= kClassifierX2; ++x2) grid.emplace_back(x1, x2);
  const auto gq = predict_cells(fq, es, rq.channel, grid);
  const auto gc = predict_cells(fc, es, rc.channel, grid);
  const auto gl = predict_linear(ds.train, grid, config.ridge);
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.grid.push_back({grid[i].first, grid[i].second, gq[i], gc[i], gl[i]});
  return out;
}

// ---- sufficient statistics -----------------------------------------------

SuffStatsSpec SuffStatsSpec::from_seed(std::uint64_t seed) {
  SuffStatsSpec s;
  s.permutation_seed = derive_seed(seed, "permutation", 0);
  s.noise_seed = derive_seed(seed, "noise", 0);
  return s;
}

SuffStatsEnsemble gen_suffstats_ensemble(const SuffStatsSpec& spec) {
  if (spec.size_x1 < 1 || spec.size_x2 < 1)
    throw ValidationError("gen_suffstats_ensemble: |X1| and |X2| must be >= 1");
  if (!(spec.nu > 0.0)) throw ValidationError("gen_suffstats_ensemble: nu must be > 0");
  const int nx = spec.size_x1 * spec.size_x2;
  Rng perm_rng(spec.permutation_seed);
  Rng noise(spec.noise_seed);
  SuffStatsEnsemble out{CQState(RealVector::Ones(1), {DensityOperator::maximally_mixed(2)}),
                        perm_rng.permutation(nx)};
  const double half = 1.0 / std::sqrt(spec.nu);

  std::vector<DensityOperator> rho(static_cast<std::size_t>(nx), DensityOperator::maximally_mixed(2));
  for (int x1 = 0; x1 < spec.size_x1; ++x1) {
    for (int x2 = 0; x2 < spec.size_x2; ++x2) {
      const double r = noise.uniform(-half, half);
      const double rp = noise.uniform(-half, half);
      const double theta = std::numbers::pi * x1 / spec.size_x1 * (1.0 + r);
      double lambda = x1 / (4.0 * spec.size_x1) * (1.0 + rp);
      if (lambda < 0.0 || lambda > 1.0) {
        std::ostringstream msg;
        msg << "gen_suffstats_ensemble: lambda = " << lambda << " at (" << x1 << ", " << x2
            << ") clamped to [0, 1]";
        warn(msg.str());
        lambda = std::clamp(lambda, 0.0, 1.0);
      }
      const int latent = x1 * spec.size_x2 + x2;
      rho[static_cast<std::size_t>(out.permutation[static_cast<std::size_t>(latent)])] =
          qubit_density(theta, lambda);
    }
  }
  out.state = CQState(RealVector::Constant(nx, 1.0 / nx), std::move(rho));
  return out;
}

BaselineMetrics baseline_discard_x2(const CQState& state, const std::vector<int>& permutation,
                                    int size_x1, int size_x2, double beta) {
  const int nx = size_x1 * size_x2;
  if (state.size_x() != nx || static_cast<int>(permutation.size()) != nx)
    throw ValidationError("baseline_discard_x2: sizes disagree with |X1| |X2|");
  std::vector<int> map(static_cast<std::size_t>(nx), -1);
  for (int latent = 0; latent < nx; ++latent)
    map[static_cast<std::size_t>(permutation[static_cast<std::size_t>(latent)])] = latent / size_x2;
  const CQChannel ch = CQChannel::deterministic(map, size_x1);
  const InformationTerms t = information_terms(state, ch);
  return BaselineMetrics{t.f_alpha(0.0, beta), t.i_ty(), t.h_t};
}

ObjectiveConfig default_suffstats_config(const SuffStatsSpec& spec) {
  ObjectiveConfig c;
  c.alpha = 0.0;
  c.beta = 20.0;
  c.dim_t = spec.size_x1 * spec.size_x2;
  c.classical = true;
  return c;
}

SuffStatsResult suffstats_pipeline(const SuffStatsSpec& spec, const ObjectiveConfig& config) {
  SuffStatsEnsemble ens = gen_suffstats_ensemble(spec);
  RunResult run = run_qdib(ens.state, config);
  SuffStatsResult out{std::move(ens), std::move(run), {}, 0.0, 0.0, 0, -1};
  const CQState& st = out.ensemble.state;
  out.baseline =
      baseline_discard_x2(st, out.ensemble.permutation, spec.size_x1, spec.size_x2, config.beta);
  out.i_xy = holevo_information(st);
  const IterationRecord& last = out.run.trace.records.back();
  out.epsilon = out.i_xy - last.i_ty;
  out.support_t = last.support_t;
  for (const IterationRecord& r : out.run.trace.records) {
    if (r.f < out.baseline.f_dib) {
      out.updates_to_beat_baseline = r.iter - 1;
      break;
    }
  }
  return out;
}

}  // namespace qib
