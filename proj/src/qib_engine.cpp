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

#include "qib/qib_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "engine_internal.hpp"
#include "qib/error.hpp"
#include "qib/random.hpp"

namespace qib {

namespace detail {

namespace {

HermitianOperator diagonal_log(const ComplexMatrix& m) {
  RealVector d(m.rows());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::log(std::max(m(i, i).real(), kLogFloor));
  return HermitianOperator::diagonal(d);
}

HermitianOperator log_of(const SpectralDecomposition& s) {
  return apply_spectral(s, [](double l) { return std::log(std::max(l, kLogFloor)); });
}

}  // namespace

Evaluation evaluate(const CQChannel& channel, const CQState& state, bool with_log_sigma) {
  const bool vectors = with_log_sigma && !channel.classical();
  Evaluation ev{analyze(channel, state, vectors), {}, {}, {}};
  ev.log_sigma_t = log_of(ev.analysis.sigma_t_spec);
  ev.log_sigma_yt = log_of(ev.analysis.sigma_yt_spec);
  if (with_log_sigma) {
    ev.log_sigma.reserve(static_cast<std::size_t>(channel.size_x()));
    for (int x = 0; x < channel.size_x(); ++x) {
      ev.log_sigma.push_back(channel.classical()
                                 ? diagonal_log(channel.sigma(x).matrix())
                                 : log_of(ev.analysis.sigma_x_spec[static_cast<std::size_t>(x)]));
    }
  }
  return ev;
}

RealVector cross_log_rho_y(const CQState& state) {
  const HermitianOperator log_rho_y = matrix_log_supported(rho_Y(state));
  RealVector out(state.size_x());
  for (int x = 0; x < state.size_x(); ++x)
    out(x) = trace_product(state.rho(x).matrix(), log_rho_y.matrix());
  return out;
}

FOperatorFamily f_from(const CQState& state, const CQChannel& channel, const Evaluation& ev,
                       const RealVector& cross, double alpha, double beta) {
  const int dt = channel.dim_t(), dy = state.dim_y();
  const ComplexMatrix eye = ComplexMatrix::Identity(dt, dt);
  const ComplexMatrix base = (beta - 1.0) * ev.log_sigma_t.matrix();
  FOperatorFamily out;
  out.reserve(static_cast<std::size_t>(channel.size_x()));
  for (int x = 0; x < channel.size_x(); ++x) {
    ComplexMatrix f = base + (beta * cross(x)) * eye;
    if (alpha != 0.0) f += alpha * ev.log_sigma[static_cast<std::size_t>(x)].matrix();
    if (beta != 0.0)
      f -= beta * contract_second(ev.log_sigma_yt.matrix(), state.rho(x).matrix(), dt, dy).matrix();
    out.push_back(hermitize(f));
  }
  return out;
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum().real();
}

double divergence_from_logs(const CQState& state, const CQChannel& a,
                            const std::vector<HermitianOperator>& log_a,
                            const std::vector<HermitianOperator>& log_b) {
  double d = 0.0;
  for (int x = 0; x < state.size_x(); ++x) {
    const double p = state.px()(x);
    if (p == 0.0) continue;
    const auto i = static_cast<std::size_t>(x);
    d += p * trace_product(a.sigma(x).matrix(), log_a[i].matrix() - log_b[i].matrix());
  }
  return d;
}

double l1_distance(const CQState& state, const CQChannel& a, const CQChannel& b) {
  double d = 0.0;
  for (int x = 0; x < state.size_x(); ++x) {
    const double p = state.px()(x);
    if (p == 0.0) continue;
    const ComplexMatrix diff = a.sigma(x).matrix() - b.sigma(x).matrix();
    if (a.classical() && b.classical()) {
      d += p * diff.diagonal().cwiseAbs().sum();
    } else {
      d += p * trace_norm(HermitianOperator(diff));
    }
  }
  return d;
}

int support_size(const ChannelAnalysis& analysis) {
  return static_cast<int>((analysis.sigma_t_spec.eigenvalues.array() > 1e-9).count());
}

}  // namespace detail

namespace {

using detail::Evaluation;

UpdateResult update_from(const CQChannel& channel, const Evaluation& ev, const FOperatorFamily& f,
                         double gamma) {
  const int nx = channel.size_x();
  std::vector<DensityOperator> out;
  out.reserve(static_cast<std::size_t>(nx));
  RealVector log_eta(nx);
  for (int x = 0; x < nx; ++x) {
    const auto i = static_cast<std::size_t>(x);
    const ComplexMatrix a = ev.log_sigma[i].matrix() - f[i].matrix() / gamma;
    if (!a.allFinite()) {
      std::ostringstream msg;
      msg << "update: non-finite exponent at x = " << x;
      throw NumericalError(msg.str());
    }
    if (channel.classical()) {
      const RealVector d = a.diagonal().real();
      const double shift = d.maxCoeff();
      const RealVector e = (d.array() - shift).exp().matrix();
      const double eta = e.sum();
      log_eta(x) = shift + std::log(eta);
      out.push_back(DensityOperator::assume_valid(HermitianOperator::diagonal(e / eta)));
    } else {
      const SpectralDecomposition s = eig_hermitian(hermitize(a));
      const double shift = s.eigenvalues.maxCoeff();
      const RealVector e = (s.eigenvalues.array() - shift).exp().matrix();
      const double eta = e.sum();
      log_eta(x) = shift + std::log(eta);
      out.push_back(DensityOperator::assume_valid(HermitianOperator(
          s.eigenvectors * (e / eta).cast<Complex>().asDiagonal() * s.eigenvectors.adjoint())));
    }
  }
  return {CQChannel(std::move(out), channel.classical()), std::move(log_eta)};
}

double weighted_trace(const CQState& state, const CQChannel& channel, const FOperatorFamily& f) {
  double s = 0.0;
  for (int x = 0; x < state.size_x(); ++x) {
    const double p = state.px()(x);
    if (p == 0.0) continue;
    s += p * detail::trace_product(channel.sigma(x).matrix(), f[static_cast<std::size_t>(x)].matrix());
  }
  return s;
}

}  // namespace

FOperatorFamily f_operator(const CQState& state, const CQChannel& channel, double alpha,
                           double beta) {
  check_compatible(state, channel);
  const Evaluation ev = detail::evaluate(channel, state, alpha != 0.0);
  return detail::f_from(state, channel, ev, detail::cross_log_rho_y(state), alpha, beta);
}

FOperatorFamily f_operator(const CQState& state, const CQChannel& channel,
                           const ChannelAnalysis& analysis, double alpha, double beta) {
  check_compatible(state, channel);
  Evaluation ev{analysis, matrix_log_supported(analysis.sigma_t.op()),
                matrix_log_supported(analysis.sigma_yt.op()), {}};
  if (alpha != 0.0) {
    for (int x = 0; x < channel.size_x(); ++x)
      ev.log_sigma.push_back(apply_spectral(analysis.sigma_x_spec[static_cast<std::size_t>(x)],
                                            [](double l) { return std::log(std::max(l, kLogFloor)); }));
  }
  return detail::f_from(state, channel, ev, detail::cross_log_rho_y(state), alpha, beta);
}

UpdateResult update_with_normalizers(const CQState& state, const CQChannel& channel,
                                     double gamma, double alpha, double beta) {
  check_compatible(state, channel);
  if (!(gamma > 0.0)) throw ValidationError("update: gamma must be > 0");
  const Evaluation ev = detail::evaluate(channel, state, true);
  const FOperatorFamily f =
      detail::f_from(state, channel, ev, detail::cross_log_rho_y(state), alpha, beta);
  return update_from(channel, ev, f, gamma);
}

CQChannel update(const CQState& state, const CQChannel& channel, double gamma, double alpha,
                 double beta) {
  return update_with_normalizers(state, channel, gamma, alpha, beta).channel;
}

double gamma_ratio(const CQState& state, const CQChannel& channel, const CQChannel& channel2,
                   double alpha, double beta) {
  check_compatible(state, channel);
  check_compatible(state, channel2);
  const double d = channel_divergence(channel, channel2, state, false);
  if (!(d > kRatioMinDivergence)) {
    std::ostringstream msg;
    msg << "gamma_ratio: undefined, channel divergence " << d << " is below "
        << kRatioMinDivergence;
    throw NumericalError(msg.str());
  }
  const FOperatorFamily f1 = f_operator(state, channel, alpha, beta);
  const FOperatorFamily f2 = f_operator(state, channel2, alpha, beta);
  return (weighted_trace(state, channel, f1) - weighted_trace(state, channel, f2)) / d;
}

double j_function(const CQState& state, const CQChannel& channel, const CQChannel& channel2,
                  double gamma, double alpha, double beta) {
  const FOperatorFamily f2 = f_operator(state, channel2, alpha, beta);
  return gamma * channel_divergence(channel, channel2, state) +
         weighted_trace(state, channel, f2);
}

double fixed_point_residual(const CQState& state, const CQChannel& channel, double gamma,
                            double alpha, double beta) {
  return detail::l1_distance(state, update(state, channel, gamma, alpha, beta), channel);
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kConverged:
      return "converged";
    case RunStatus::kMaxIters:
      return "max_iters";
    case RunStatus::kMonotonicityViolated:
      return "monotonicity_violated";
  }
  return "unknown";
}

CQChannel random_channel(int dim_t, int size_x, bool classical, std::uint64_t seed) {
  if (dim_t < 1 || size_x < 1) throw ValidationError("random_channel: dimensions must be >= 1");
  Rng rng(seed);
  std::vector<DensityOperator> s;
  s.reserve(static_cast<std::size_t>(size_x));
  for (int x = 0; x < size_x; ++x) s.push_back(random_density(dim_t, classical, rng));
  return CQChannel(std::move(s), classical);
}

RunResult run_qib(const CQState& state, const ObjectiveConfig& config) {
  config.validate();
  return run_qib(state, config,
                 random_channel(config.dim_t, state.size_x(), config.classical, config.seed));
}

RunResult run_qib(const CQState& state, const ObjectiveConfig& config, const CQChannel& initial) {
  config.validate();
  check_compatible(state, initial);
  if (initial.dim_t() != config.dim_t)
    throw ValidationError("run_qib: initial channel dimension differs from dimT");
  if (initial.classical() != config.classical)
    throw ValidationError("run_qib: initial channel classical flag differs from the config");

  const double alpha = config.alpha, beta = config.beta, gamma = config.effective_gamma();
  const RealVector cross = detail::cross_log_rho_y(state);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  struct Node {
    CQChannel channel;
    Evaluation ev;
    FOperatorFamily f;
    UpdateResult next;
  };
  auto make = [&](CQChannel ch) {
    Evaluation ev = detail::evaluate(ch, state, true);
    FOperatorFamily f = detail::f_from(state, ch, ev, cross, alpha, beta);
    UpdateResult next = update_from(ch, ev, f, gamma);
    return Node{std::move(ch), std::move(ev), std::move(f), std::move(next)};
  };
  auto row = [&](int iter, const Node& n) {
    IterationRecord r;
    r.iter = iter;
    const InformationTerms& t = n.ev.analysis.terms;
    r.f = t.f_alpha(alpha, beta);
    r.h_t = t.h_t;
    r.i_tx = t.i_tx();
    r.i_ty = t.i_ty();
    r.step_divergence = nan;
    r.gamma_ratio = nan;
    r.fixed_point_residual = detail::l1_distance(state, n.next.channel, n.channel);
    r.support_t = detail::support_size(n.ev.analysis);
    return r;
  };

  IterationTrace trace;
  Node cur = make(initial);
  trace.records.push_back(row(1, cur));
  bool violated = false;

  for (int it = 1; it <= config.max_iters; ++it) {
    Node nxt = make(cur.next.channel);
    IterationRecord r = row(it + 1, nxt);
    r.step_divergence =
        detail::divergence_from_logs(state, cur.channel, cur.ev.log_sigma, nxt.ev.log_sigma);
    const double back =
        detail::divergence_from_logs(state, nxt.channel, nxt.ev.log_sigma, cur.ev.log_sigma);
    if (back > kRatioMinDivergence)
      r.gamma_ratio =
          (weighted_trace(state, nxt.channel, nxt.f) - weighted_trace(state, nxt.channel, cur.f)) /
          back;
    const double prev_f = trace.records.back().f;
    r.violation = r.f > prev_f + kMonotonicityTol;
    violated = violated || r.violation;
    trace.records.push_back(r);
    cur = std::move(nxt);
    if (std::abs(r.f - prev_f) <= config.tol) {
      trace.reached_tolerance = true;
      break;
    }
  }

  if (violated) {
    trace.status = RunStatus::kMonotonicityViolated;
  } else {
    trace.status = trace.reached_tolerance ? RunStatus::kConverged : RunStatus::kMaxIters;
  }
  return {std::move(cur.channel), std::move(trace)};
}

double estimate_kappa(const CQState& state, int samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("estimate_kappa: samples must be >= 1");
  const int nx = state.size_x(), dy = state.dim_y();
  auto mix = [&](const RealVector& q) {
    ComplexMatrix m = ComplexMatrix::Zero(dy, dy);
    for (int x = 0; x < nx; ++x)
      if (q(x) != 0.0) m += q(x) * state.rho(x).matrix();
    return DensityOperator::assume_valid(hermitize(m));
  };
  auto kl = [&](const RealVector& q, const RealVector& r) {
    double d = 0.0;
    for (int x = 0; x < nx; ++x)
      if (q(x) > 0.0) d += q(x) * std::log(q(x) / r(x));
    return d;
  };
  double best = 0.0;
  auto consider = [&](const RealVector& q, const RealVector& r) {
    const double den = kl(q, r);
    if (!(den > 1e-12) || !std::isfinite(den)) return;
    const double num = relative_entropy(mix(q), mix(r), false);
    if (std::isfinite(num)) best = std::max(best, num / den);
  };

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const RealVector q = rng.dirichlet(nx);
    const RealVector r = rng.dirichlet(nx);
    consider(q, r);
  }
  if (nx <= 8) {
    const RealVector uniform = RealVector::Constant(nx, 1.0 / nx);
    for (int i = 0; i < nx; ++i) {
      RealVector q = RealVector::Zero(nx);
      q(i) = 1.0;
      for (int j = 0; j < nx; ++j) {
        if (j == i) continue;
        for (double eps : {0.5, 0.1, 0.01}) {
          RealVector r = eps * uniform;
          r(j) += 1.0 - eps;
          consider(q, r);
        }
      }
    }
  }
  return best;
}

}  // namespace qib
