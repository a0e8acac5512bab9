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

#include "qib/qdib_engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "engine_internal.hpp"
#include "qib/error.hpp"

namespace qib {

namespace {

ScoreProjector projector_from(const RealVector& values, const ComplexMatrix* vectors, bool lowest,
                              double rel_tol) {
  const Eigen::Index n = values.size();
  const double lo = values.minCoeff(), hi = values.maxCoeff();
  const double window = rel_tol * (hi - lo);
  const double edge = lowest ? lo : hi;
  ScoreProjector out;
  out.gap = std::numeric_limits<double>::infinity();
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double dist = std::abs(values(i) - edge);
    if (dist <= window) {
      ++out.rank;
      if (vectors) {
        p += vectors->col(i) * vectors->col(i).adjoint();
      } else {
        p(i, i) = 1.0;
      }
    } else {
      out.gap = std::min(out.gap, dist);
    }
  }
  out.projector = HermitianOperator(p);
  return out;
}

ScoreProjector projector_for(const HermitianOperator& h, bool lowest, bool diagonal,
                             double rel_tol) {
  if (diagonal) return projector_from(h.matrix().diagonal().real(), nullptr, lowest, rel_tol);
  const SpectralDecomposition s = eig_hermitian(h);
  return projector_from(s.eigenvalues, &s.eigenvectors, lowest, rel_tol);
}

ScoreProjectorFamily projectors_from(const FOperatorFamily& f0, bool classical) {
  ScoreProjectorFamily out;
  out.reserve(f0.size());
  for (const HermitianOperator& h : f0)
    out.push_back(projector_for(h, true, classical, kDegeneracyRelTol));
  return out;
}

CQChannel apply_projectors(const CQChannel& channel, const ScoreProjectorFamily& proj,
                           OverlapPolicy policy) {
  std::vector<DensityOperator> out;
  out.reserve(proj.size());
  for (int x = 0; x < channel.size_x(); ++x) {
    const ScoreProjector& sp = proj[static_cast<std::size_t>(x)];
    const ComplexMatrix& p = sp.projector.matrix();
    const ComplexMatrix& s = channel.sigma(x).matrix();
    const double overlap = detail::trace_product(s, p);
    if (overlap <= kVanishingOverlap) {
      if (policy == OverlapPolicy::kThrow) {
        std::ostringstream msg;
        msg << "qdib_update: vanishing overlap Tr(sigma P) = " << overlap << " at x = " << x;
        throw NumericalError(msg.str());
      }
      out.push_back(DensityOperator::assume_valid(HermitianOperator(p / sp.rank)));
      continue;
    }
    ComplexMatrix next = p * s * p / overlap;
    if (channel.classical()) next = ComplexMatrix(next.diagonal().asDiagonal());
    out.push_back(DensityOperator::assume_valid(HermitianOperator(next)));
  }
  return CQChannel(std::move(out), channel.classical());
}

FOperatorFamily f0_from(const CQState& state, const CQChannel& channel,
                        const detail::Evaluation& ev, const RealVector& cross, double beta) {
  return detail::f_from(state, channel, ev, cross, 0.0, beta);
}

}  // namespace

FOperatorFamily score_operator(const CQState& state, const CQChannel& channel, double beta) {
  FOperatorFamily f0 = f_operator(state, channel, 0.0, beta);
  for (HermitianOperator& h : f0) h = h * -1.0;
  return f0;
}

ScoreProjector min_eigenspace_projector(const HermitianOperator& h, double rel_tol) {
  return projector_for(h, true, false, rel_tol);
}

ScoreProjector max_eigenspace_projector(const HermitianOperator& h, double rel_tol) {
  return projector_for(h, false, false, rel_tol);
}

ScoreProjectorFamily qdib_projectors(const CQState& state, const CQChannel& channel, double beta) {
  return projectors_from(f_operator(state, channel, 0.0, beta), channel.classical());
}

CQChannel qdib_update(const CQState& state, const CQChannel& channel, double beta,
                      OverlapPolicy policy) {
  return apply_projectors(channel, qdib_projectors(state, channel, beta), policy);
}

RunResult run_qdib(const CQState& state, const ObjectiveConfig& config, OverlapPolicy policy) {
  config.validate();
  return run_qdib(state, config,
                  random_channel(config.dim_t, state.size_x(), config.classical, config.seed),
                  policy);
}

RunResult run_qdib(const CQState& state, const ObjectiveConfig& config, const CQChannel& initial,
                   OverlapPolicy policy) {
  config.validate();
  check_compatible(state, initial);
  if (initial.dim_t() != config.dim_t)
    throw ValidationError("run_qdib: initial channel dimension differs from dimT");
  if (initial.classical() != config.classical)
    throw ValidationError("run_qdib: initial channel classical flag differs from the config");

  const double beta = config.beta;
  const RealVector cross = detail::cross_log_rho_y(state);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  struct Node {
    CQChannel channel;
    detail::Evaluation ev;
    CQChannel next;
  };
  auto make = [&](CQChannel ch) {
    detail::Evaluation ev = detail::evaluate(ch, state, false);
    CQChannel next = apply_projectors(
        ch, projectors_from(f0_from(state, ch, ev, cross, beta), ch.classical()), policy);
    return Node{std::move(ch), std::move(ev), std::move(next)};
  };
  auto row = [&](int iter, const Node& n) {
    IterationRecord r;
    r.iter = iter;
    const InformationTerms& t = n.ev.analysis.terms;
    r.f = t.f_alpha(0.0, beta);
    r.h_t = t.h_t;
    r.i_tx = t.i_tx();
    r.i_ty = t.i_ty();
    r.step_divergence = nan;
    r.gamma_ratio = nan;
    r.fixed_point_residual = detail::l1_distance(state, n.next, n.channel);
    r.support_t = detail::support_size(n.ev.analysis);
    return r;
  };

  IterationTrace trace;
  trace.qdib = true;
  Node cur = make(initial);
  trace.records.push_back(row(1, cur));
  bool violated = false;
  for (int it = 1; it <= config.max_iters; ++it) {
    Node nxt = make(cur.next);
    IterationRecord r = row(it + 1, nxt);
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

}  // namespace qib
