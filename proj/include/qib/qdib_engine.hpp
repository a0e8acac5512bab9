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

// Deterministic (alpha -> 0) variant: each sigma_{T|x} is projected onto the
// minimum eigenspace of F_0 and renormalized.

#pragma once

#include <vector>

#include "qib/cq_model.hpp"
#include "qib/qib_engine.hpp"

namespace qib {

inline constexpr double kDegeneracyRelTol = 1e-9;
inline constexpr double kVanishingOverlap = 1e-14;

struct ScoreProjector {
  HermitianOperator projector;
  int rank = 0;
  /// Distance from the kept eigenvalues to the nearest excluded one;
  /// infinity when nothing is excluded.
  double gap = 0.0;
};

using ScoreProjectorFamily = std::vector<ScoreProjector>;

/// What qdib_update does when Tr(sigma_{T|x} P_{T|x}) <= 1e-14.
enum class OverlapPolicy {
  /// Replace sigma_{T|x} by P / Tr P.
  kFallbackToProjector,
  /// Throw NumericalError naming x.
  kThrow,
};

/// (1 - beta) ln sigma_T + beta Tr_Y[(I (x) rho_{Y|x})(ln sigma_YT - ln rho_Y)],
/// which equals -F_0.
FOperatorFamily score_operator(const CQState& state, const CQChannel& channel, double beta);

/// Projector onto the eigenvectors whose eigenvalue lies within
/// rel_tol * (lambda_max - lambda_min) of lambda_min.
ScoreProjector min_eigenspace_projector(const HermitianOperator& h,
                                        double rel_tol = kDegeneracyRelTol);
/// Same for the top of the spectrum.
ScoreProjector max_eigenspace_projector(const HermitianOperator& h,
                                        double rel_tol = kDegeneracyRelTol);

/// Min-eigenspace projectors of F_0, one per x.
ScoreProjectorFamily qdib_projectors(const CQState& state, const CQChannel& channel, double beta);

/// sigma_{T|x} <- P sigma P / Tr(sigma P).
CQChannel qdib_update(const CQState& state, const CQChannel& channel, double beta,
                      OverlapPolicy policy = OverlapPolicy::kFallbackToProjector);

/// Iterates qdib_update; config.alpha and config.gamma are ignored. Records
/// f_DIB = H(T) - beta I(T:Y) and support_T; step_divergence and gamma_ratio
/// are NaN.
RunResult run_qdib(const CQState& state, const ObjectiveConfig& config,
                   OverlapPolicy policy = OverlapPolicy::kFallbackToProjector);
RunResult run_qdib(const CQState& state, const ObjectiveConfig& config, const CQChannel& initial,
                   OverlapPolicy policy = OverlapPolicy::kFallbackToProjector);

}  // namespace qib
