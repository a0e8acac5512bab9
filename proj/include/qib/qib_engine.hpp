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

// The accelerated QIB iteration: F-operator, update map, gamma-ratio and
// J-function diagnostics, and the run loop with its iteration trace.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qib/cq_model.hpp"

namespace qib {

/// Steps that raise f by more than this are flagged.
inline constexpr double kMonotonicityTol = 1e-9;
/// gamma_ratio is undefined below this channel divergence.
inline constexpr double kRatioMinDivergence = 1e-12;

/// One Hermitian operator on T per x.
using FOperatorFamily = std::vector<HermitianOperator>;

/// F_alpha[sigma](x) = -ln sigma_T + alpha ln sigma_{T|x}
///   + beta Tr_Y[(I (x) rho_{Y|x}) (ln(sigma_T (x) rho_Y) - ln sigma_YT)].
/// Sum_x P_X(x) Tr sigma_{T|x} F(x) equals f_alpha.
FOperatorFamily f_operator(const CQState& state, const CQChannel& channel, double alpha,
                           double beta);

/// Same, reusing the spectra in `analysis` (which must hold eigenvectors of
/// every sigma_{T|x} when alpha != 0).
FOperatorFamily f_operator(const CQState& state, const CQChannel& channel,
                           const ChannelAnalysis& analysis, double alpha, double beta);

struct UpdateResult {
  CQChannel channel;
  /// ln Tr exp(ln sigma_{T|x} - F(x)/gamma), per x.
  RealVector log_eta;
};

/// sigma_{T|x} <- exp(ln sigma_{T|x} - F(x)/gamma) / trace. Classical
/// channels stay diagonal. Throws NumericalError naming x on a non-finite
/// exponent.
UpdateResult update_with_normalizers(const CQState& state, const CQChannel& channel,
                                     double gamma, double alpha, double beta);
CQChannel update(const CQState& state, const CQChannel& channel, double gamma, double alpha,
                 double beta);

/// [Sum_x P_X Tr sigma_{T|x}(F[sigma](x) - F[sigma'](x))] / D(sigma || sigma').
/// Throws NumericalError when the divergence is below 1e-12.
double gamma_ratio(const CQState& state, const CQChannel& channel, const CQChannel& channel2,
                   double alpha, double beta);

/// gamma D(sigma || sigma') + Sum_x P_X Tr sigma_{T|x} F[sigma'](x).
double j_function(const CQState& state, const CQChannel& channel, const CQChannel& channel2,
                  double gamma, double alpha, double beta);

/// Sum_x P_X || update(sigma)_x - sigma_x ||_1.
double fixed_point_residual(const CQState& state, const CQChannel& channel, double gamma,
                            double alpha, double beta);

enum class RunStatus { kConverged, kMaxIters, kMonotonicityViolated };

std::string to_string(RunStatus status);

/// Row 1 describes the initial channel. Row n >= 2 describes the iterate after
/// n - 1 updates; its step columns refer to the step from row n - 1.
struct IterationRecord {
  int iter = 0;
  double f = 0.0;  ///< f_alpha for QIB, f_DIB for QDIB
  double h_t = 0.0;
  double i_tx = 0.0;
  double i_ty = 0.0;
  /// Sum_x P_X D(previous || current); NaN on row 1.
  double step_divergence = 0.0;
  /// gamma_ratio(current, previous); NaN on row 1 or when undefined.
  double gamma_ratio = 0.0;
  /// Residual of the current iterate; NaN where not computed.
  double fixed_point_residual = 0.0;
  /// Eigenvalues of sigma_T above 1e-9; QDIB only.
  int support_t = 0;
  bool violation = false;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  /// kMonotonicityViolated takes precedence whenever any step was flagged.
  RunStatus status = RunStatus::kMaxIters;
  /// Whether the last step met |delta f| <= tol, independently of flags.
  bool reached_tolerance = false;
  bool qdib = false;
};

struct RunResult {
  CQChannel channel;
  IterationTrace trace;
};

/// Algorithm loop from a random full-rank initial channel seeded by
/// config.seed.
RunResult run_qib(const CQState& state, const ObjectiveConfig& config);
RunResult run_qib(const CQState& state, const ObjectiveConfig& config, const CQChannel& initial);

/// Full-rank channel: Dirichlet(1) spectra, conjugated by Haar unitaries
/// unless classical.
CQChannel random_channel(int dim_t, int size_x, bool classical, std::uint64_t seed);

/// Lower bound on the relative-entropy contraction coefficient of
/// Q -> Sum_x Q(x) rho_{Y|x}, from `samples` Dirichlet pairs plus, when
/// |X| <= 8, every vertex paired with smoothed versions of the other vertices.
double estimate_kappa(const CQState& state, int samples, std::uint64_t seed);

}  // namespace qib
