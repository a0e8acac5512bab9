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

// Shared machinery of the QIB and QDIB loops. Not installed.

#pragma once

#include <vector>

#include "qib/cq_model.hpp"
#include "qib/qib_engine.hpp"

namespace qib::detail {

/// A channel together with everything the update maps need from it.
struct Evaluation {
  ChannelAnalysis analysis;
  HermitianOperator log_sigma_t;
  HermitianOperator log_sigma_yt;
  /// ln sigma_{T|x} (floored); empty unless requested.
  std::vector<HermitianOperator> log_sigma;
};

Evaluation evaluate(const CQChannel& channel, const CQState& state, bool with_log_sigma);

/// Tr(rho_{Y|x} ln rho_Y) for every x.
RealVector cross_log_rho_y(const CQState& state);

/// F_alpha from a precomputed evaluation. `ev.log_sigma` must be populated
/// when alpha != 0.
FOperatorFamily f_from(const CQState& state, const CQChannel& channel, const Evaluation& ev,
                       const RealVector& cross, double alpha, double beta);

/// Re Tr(AB).
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sum_x P_X Tr sigma_x (log_a(x) - log_b(x)).
double divergence_from_logs(const CQState& state, const CQChannel& a,
                            const std::vector<HermitianOperator>& log_a,
                            const std::vector<HermitianOperator>& log_b);

/// Sum_x P_X || a_x - b_x ||_1.
double l1_distance(const CQState& state, const CQChannel& a, const CQChannel& b);

/// Eigenvalues of sigma_T above 1e-9.
int support_size(const ChannelAnalysis& analysis);

}  // namespace qib::detail
