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

// Classical-quantum states, c-q channels and the entropic functionals built
// on them. All quantities are in nats.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qib/hermitian.hpp"

namespace qib {

inline constexpr double kProbabilityTol = 1e-9;
inline constexpr double kClassicalOffDiagTol = 1e-12;

/// sum_x P_X(x) |x><x| (x) rho_{Y|x}.
class CQState {
 public:
  /// Throws ValidationError on a non-normalized or negative px, a size
  /// mismatch, or conditional densities of different dimension.
  CQState(RealVector px, std::vector<DensityOperator> rho_y_given_x);

  const RealVector& px() const { return px_; }
  const std::vector<DensityOperator>& rho_y_given_x() const { return rho_; }
  const DensityOperator& rho(int x) const { return rho_[static_cast<std::size_t>(x)]; }
  int size_x() const { return static_cast<int>(px_.size()); }
  int dim_y() const { return dim_y_; }

 private:
  RealVector px_;
  std::vector<DensityOperator> rho_;
  int dim_y_ = 0;
};

/// Family sigma_{T|x}. With the classical flag every member is diagonal.
class CQChannel {
 public:
  CQChannel(std::vector<DensityOperator> sigma_t_given_x, bool classical);

  const std::vector<DensityOperator>& sigma_t_given_x() const { return sigma_; }
  const DensityOperator& sigma(int x) const { return sigma_[static_cast<std::size_t>(x)]; }
  int size_x() const { return static_cast<int>(sigma_.size()); }
  int dim_t() const { return dim_t_; }
  bool classical() const { return classical_; }

  /// The channel x -> tau for every x.
  static CQChannel constant(const DensityOperator& tau, int size_x, bool classical);
  /// Point masses |g(x)><g(x)|.
  static CQChannel deterministic(const std::vector<int>& map, int dim_t);

 private:
  std::vector<DensityOperator> sigma_;
  int dim_t_ = 0;
  bool classical_ = false;
};

/// Parameters of one optimization run.
struct ObjectiveConfig {
  double alpha = 1.0;
  double beta = 1.0;
  /// Unset means gamma = alpha, the step that is always safe.
  std::optional<double> gamma;
  int dim_t = 2;
  bool classical = false;
  double tol = 1e-8;
  int max_iters = 500;
  std::uint64_t seed = 0;

  double effective_gamma() const { return gamma.value_or(alpha); }
  /// Throws ValidationError on gamma <= 0, tol <= 0, negative alpha/beta,
  /// dim_t < 1 or max_iters < 1.
  void validate() const;
};

/// The entropies that make up f_alpha for one (state, channel) pair.
struct InformationTerms {
  double h_t = 0.0;            ///< H(T)
  double h_t_given_x = 0.0;    ///< H(T|X) = sum_x P_X(x) H(sigma_{T|x})
  double h_y = 0.0;            ///< H(Y)
  double h_yt = 0.0;           ///< H(YT)

  double i_tx() const { return h_t - h_t_given_x; }
  double i_ty() const { return h_t + h_y - h_yt; }
  /// H(T) - alpha H(T|X) - beta I(T:Y).
  double f_alpha(double alpha, double beta) const {
    return h_t - alpha * h_t_given_x - beta * i_ty();
  }
};

/// Derived operators of a channel with their spectra, shared by the entropic
/// functionals and the update maps so each is diagonalized once.
struct ChannelAnalysis {
  DensityOperator sigma_t;
  SpectralDecomposition sigma_t_spec;
  DensityOperator sigma_yt;
  SpectralDecomposition sigma_yt_spec;
  /// Spectra of every sigma_{T|x}; eigenvectors only when requested.
  std::vector<SpectralDecomposition> sigma_x_spec;
  InformationTerms terms;
};

ChannelAnalysis analyze(const CQChannel& channel, const CQState& state,
                        bool with_conditional_vectors);

DensityOperator sigma_T(const CQChannel& channel, const CQState& state);
/// sum_x P_X(x) sigma_{T|x} (x) rho_{Y|x}, T-first.
DensityOperator sigma_YT(const CQChannel& channel, const CQState& state);
DensityOperator rho_Y(const CQState& state);

/// -sum lambda ln lambda, with 0 ln 0 = 0.
double von_neumann_entropy(const DensityOperator& rho);
double entropy_of_spectrum(const RealVector& eigenvalues);

/// Tr rho (ln rho - ln sigma). Returns +infinity when rho has weight above
/// 1e-10 on eigenvectors of sigma with eigenvalue below the log floor.
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma,
                        bool warn_on_support_violation = true);

InformationTerms information_terms(const CQState& state, const CQChannel& channel);

double objective_f_alpha(const CQState& state, const CQChannel& channel, double alpha,
                         double beta);
/// H(T) - beta I(T:Y), the alpha -> 0 objective.
double objective_f_dib(const CQState& state, const CQChannel& channel, double beta);

double mutual_info_TX(const CQState& state, const CQChannel& channel);
double mutual_info_TY(const CQState& state, const CQChannel& channel);
double cond_entropy_TgivenX(const CQState& state, const CQChannel& channel);

/// I(X:Y) = H(rho_Y) - sum_x P_X(x) H(rho_{Y|x}).
double holevo_information(const CQState& state);

/// sum_x P_X(x) D(sigma_{T|x} || sigma'_{T|x}).
double channel_divergence(const CQChannel& channel, const CQChannel& channel2,
                          const CQState& state, bool warn_on_support_violation = true);

/// Throws ValidationError unless state and channel agree on |X|.
void check_compatible(const CQState& state, const CQChannel& channel);

}  // namespace qib
