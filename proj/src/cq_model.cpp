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

#include "qib/cq_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qib/diagnostics.hpp"
#include "qib/error.hpp"

namespace qib {

namespace {

constexpr double kSupportLeakTol = 1e-10;

double log_floored(double l) { return std::log(std::max(l, kLogFloor)); }

}  // namespace

CQState::CQState(RealVector px, std::vector<DensityOperator> rho_y_given_x)
    : px_(std::move(px)), rho_(std::move(rho_y_given_x)) {
  if (px_.size() == 0) throw ValidationError("CQState: empty px");
  if (static_cast<std::size_t>(px_.size()) != rho_.size()) {
    std::ostringstream msg;
    msg << "CQState: px has " << px_.size() << " entries but " << rho_.size()
        << " conditional densities were given";
    throw ValidationError(msg.str());
  }
  for (Eigen::Index x = 0; x < px_.size(); ++x) {
    if (!(px_(x) >= 0.0)) {
      std::ostringstream msg;
      msg << "CQState: px[" << x << "] = " << px_(x) << " is negative";
      throw ValidationError(msg.str());
    }
  }
  if (std::abs(px_.sum() - 1.0) > kProbabilityTol) {
    std::ostringstream msg;
    msg << "CQState: px sums to " << px_.sum();
    throw ValidationError(msg.str());
  }
  dim_y_ = rho_.front().dim();
  for (std::size_t x = 0; x < rho_.size(); ++x) {
    if (rho_[x].dim() != dim_y_) {
      std::ostringstream msg;
      msg << "CQState: rhoY[" << x << "] has dimension " << rho_[x].dim() << ", expected "
          << dim_y_;
      throw ValidationError(msg.str());
    }
  }
}

CQChannel::CQChannel(std::vector<DensityOperator> sigma_t_given_x, bool classical)
    : sigma_(std::move(sigma_t_given_x)), classical_(classical) {
  if (sigma_.empty()) throw ValidationError("CQChannel: empty channel");
  dim_t_ = sigma_.front().dim();
  for (std::size_t x = 0; x < sigma_.size(); ++x) {
    if (sigma_[x].dim() != dim_t_) {
      std::ostringstream msg;
      msg << "CQChannel: sigmaT[" << x << "] has dimension " << sigma_[x].dim()
          << ", expected " << dim_t_;
      throw ValidationError(msg.str());
    }
    if (classical_ && !is_diagonal(sigma_[x].matrix(), kClassicalOffDiagTol)) {
      std::ostringstream msg;
      msg << "CQChannel: sigmaT[" << x << "] is not diagonal but the channel is classical";
      throw ValidationError(msg.str());
    }
  }
}

CQChannel CQChannel::constant(const DensityOperator& tau, int size_x, bool classical) {
  return CQChannel(std::vector<DensityOperator>(static_cast<std::size_t>(size_x), tau), classical);
}

CQChannel CQChannel::deterministic(const std::vector<int>& map, int dim_t) {
  std::vector<DensityOperator> out;
  out.reserve(map.size());
  for (std::size_t x = 0; x < map.size(); ++x) {
    if (map[x] < 0 || map[x] >= dim_t) {
      std::ostringstream msg;
      msg << "CQChannel::deterministic: map[" << x << "] = " << map[x] << " outside [0, "
          << dim_t << ")";
      throw ValidationError(msg.str());
    }
    RealVector p = RealVector::Zero(dim_t);
    p(map[x]) = 1.0;
    out.push_back(DensityOperator::assume_valid(HermitianOperator::diagonal(p)));
  }
  return CQChannel(std::move(out), true);
}

void ObjectiveConfig::validate() const {
  auto fail = [](const std::string& what) { throw ValidationError("ObjectiveConfig: " + what); };
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail("alpha must be >= 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) fail("beta must be >= 0");
  if (gamma && !(*gamma > 0.0)) fail("gamma must be > 0");
  if (!(tol > 0.0)) fail("tol must be > 0");
  if (dim_t < 1) fail("dimT must be >= 1");
  if (max_iters < 1) fail("max_iters must be >= 1");
}

void check_compatible(const CQState& state, const CQChannel& channel) {
  if (state.size_x() != channel.size_x()) {
    std::ostringstream msg;
    msg << "state has |X| = " << state.size_x() << " but channel has |X| = "
        << channel.size_x();
    throw ValidationError(msg.str());
  }
}

DensityOperator sigma_T(const CQChannel& channel, const CQState& state) {
  check_compatible(state, channel);
  ComplexMatrix acc = ComplexMatrix::Zero(channel.dim_t(), channel.dim_t());
  for (int x = 0; x < state.size_x(); ++x) {
    const double p = state.px()(x);
    if (p == 0.0) continue;
    acc += p * channel.sigma(x).matrix();
  }
  return DensityOperator::assume_valid(hermitize(acc));
}

DensityOperator sigma_YT(const CQChannel& channel, const CQState& state) {
  check_compatible(state, channel);
  const int dt = channel.dim_t(), dy = state.dim_y();
  ComplexMatrix acc = ComplexMatrix::Zero(dt * dy, dt * dy);
  for (int x = 0; x < state.size_x(); ++x) {
    const double p = state.px()(x);
    if (p == 0.0) continue;
    const ComplexMatrix& s = channel.sigma(x).matrix();
    const ComplexMatrix r = p * state.rho(x).matrix();
    for (int j = 0; j < dt; ++j)
      for (int i = 0; i < dt; ++i) {
        const Complex sij = s(i, j);
        if (sij == 0.0) continue;
        acc.block(i * dy, j * dy, dy, dy) += sij * r;
      }
  }
  return DensityOperator::assume_valid(hermitize(acc));
}

DensityOperator rho_Y(const CQState& state) {
  ComplexMatrix acc = ComplexMatrix::Zero(state.dim_y(), state.dim_y());
  for (int x = 0; x < state.size_x(); ++x) {
    const double p = state.px()(x);
    if (p == 0.0) continue;
    acc += p * state.rho(x).matrix();
  }
  return DensityOperator::assume_valid(hermitize(acc));
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues(i);
    if (l > 0.0) h -= l * std::log(l);
  }
  return h;
}

double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_of_spectrum(eigvals_hermitian(rho.op()));
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma,
                        bool warn_on_support_violation) {
  if (rho.dim() != sigma.dim()) throw ValidationError("relative_entropy: dimension mismatch");
  const SpectralDecomposition ss = eig_hermitian(sigma.op());
  const ComplexMatrix& u = ss.eigenvectors;
  const ComplexMatrix rho_in_sigma_basis = u.adjoint() * rho.matrix() * u;

  double leak = 0.0;
  double cross = 0.0;  // Tr rho ln sigma
  for (Eigen::Index k = 0; k < ss.eigenvalues.size(); ++k) {
    const double w = rho_in_sigma_basis(k, k).real();
    if (ss.eigenvalues(k) <= kLogFloor) leak += w;
    cross += w * log_floored(ss.eigenvalues(k));
  }
  if (leak > kSupportLeakTol) {
    if (warn_on_support_violation) {
      std::ostringstream msg;
      msg << "relative_entropy: support violation (weight " << leak
          << " outside the support of the second argument)";
      warn(msg.str());
    }
    return std::numeric_limits<double>::infinity();
  }
  return -entropy_of_spectrum(eigvals_hermitian(rho.op())) - cross;
}

ChannelAnalysis analyze(const CQChannel& channel, const CQState& state,
                        bool with_conditional_vectors) {
  check_compatible(state, channel);
  ChannelAnalysis a{sigma_T(channel, state), {}, sigma_YT(channel, state), {}, {}, {}};
  a.sigma_t_spec = eig_hermitian(a.sigma_t.op());
  a.sigma_yt_spec = eig_hermitian(a.sigma_yt.op());
  a.sigma_x_spec.resize(static_cast<std::size_t>(channel.size_x()));

  double h_tx = 0.0;
  double h_yx = 0.0;
  for (int x = 0; x < channel.size_x(); ++x) {
    auto& spec = a.sigma_x_spec[static_cast<std::size_t>(x)];
    if (with_conditional_vectors) {
      spec = eig_hermitian(channel.sigma(x).op());
    } else {
      spec.eigenvalues = eigvals_hermitian(channel.sigma(x).op());
    }
    const double p = state.px()(x);
    if (p == 0.0) continue;
    h_tx += p * entropy_of_spectrum(spec.eigenvalues);
    (void)h_yx;
  }
  a.terms.h_t = entropy_of_spectrum(a.sigma_t_spec.eigenvalues);
  a.terms.h_t_given_x = h_tx;
  a.terms.h_y = von_neumann_entropy(rho_Y(state));
  a.terms.h_yt = entropy_of_spectrum(a.sigma_yt_spec.eigenvalues);
  return a;
}

InformationTerms information_terms(const CQState& state, const CQChannel& channel) {
  check_compatible(state, channel);
  InformationTerms t;
  t.h_t = von_neumann_entropy(sigma_T(channel, state));
  for (int x = 0; x < state.size_x(); ++x) {
    const double p = state.px()(x);
    if (p == 0.0) continue;
    t.h_t_given_x += p * von_neumann_entropy(channel.sigma(x));
  }
  t.h_y = von_neumann_entropy(rho_Y(state));
  t.h_yt = von_neumann_entropy(sigma_YT(channel, state));
  return t;
}

double objective_f_alpha(const CQState& state, const CQChannel& channel, double alpha,
                         double beta) {
  return information_terms(state, channel).f_alpha(alpha, beta);
}

double objective_f_dib(const CQState& state, const CQChannel& channel, double beta) {
  return information_terms(state, channel).f_alpha(0.0, beta);
}

double mutual_info_TX(const CQState& state, const CQChannel& channel) {
  return information_terms(state, channel).i_tx();
}

double mutual_info_TY(const CQState& state, const CQChannel& channel) {
  return information_terms(state, channel).i_ty();
}

double cond_entropy_TgivenX(const CQState& state, const CQChannel& channel) {
  return information_terms(state, channel).h_t_given_x;
}

double holevo_information(const CQState& state) {
  double h = von_neumann_entropy(rho_Y(state));
  for (int x = 0; x < state.size_x(); ++x) {
    const double p = state.px()(x);
    if (p == 0.0) continue;
    h -= p * von_neumann_entropy(state.rho(x));
  }
  return h;
}

double channel_divergence(const CQChannel& channel, const CQChannel& channel2,
                          const CQState& state, bool warn_on_support_violation) {
  check_compatible(state, channel);
  check_compatible(state, channel2);
  if (channel.dim_t() != channel2.dim_t())
    throw ValidationError("channel_divergence: channels have different dimT");
  double d = 0.0;
  for (int x = 0; x < state.size_x(); ++x) {
    const double p = state.px()(x);
    if (p == 0.0) continue;
    d += p * relative_entropy(channel.sigma(x), channel2.sigma(x), warn_on_support_violation);
  }
  return d;
}

}  // namespace qib
