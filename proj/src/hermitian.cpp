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

#include "qib/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "qib/error.hpp"

namespace qib {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kJacobiTol = 1e-12;

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  const auto n = a.rows();
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index p = 0; p < n; ++p)
      if (p != q) s += std::norm(a(p, q));
  return std::sqrt(s);
}

// In-place cyclic Jacobi. On return `a` is diagonal (up to tolerance) and, if
// `v` is non-null, a_in = v diag(a) v^dagger.
void jacobi(ComplexMatrix& a, ComplexMatrix* v) {
  const Eigen::Index n = a.rows();
  const double norm = a.norm();
  if (v) *v = ComplexMatrix::Identity(n, n);
  if (n < 2 || norm == 0.0) return;
  const double tiny = 1e-15 * norm / static_cast<double>(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = offdiag_norm(a);
    if (off <= kJacobiTol * norm) return;

    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= tiny) continue;

        const Complex em = std::conj(apq) / mag;  // e^{-i phi}
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (Eigen::Index r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          const Complex nrp = c * arp - s * em * arq;
          const Complex nrq = s * arp + c * em * arq;
          a(r, p) = nrp;
          a(r, q) = nrq;
          a(p, r) = std::conj(nrp);
          a(q, r) = std::conj(nrq);
        }
        a(p, p) = a(p, p).real() - t * mag;
        a(q, q) = a(q, q).real() + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        if (v) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const Complex vkp = (*v)(k, p);
            const Complex vkq = (*v)(k, q);
            (*v)(k, p) = c * vkp - s * em * vkq;
            (*v)(k, q) = s * vkp + c * em * vkq;
          }
        }
      }
    }
  }

  const double off = offdiag_norm(a);
  if (off <= kJacobiTol * norm) return;
  std::ostringstream msg;
  msg << "eig_hermitian: Jacobi did not converge after " << kMaxSweeps
      << " sweeps (dim " << n << ", off-diagonal residual " << off << ")";
  throw NumericalError(msg.str());
}

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << ": matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw ValidationError(msg.str());
  }
}

}  // namespace

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  check_square(m, "HermitianOperator");
  if (!m.allFinite()) throw ValidationError("HermitianOperator: non-finite entry");
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(ComplexMatrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::diagonal(const RealVector& values) {
  return HermitianOperator(values.cast<Complex>().asDiagonal().toDenseMatrix());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  HermitianOperator out = *this;
  out.m_ += other.m_;
  return out;
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  HermitianOperator out = *this;
  out.m_ -= other.m_;
  return out;
}

HermitianOperator HermitianOperator::operator*(double s) const {
  HermitianOperator out = *this;
  out.m_ *= s;
  return out;
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& other) {
  m_ += other.m_;
  return *this;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

DensityOperator::DensityOperator(const HermitianOperator& op) : op_(op) {
  const double tr = op.trace();
  if (std::abs(tr - 1.0) > kDensityTraceTol) {
    std::ostringstream msg;
    msg << "density operator has trace " << tr << " (expected 1)";
    throw ValidationError(msg.str());
  }
  const RealVector ev = eigvals_hermitian(op);
  if (ev.size() > 0 && ev(0) < -kDensityEigTol) {
    std::ostringstream msg;
    msg << "density operator has negative eigenvalue " << ev(0);
    throw ValidationError(msg.str());
  }
}

DensityOperator DensityOperator::assume_valid(HermitianOperator op) {
  DensityOperator d;
  d.op_ = std::move(op);
  return d;
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return assume_valid(HermitianOperator::identity(dim) * (1.0 / dim));
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  const double nrm = psi.norm();
  if (nrm == 0.0) throw ValidationError("DensityOperator::pure: zero vector");
  const ComplexVector u = psi / nrm;
  return assume_valid(HermitianOperator(u * u.adjoint()));
}

DensityOperator DensityOperator::diagonal(const RealVector& probabilities) {
  return DensityOperator(HermitianOperator::diagonal(probabilities));
}

SpectralDecomposition eig_hermitian(const HermitianOperator& h) {
  ComplexMatrix a = h.matrix();
  ComplexMatrix v;
  jacobi(a, &v);

  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

RealVector eigvals_hermitian(const HermitianOperator& h) {
  ComplexMatrix a = h.matrix();
  jacobi(a, nullptr);
  RealVector ev = a.diagonal().real();
  std::sort(ev.data(), ev.data() + ev.size());
  return ev;
}

HermitianOperator apply_spectral(const SpectralDecomposition& s,
                                 const std::function<double(double)>& f) {
  RealVector fv(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(s.eigenvalues(i));
  return HermitianOperator(s.eigenvectors * fv.cast<Complex>().asDiagonal() *
                           s.eigenvectors.adjoint());
}

HermitianOperator matrix_log_supported(const HermitianOperator& positive, double floor) {
  return apply_spectral(eig_hermitian(positive),
                        [floor](double l) { return std::log(std::max(l, floor)); });
}

HermitianOperator matrix_log_supported(const DensityOperator& rho, double floor) {
  return matrix_log_supported(rho.op(), floor);
}

HermitianOperator matrix_exp(const HermitianOperator& h) {
  const SpectralDecomposition s = eig_hermitian(h);
  const Eigen::Index n = s.eigenvalues.size();
  if (n > 0 && s.eigenvalues(n - 1) > kExpOverflowLimit) {
    std::ostringstream msg;
    msg << "matrix_exp: eigenvalue " << s.eigenvalues(n - 1)
        << " exceeds " << kExpOverflowLimit << "; shift the exponent first";
    throw NumericalError(msg.str());
  }
  return apply_spectral(s, [](double l) { return std::exp(l); });
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  ComplexMatrix out(ra * rb, ca * cb);
  for (Eigen::Index j = 0; j < ca; ++j)
    for (Eigen::Index i = 0; i < ra; ++i)
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_first, int dim_second, Keep keep) {
  const Eigen::Index total = static_cast<Eigen::Index>(dim_first) * dim_second;
  if (dim_first <= 0 || dim_second <= 0 || m.rows() != total || m.cols() != total) {
    std::ostringstream msg;
    msg << "partial_trace: matrix is " << m.rows() << "x" << m.cols() << ", expected "
        << total << "x" << total << " for dims (" << dim_first << ", " << dim_second << ")";
    throw ValidationError(msg.str());
  }
  if (keep == Keep::kFirst) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_first, dim_first);
    for (int j = 0; j < dim_first; ++j)
      for (int i = 0; i < dim_first; ++i)
        for (int k = 0; k < dim_second; ++k)
          out(i, j) += m(i * dim_second + k, j * dim_second + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_second, dim_second);
  for (int i = 0; i < dim_first; ++i)
    out += m.block(i * dim_second, i * dim_second, dim_second, dim_second);
  return out;
}

HermitianOperator contract_second(const ComplexMatrix& m, const ComplexMatrix& weight,
                                  int dim_first, int dim_second) {
  const Eigen::Index total = static_cast<Eigen::Index>(dim_first) * dim_second;
  if (m.rows() != total || m.cols() != total || weight.rows() != dim_second ||
      weight.cols() != dim_second) {
    throw ValidationError("contract_second: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_first, dim_first);
  const bool diag = is_diagonal(weight, 0.0);
  for (int tp = 0; tp < dim_first; ++tp) {
    for (int t = 0; t < dim_first; ++t) {
      const auto block = m.block(t * dim_second, tp * dim_second, dim_second, dim_second);
      Complex acc = 0.0;
      if (diag) {
        for (int y = 0; y < dim_second; ++y) acc += weight(y, y) * block(y, y);
      } else {
        // sum_{y, y''} w(y, y'') M[(t, y''), (t', y)] = Tr(w * block)
        for (int y = 0; y < dim_second; ++y)
          for (int yy = 0; yy < dim_second; ++yy) acc += weight(y, yy) * block(yy, y);
      }
      out(t, tp) = acc;
    }
  }
  return HermitianOperator(out);
}

HermitianOperator hermitize(const ComplexMatrix& m) { return HermitianOperator(m); }

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double trace_norm(const HermitianOperator& h) {
  return eigvals_hermitian(h).cwiseAbs().sum();
}

bool is_diagonal(const ComplexMatrix& m, double tol) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && std::abs(m(i, j)) > tol) return false;
  return true;
}

}  // namespace qib
