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

// Dense complex Hermitian matrix calculus: eigendecomposition, functions of
// Hermitian matrices, tensor products and partial traces.
//
// Joint operators are always ordered T-first: index (t, y) maps to
// t * dim_y + y, matching tensor(A_T, B_Y).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace qib {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kLogFloor = 1e-12;
inline constexpr double kDensityEigTol = 1e-10;
inline constexpr double kDensityTraceTol = 1e-9;
inline constexpr double kExpOverflowLimit = 700.0;

/// A Hermitian matrix. Construction symmetrizes the input as (M + M^dagger)/2,
/// so the stored matrix is exactly Hermitian up to round-off.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const ComplexMatrix& m);

  static HermitianOperator zero(int dim);
  static HermitianOperator identity(int dim);
  static HermitianOperator diagonal(const RealVector& values);

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double trace() const { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double s) const;
  HermitianOperator& operator+=(const HermitianOperator& other);

 private:
  ComplexMatrix m_;
};

inline HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

/// Eigenvalues ascending; eigenvectors in the matching columns.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

/// Positive semidefinite, unit-trace Hermitian operator.
class DensityOperator {
 public:
  /// Validates eigenvalues >= -1e-10 and |trace - 1| <= 1e-9; throws
  /// ValidationError otherwise.
  explicit DensityOperator(const HermitianOperator& op);

  /// Skips validation; for operators that are valid by construction.
  static DensityOperator assume_valid(HermitianOperator op);

  static DensityOperator maximally_mixed(int dim);
  static DensityOperator pure(const ComplexVector& psi);
  static DensityOperator diagonal(const RealVector& probabilities);

  const HermitianOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }
  int dim() const { return op_.dim(); }

 private:
  DensityOperator() = default;
  HermitianOperator op_;
};

/// Cyclic Jacobi eigensolver. Throws NumericalError (with the off-diagonal
/// residual) if 100 sweeps do not reach a relative off-diagonal norm of 1e-12.
SpectralDecomposition eig_hermitian(const HermitianOperator& h);

/// Eigenvalues only, ascending. Same algorithm without vector accumulation.
RealVector eigvals_hermitian(const HermitianOperator& h);

/// U f(lambda) U^dagger for a real function f.
HermitianOperator apply_spectral(const SpectralDecomposition& s,
                                 const std::function<double(double)>& f);

/// U diag(ln max(lambda_i, floor)) U^dagger. Equals the matrix logarithm on
/// full-rank input; the floor only regularizes (numerically) zero eigenvalues.
HermitianOperator matrix_log_supported(const DensityOperator& rho, double floor = kLogFloor);
HermitianOperator matrix_log_supported(const HermitianOperator& positive, double floor = kLogFloor);

/// U diag(exp lambda) U^dagger. Throws NumericalError when the largest
/// eigenvalue exceeds 700; callers shift by the top eigenvalue first.
HermitianOperator matrix_exp(const HermitianOperator& h);

/// Kronecker product, A-major: (A (x) B)[(i,k),(j,l)] = A[i,j] B[k,l].
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Keep { kFirst, kSecond };

/// Partial trace of an operator on a (dim_first x dim_second) product space.
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_first, int dim_second, Keep keep);

/// Tr_2[(I (x) weight) M]: contraction of the second factor against a
/// weight operator. Equal to Tr_2[(I (x) w^1/2) M (I (x) w^1/2)] and to
/// Tr_2[M (I (x) w)], since the partial trace is cyclic in operators acting
/// on the traced factor; Hermitian whenever M and weight are.
HermitianOperator contract_second(const ComplexMatrix& m, const ComplexMatrix& weight,
                                  int dim_first, int dim_second);

/// (M + M^dagger) / 2.
HermitianOperator hermitize(const ComplexMatrix& m);

/// Max |M(i,j) - conj(M(j,i))|.
double hermiticity_residual(const ComplexMatrix& m);

/// Sum of |eigenvalues|.
double trace_norm(const HermitianOperator& h);

/// True when every off-diagonal entry has magnitude below tol.
bool is_diagonal(const ComplexMatrix& m, double tol = 1e-12);

}  // namespace qib
