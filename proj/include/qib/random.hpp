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

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "qib/hermitian.hpp"

namespace qib {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent stream seed from (seed, tag, index). Sweeps use one
/// stream per run so results do not depend on execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index);

/// Seeded random source. Only the engine output of std::mt19937_64 is used
/// (the standard fixes it); all distributions are computed here so draws are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double normal();
  /// Symmetric Dirichlet(1), i.e. uniform on the simplex.
  RealVector dirichlet(int n);
  /// Uniformly random permutation of 0..n-1.
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-random unitary (QR of a complex Ginibre matrix with phase fix).
ComplexMatrix random_unitary(int dim, Rng& rng);

/// Full-rank density: Dirichlet(1) spectrum, conjugated by a Haar unitary
/// unless `classical`, in which case it stays diagonal.
DensityOperator random_density(int dim, bool classical, Rng& rng);

/// Hermitian matrix with independent Gaussian entries.
HermitianOperator random_hermitian(int dim, Rng& rng);

}  // namespace qib
