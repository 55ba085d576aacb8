// SPDX-License-Identifier: Apache-2.0
//
// modal-arrays: estimation of damped complex exponential modes with
// uniform, sparse, and co-prime line arrays.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "modal/geometry.hpp"
#include "modal/types.hpp"

namespace modal {

/// An ordered set of p >= 1 pairwise distinct modes z_k = rho_k e^{j theta_k}.
class ModeSet {
 public:
  explicit ModeSet(std::vector<Complex> modes);

  int size() const { return static_cast<int>(modes_.size()); }
  const std::vector<Complex>& modes() const { return modes_; }
  Complex operator[](int k) const { return modes_[static_cast<std::size_t>(k)]; }

  /// True when z_i^factor != z_j^factor for all i != j (up to a small
  /// relative tolerance). Undersampled estimation needs this stronger
  /// separation: a sparse array with spacing d requires distinct d-th powers,
  /// a co-prime array distinct m1-th and m2-th powers.
  bool has_distinct_powers(int factor, double rel_tol = 1e-9) const;

 private:
  std::vector<Complex> modes_;
};

/// Per-element complex noise level and the RNG seed that makes a synthesis
/// run reproducible. Noise is i.i.d. proper complex normal: real and
/// imaginary parts are independent N(0, sigma2/2).
struct NoiseModel {
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
};

/// m x N complex measurements, one column per temporal snapshot, rows in the
/// geometry's (sorted) sensor order.
struct SnapshotMatrix {
  Eigen::MatrixXcd data;
  ArrayGeometry geometry;

  SnapshotMatrix(Eigen::MatrixXcd data_in, ArrayGeometry geometry_in);

  int sensors() const { return static_cast<int>(data.rows()); }
  int snapshots() const { return static_cast<int>(data.cols()); }
};

/// Generalized Vandermonde matrix: entry (l, k) = z_k^{i_l} with i_l the l-th
/// sensor location. Powers use repeated squaring.
Eigen::MatrixXcd vandermonde(const ModeSet& modes, const ArrayGeometry& geometry);

/// y[n] = V x[n] + e[n]. weights is p x N; with sigma2 = 0 the result is
/// exactly V * weights. Deterministic for a fixed noise seed.
SnapshotMatrix synthesize(const ModeSet& modes, const Eigen::MatrixXcd& weights,
                          const ArrayGeometry& geometry, const NoiseModel& noise);

/// Least squares weights (V^H V)^{-1} V^H y, computed through a column-pivoted
/// QR factorization rather than the normal equations. Throws
/// std::runtime_error when V is rank deficient.
Eigen::VectorXcd ls_weights(const Eigen::MatrixXcd& V, const Eigen::VectorXcd& y);

/// sum_n y[n]^H A (A^H A)^{-1} A^H y[n]: the energy of Y inside the column
/// span of A. Throws std::runtime_error when A is rank deficient.
double residual_energy(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& A);

}  // namespace modal
