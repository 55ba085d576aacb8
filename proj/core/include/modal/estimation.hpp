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

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "modal/model.hpp"
#include "modal/polynomial.hpp"
#include "modal/types.hpp"

namespace modal {

struct IqmlOptions {
  int max_iters = 20;
  double tol = 1e-8;    ///< convergence threshold on the coefficient vector
  double ridge = 0.0;   ///< Tikhonov term for the reduced quadratic solve
};

struct IqmlResult {
  MonicPolynomial poly;
  int iterations = 0;
  bool ridge_fallback = false;  ///< a solve needed ridge regularization
};

/// Hankel data matrix: row r = [y_r, y_{r+1}, ..., y_{r+p}], shape
/// (q - p) x (p + 1). With the band coefficients ata = [a_p, ..., a_1, 1],
/// hankel_stack(y, p) * ata equals A^H y for the banded uniform-array basis.
Eigen::MatrixXcd hankel_stack(const Eigen::VectorXcd& y, int p);

/// Linear prediction: minimizes sum_n |hankel_stack(y_n, p) * ata|^2 over the
/// band vector with its trailing coefficient fixed to 1. Each snapshot must
/// have the same length q > 2p. Throws std::runtime_error when the stacked
/// system is degenerate (e.g. all-zero data).
MonicPolynomial linear_prediction(const std::vector<Eigen::VectorXcd>& snapshots, int p);

/// Iterative quadratic maximum likelihood. Iteration 1 is the linear
/// prediction solution (identity weighting); iteration l >= 2 minimizes
/// ata^H . sum_n Y_n^H (A_{l-1}^H A_{l-1})^{-1} Y_n . ata with the trailing
/// coefficient fixed, where A_{l-1} is the banded basis of the previous
/// coefficients. Stops when the coefficient step drops below opts.tol.
IqmlResult iqml(const std::vector<Eigen::VectorXcd>& snapshots, int p,
                const IqmlOptions& opts = {});

/// All factor-wise alias combinations of a decimated root set. Orbit k holds
/// the factor-th roots of base_roots[k]; tuples is their Cartesian product
/// (factor^p entries).
class CandidateSet {
 public:
  CandidateSet(std::vector<Complex> base_roots, int factor);

  int mode_count() const { return static_cast<int>(base_roots_.size()); }
  int factor() const { return factor_; }
  const std::vector<Complex>& base_roots() const { return base_roots_; }

  /// Principal factor-th root of base_roots[k].
  Complex principal(int k) const { return principal_[static_cast<std::size_t>(k)]; }

  /// {principal(k) * e^{j 2 pi q / factor} : q = 0 .. factor-1}.
  std::vector<Complex> orbit(int k) const;

  /// All factor^p candidate tuples, last index fastest.
  const std::vector<std::vector<Complex>>& tuples() const { return tuples_; }

 private:
  std::vector<Complex> base_roots_;
  std::vector<Complex> principal_;
  int factor_ = 1;
  std::vector<std::vector<Complex>> tuples_;
};

CandidateSet candidate_set(const std::vector<Complex>& base_roots, int factor);

/// Outcome of the sparse aliasing-resolution step.
struct SparseResolution {
  SparseResolverPolynomial resolver;  ///< winning coefficients b
  std::vector<Complex> modes;         ///< winning candidate tuple
  double objective = 0.0;             ///< sum_n |y_M[n] + zeta^T u[n]|^2 at the winner
  std::size_t tuple_index = 0;
};

/// Scores every candidate tuple of R: solve the resolver constraint for that
/// tuple (the p x p system matrix depends only on the shared d-th powers, so
/// it is factored once), evaluate the prediction error of the extra sensor
/// from the first p sublattice sensors, and keep the minimizer.
///
/// u: p x N matrix of the first p sublattice samples (locations 0 .. (p-1)d);
/// extra: length-N samples of the sensor at M. Throws std::runtime_error when
/// two base roots coincide (the system matrix is singular).
SparseResolution resolve_sparse(const Eigen::MatrixXcd& u, const Eigen::VectorXcd& extra,
                                const CandidateSet& R, int M, int d);

/// Closest-pair intersection of two candidate sets built from co-prime
/// factors. Orbits are matched one-to-one greedily by ascending pair
/// distance; each returned mode is the midpoint of its matched pair.
struct CandidateIntersection {
  std::vector<Complex> modes;
  double distance = 0.0;  ///< max over matched pairs of |c1 - c2|
};

CandidateIntersection intersect_candidates(const CandidateSet& R1, const CandidateSet& R2);

struct EstimateDiagnostics {
  std::vector<int> iqml_iterations;          ///< one entry per IQML subproblem
  double residual_energy = 0.0;              ///< orthogonal-subspace energy at the estimate
  std::vector<std::size_t> candidate_counts; ///< candidate set sizes, when built
  double intersection_distance = 0.0;        ///< co-prime only
  double resolver_objective = 0.0;           ///< sparse only
  bool ridge_fallback = false;
};

struct ModeEstimate {
  ModeSet modes;
  EstimateDiagnostics diagnostics;
};

/// Uniform array: IQML on the full sensor vectors, modes are the roots of
/// the converged polynomial. Requires m > 2p.
ModeEstimate estimate_ula(const SnapshotMatrix& Y, int p, const IqmlOptions& opts = {});

/// Sparse array: IQML on the sublattice samples estimates the d-th powers,
/// then the extra sensor picks the right alias tuple through resolve_sparse.
/// Requires m - 1 > 2p sublattice sensors.
ModeEstimate estimate_sparse(const SnapshotMatrix& Y, int p, const IqmlOptions& opts = {});

/// Co-prime array: IQML per subarray estimates the m2-th and m1-th powers;
/// the two alias orbits intersect at the true modes because the factors are
/// co-prime. Requires m1 > 2p and 2 m2 - 1 > 2p.
ModeEstimate estimate_coprime(const SnapshotMatrix& Y, int p, const IqmlOptions& opts = {});

/// Dispatches to the estimator matching the snapshot geometry.
ModeEstimate estimate_modes(const SnapshotMatrix& Y, int p, const IqmlOptions& opts = {});

}  // namespace modal
