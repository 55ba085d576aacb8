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

#include <vector>

#include <Eigen/Core>

#include "modal/geometry.hpp"
#include "modal/model.hpp"
#include "modal/polynomial.hpp"
#include "modal/types.hpp"

namespace modal {

enum class OrthoStructure { General, UlaBanded, Sparse, CoprimeFull };

/// Basis A of the orthogonal complement of the signal subspace: an
/// m x (m - p) full-column-rank matrix with A^H V = 0 for the generating
/// Vandermonde matrix V.
struct OrthoBasis {
  Eigen::MatrixXcd matrix;
  OrthoStructure structure = OrthoStructure::General;

  int sensors() const { return static_cast<int>(matrix.rows()); }
  int corank() const { return static_cast<int>(matrix.cols()); }
};

/// Geometry-free construction from any full-column-rank V: with the pivot
/// rows collected into an invertible V1 and the rest into V2,
/// A^H = [-V2 V1^{-1} | I] up to the column permutation that restores the
/// original sensor order. Throws std::runtime_error when the pivot rows give
/// a (numerically) singular V1.
OrthoBasis ortho_general(const Eigen::MatrixXcd& V, const std::vector<int>& pivot_rows);

/// As above with pivot rows defaulting to the first p sensors; if those are
/// ill-conditioned, pivots are re-picked greedily by a rank-revealing
/// factorization of the rows.
OrthoBasis ortho_general(const Eigen::MatrixXcd& V);

/// Banded Toeplitz basis for a uniform array: row r of A^H carries
/// [a_p, ..., a_1, 1] starting at column r. Each row is one step of the
/// prediction recursion, so A^H annihilates every exponential whose mode is
/// a root of the polynomial. Requires m > degree(a).
OrthoBasis ortho_ula(const MonicPolynomial& a, int m);

/// Sparse-array basis: the banded block of `a` (in w = z^d) over the
/// sublattice sensors, plus one row [b_p, ..., b_1, 0, ..., 0, 1] tying the
/// extra sensor at M to the first p sublattice sensors. `a` must have the
/// d-th powers of the modes as roots and `b` must solve the resolver system
/// for the same modes. Columns are aligned to the geometry's sorted sensor
/// order. Requires geometry.size() > degree + 1.
OrthoBasis ortho_sparse(const MonicPolynomial& a, const SparseResolverPolynomial& b,
                        const ArrayGeometry& geometry);

/// The two banded blocks of the co-prime characterization, each acting on
/// one subarray's samples in its own decimated variable.
struct CoprimePartialBasis {
  Eigen::MatrixXcd A1;  ///< m1 x (m1 - p), annihilates V(z, I1)
  Eigen::MatrixXcd B1;  ///< (2 m2 - 1) x (2 m2 - 1 - p), annihilates V(z, I2)
};

/// `a` has roots {z_k^{m2}}, `b` has roots {z_k^{m1}}. Throws
/// std::invalid_argument when either subarray is too short (m1 <= p or
/// 2 m2 - 1 <= p).
CoprimePartialBasis ortho_coprime_partial(const MonicPolynomial& a, const MonicPolynomial& b,
                                          int m1, int m2);

/// Full m x (m - p) co-prime basis: block-diagonal [A1, B1] completed by p
/// coupling columns C1 with C0^H = -V(z, I_p2) V^{-1}(z, I_p1), where
/// I_p1 = {0, m2, ..., (p-1) m2} and I_p2 = {m1, ..., p m1}. C0 depends on
/// the modes only through their m1-th and m2-th powers. Rows are aligned to
/// the sorted sensor order. Throws std::runtime_error when V(z, I_p1) is
/// singular.
OrthoBasis ortho_coprime_full(const ModeSet& modes, int m1, int m2);

}  // namespace modal
