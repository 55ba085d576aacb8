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

#include "modal/subspace.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace modal {

namespace {

constexpr double kMaxPivotCondition = 1e12;

// (q - p) x q band with [a_p, ..., a_1, 1] starting at column r of row r.
Eigen::MatrixXcd band_rows(const MonicPolynomial& a, int q) {
  const int p = a.degree();
  const std::vector<Complex> band = a.band_coefficients();
  Eigen::MatrixXcd rows = Eigen::MatrixXcd::Zero(q - p, q);
  for (int r = 0; r < q - p; ++r) {
    for (int i = 0; i <= p; ++i) {
      rows(r, r + i) = band[static_cast<std::size_t>(i)];
    }
  }
  return rows;
}

double condition_number(const Eigen::MatrixXcd& square) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(square);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace

OrthoBasis ortho_general(const Eigen::MatrixXcd& V, const std::vector<int>& pivot_rows) {
  const int m = static_cast<int>(V.rows());
  const int p = static_cast<int>(V.cols());
  if (m <= p) {
    throw std::invalid_argument("ortho_general: V must be tall (m > p)");
  }
  if (static_cast<int>(pivot_rows.size()) != p) {
    throw std::invalid_argument("ortho_general: exactly p pivot rows required");
  }

  std::vector<bool> used(static_cast<std::size_t>(m), false);
  for (int r : pivot_rows) {
    if (r < 0 || r >= m || used[static_cast<std::size_t>(r)]) {
      throw std::invalid_argument("ortho_general: pivot rows must be distinct and in range");
    }
    used[static_cast<std::size_t>(r)] = true;
  }

  // Row permutation: pivots first, remaining sensors in ascending order.
  std::vector<int> perm(pivot_rows);
  perm.reserve(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    if (!used[static_cast<std::size_t>(r)]) perm.push_back(r);
  }

  Eigen::MatrixXcd V1(p, p);
  Eigen::MatrixXcd V2(m - p, p);
  for (int i = 0; i < p; ++i) V1.row(i) = V.row(perm[static_cast<std::size_t>(i)]);
  for (int i = p; i < m; ++i) V2.row(i - p) = V.row(perm[static_cast<std::size_t>(i)]);

  if (condition_number(V1) > kMaxPivotCondition) {
    throw std::runtime_error("ortho_general: pivot rows give a singular V1");
  }

  // X = V2 V1^{-1}, via X^T = (V1^T)^{-1} V2^T.
  Eigen::MatrixXcd XT = V1.transpose().partialPivLu().solve(V2.transpose());

  Eigen::MatrixXcd AH(m - p, m);
  AH.leftCols(p) = -XT.transpose();
  AH.rightCols(m - p) = Eigen::MatrixXcd::Identity(m - p, m - p);

  // Undo the permutation: column j of AH addresses permuted sensor j.
  Eigen::MatrixXcd AH_orig(m - p, m);
  for (int j = 0; j < m; ++j) {
    AH_orig.col(perm[static_cast<std::size_t>(j)]) = AH.col(j);
  }

  OrthoBasis basis;
  basis.matrix = AH_orig.adjoint();
  basis.structure = OrthoStructure::General;
  return basis;
}

OrthoBasis ortho_general(const Eigen::MatrixXcd& V) {
  const int m = static_cast<int>(V.rows());
  const int p = static_cast<int>(V.cols());
  if (m <= p) {
    throw std::invalid_argument("ortho_general: V must be tall (m > p)");
  }

  std::vector<int> pivots(static_cast<std::size_t>(p));
  std::iota(pivots.begin(), pivots.end(), 0);

  Eigen::MatrixXcd V1 = V.topRows(p);
  if (condition_number(V1) > kMaxPivotCondition) {
    // Re-pick rows greedily: column pivoting on V^T ranks rows of V by how
    // much independent direction each contributes.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(V.transpose());
    const auto& indices = qr.colsPermutation().indices();
    for (int i = 0; i < p; ++i) pivots[static_cast<std::size_t>(i)] = indices(i);
    std::sort(pivots.begin(), pivots.end());
  }
  return ortho_general(V, pivots);
}

OrthoBasis ortho_ula(const MonicPolynomial& a, int m) {
  if (m <= a.degree()) {
    throw std::invalid_argument("ortho_ula: m must exceed the polynomial degree");
  }
  OrthoBasis basis;
  basis.matrix = band_rows(a, m).adjoint();
  basis.structure = OrthoStructure::UlaBanded;
  return basis;
}

OrthoBasis ortho_sparse(const MonicPolynomial& a, const SparseResolverPolynomial& b,
                        const ArrayGeometry& geometry) {
  if (geometry.kind() != ArrayKind::Sparse) {
    throw std::invalid_argument("ortho_sparse: geometry must be a sparse array");
  }
  const int p = a.degree();
  if (b.degree() != p) {
    throw std::invalid_argument("ortho_sparse: a and b must have equal degree");
  }
  const SparseParams& params = geometry.sparse_params();
  if (b.d != params.d || b.M != params.M) {
    throw std::invalid_argument("ortho_sparse: resolver polynomial does not match the geometry");
  }
  const int m = geometry.size();
  if (m <= p + 1) {
    throw std::invalid_argument("ortho_sparse: array too short for the requested degree");
  }

  // Build A^H against the natural sensor order {0, d, ..., (m-2)d, M}:
  // columns 0 .. m-2 are the sublattice, column m-1 the extra sensor.
  Eigen::MatrixXcd AH = Eigen::MatrixXcd::Zero(m - p, m);
  AH.block(0, 0, m - p - 1, m - 1) = band_rows(a, m - 1);
  for (int j = 0; j < p; ++j) {
    AH(m - p - 1, j) = b.b[static_cast<std::size_t>(p - 1 - j)];  // b_{p-j}
  }
  AH(m - p - 1, m - 1) = Complex(1.0, 0.0);

  // Permute columns into the geometry's sorted storage order.
  const std::vector<int>& sub = geometry.sublattice_indices();
  Eigen::MatrixXcd AH_sorted(m - p, m);
  for (int j = 0; j < m - 1; ++j) AH_sorted.col(sub[static_cast<std::size_t>(j)]) = AH.col(j);
  AH_sorted.col(geometry.extra_sensor_index()) = AH.col(m - 1);

  OrthoBasis basis;
  basis.matrix = AH_sorted.adjoint();
  basis.structure = OrthoStructure::Sparse;
  return basis;
}

CoprimePartialBasis ortho_coprime_partial(const MonicPolynomial& a, const MonicPolynomial& b,
                                          int m1, int m2) {
  const int p = a.degree();
  if (b.degree() != p) {
    throw std::invalid_argument("ortho_coprime_partial: a and b must have equal degree");
  }
  if (m1 <= p) {
    throw std::invalid_argument("ortho_coprime_partial: subarray 1 too short (needs m1 > p)");
  }
  if (2 * m2 - 1 <= p) {
    throw std::invalid_argument(
        "ortho_coprime_partial: subarray 2 too short (needs 2*m2 - 1 > p)");
  }
  CoprimePartialBasis basis;
  basis.A1 = band_rows(a, m1).adjoint();
  basis.B1 = band_rows(b, 2 * m2 - 1).adjoint();
  return basis;
}

OrthoBasis ortho_coprime_full(const ModeSet& modes, int m1, int m2) {
  const ArrayGeometry geometry = make_coprime(m1, m2);
  const int p = modes.size();
  const int n2 = 2 * m2 - 1;
  const int m = m1 + n2;
  if (p > m1 || p > n2) {
    throw std::invalid_argument("ortho_coprime_full: subarray too short for the mode count");
  }

  // p x p Vandermonde blocks on I_p1 = {0, m2, ..., (p-1) m2} and
  // I_p2 = {m1, ..., p m1}.
  Eigen::MatrixXcd Vp1(p, p);
  Eigen::MatrixXcd Vp2(p, p);
  for (int k = 0; k < p; ++k) {
    for (int j = 0; j < p; ++j) {
      Vp1(j, k) = integer_power(modes[k], static_cast<long long>(j) * m2);
      Vp2(j, k) = integer_power(modes[k], static_cast<long long>(j + 1) * m1);
    }
  }
  if (condition_number(Vp1) > kMaxPivotCondition) {
    throw std::runtime_error("ortho_coprime_full: V(z, I_p1) is singular; "
                             "modes share an m2-th power");
  }
  // C0^H = -Vp2 Vp1^{-1}.
  Eigen::MatrixXcd C0H =
      -Vp1.transpose().partialPivLu().solve(Vp2.transpose()).transpose();

  const MonicPolynomial a = MonicPolynomial::from_roots([&] {
    std::vector<Complex> w(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) w[static_cast<std::size_t>(k)] = integer_power(modes[k], m2);
    return w;
  }());
  const MonicPolynomial b = MonicPolynomial::from_roots([&] {
    std::vector<Complex> s(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) s[static_cast<std::size_t>(k)] = integer_power(modes[k], m1);
    return s;
  }());

  // Subarray-local banded blocks; either may have zero columns when a
  // subarray length equals p.
  Eigen::MatrixXcd A1H = band_rows(a, m1);
  Eigen::MatrixXcd B1H = band_rows(b, n2);

  // Assemble A^H in natural order (subarray 1 sensors, then subarray 2):
  // block-diagonal [A1^H; B1^H] plus the p coupling rows
  // C1^H = [C0^H | 0 | I_p | 0].
  Eigen::MatrixXcd AH = Eigen::MatrixXcd::Zero(m - p, m);
  AH.block(0, 0, m1 - p, m1) = A1H;
  AH.block(m1 - p, m1, n2 - p, n2) = B1H;
  AH.block(m - 2 * p, 0, p, p) = C0H;
  AH.block(m - 2 * p, m1, p, p) = Eigen::MatrixXcd::Identity(p, p);

  // Natural order -> sorted storage order.
  const std::vector<int>& sub1 = geometry.subarray1_indices();
  const std::vector<int>& sub2 = geometry.subarray2_indices();
  Eigen::MatrixXcd AH_sorted(m - p, m);
  for (int j = 0; j < m1; ++j) AH_sorted.col(sub1[static_cast<std::size_t>(j)]) = AH.col(j);
  for (int j = 0; j < n2; ++j) {
    AH_sorted.col(sub2[static_cast<std::size_t>(j)]) = AH.col(m1 + j);
  }

  OrthoBasis basis;
  basis.matrix = AH_sorted.adjoint();
  basis.structure = OrthoStructure::CoprimeFull;
  return basis;
}

}  // namespace modal
