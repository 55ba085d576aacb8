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

#include "modal/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "modal/subspace.hpp"

namespace modal {

namespace {

constexpr std::size_t kMaxCandidateTuples = std::size_t{1} << 22;

void check_snapshots(const std::vector<Eigen::VectorXcd>& snapshots, int p) {
  if (p < 1) {
    throw std::invalid_argument("mode count p must be >= 1");
  }
  if (snapshots.empty()) {
    throw std::invalid_argument("at least one snapshot required");
  }
  const Eigen::Index q = snapshots.front().size();
  for (const auto& y : snapshots) {
    if (y.size() != q) {
      throw std::invalid_argument("snapshots must all have the same length");
    }
  }
  if (q <= 2 * p) {
    throw std::invalid_argument("snapshot length must exceed 2p");
  }
}

std::vector<Complex> reversed_to_tail(const Eigen::VectorXcd& c) {
  // c = [a_p, ..., a_1]  ->  tail = [a_1, ..., a_p]
  const int p = static_cast<int>(c.size());
  std::vector<Complex> tail(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) tail[static_cast<std::size_t>(i)] = c(p - 1 - i);
  return tail;
}

// Diagnostic only; never lets a projector failure mask a finished estimate.
double residual_at(const SnapshotMatrix& Y, const ModeSet& modes) {
  try {
    const OrthoBasis basis = ortho_general(vandermonde(modes, Y.geometry));
    return residual_energy(Y.data, basis.matrix);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::vector<Eigen::VectorXcd> gather_rows(const SnapshotMatrix& Y, const std::vector<int>& rows) {
  std::vector<Eigen::VectorXcd> out(static_cast<std::size_t>(Y.snapshots()));
  for (int n = 0; n < Y.snapshots(); ++n) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      v(static_cast<Eigen::Index>(j)) = Y.data(rows[j], n);
    }
    out[static_cast<std::size_t>(n)] = std::move(v);
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd hankel_stack(const Eigen::VectorXcd& y, int p) {
  const int q = static_cast<int>(y.size());
  if (p < 1) {
    throw std::invalid_argument("hankel_stack: p must be >= 1");
  }
  if (q <= p) {
    throw std::invalid_argument("hankel_stack: vector length must exceed p");
  }
  Eigen::MatrixXcd H(q - p, p + 1);
  for (int r = 0; r < q - p; ++r) {
    for (int c = 0; c <= p; ++c) H(r, c) = y(r + c);
  }
  return H;
}

MonicPolynomial linear_prediction(const std::vector<Eigen::VectorXcd>& snapshots, int p) {
  check_snapshots(snapshots, p);
  const int q = static_cast<int>(snapshots.front().size());
  const int rows_per = q - p;
  const int total = rows_per * static_cast<int>(snapshots.size());

  Eigen::MatrixXcd F(total, p);
  Eigen::VectorXcd g(total);
  for (std::size_t n = 0; n < snapshots.size(); ++n) {
    const Eigen::MatrixXcd H = hankel_stack(snapshots[n], p);
    F.middleRows(static_cast<int>(n) * rows_per, rows_per) = H.leftCols(p);
    g.segment(static_cast<int>(n) * rows_per, rows_per) = H.col(p);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(F);
  if (qr.rank() < p) {
    throw std::runtime_error("linear_prediction: degenerate stacked system");
  }
  return MonicPolynomial(reversed_to_tail(qr.solve(-g)));
}

IqmlResult iqml(const std::vector<Eigen::VectorXcd>& snapshots, int p, const IqmlOptions& opts) {
  if (opts.max_iters < 1) {
    throw std::invalid_argument("iqml: max_iters must be >= 1");
  }
  if (!(opts.tol > 0.0)) {
    throw std::invalid_argument("iqml: tol must be > 0");
  }
  if (opts.ridge < 0.0) {
    throw std::invalid_argument("iqml: ridge must be >= 0");
  }
  check_snapshots(snapshots, p);
  const int q = static_cast<int>(snapshots.front().size());

  std::vector<Eigen::MatrixXcd> hankel;
  hankel.reserve(snapshots.size());
  for (const auto& y : snapshots) hankel.push_back(hankel_stack(y, p));

  IqmlResult result{linear_prediction(snapshots, p), 1, false};

  for (int l = 2; l <= opts.max_iters; ++l) {
    const OrthoBasis basis = ortho_ula(result.poly, q);
    Eigen::MatrixXcd gram = basis.matrix.adjoint() * basis.matrix;

    Eigen::LDLT<Eigen::MatrixXcd> gram_ldlt(gram);
    if (gram_ldlt.info() != Eigen::Success) {
      const double jitter =
          opts.ridge > 0.0 ? opts.ridge : 1e-12 * std::max(1.0, gram.diagonal().real().mean());
      gram.diagonal().array() += jitter;
      gram_ldlt.compute(gram);
      result.ridge_fallback = true;
      if (gram_ldlt.info() != Eigen::Success) {
        throw std::runtime_error("iqml: A^H A factorization failed");
      }
    }

    Eigen::MatrixXcd quad = Eigen::MatrixXcd::Zero(p + 1, p + 1);
    for (const auto& H : hankel) {
      quad.noalias() += H.adjoint() * gram_ldlt.solve(H);
    }

    Eigen::MatrixXcd Q11 = quad.topLeftCorner(p, p);
    const Eigen::VectorXcd q12 = quad.topRightCorner(p, 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(Q11, Eigen::EigenvaluesOnly);
    const double lmax = eig.eigenvalues().maxCoeff();
    const double lmin = eig.eigenvalues().minCoeff();
    if (!(lmin > lmax * 1e-12) || !(lmax > 0.0)) {
      const double jitter = opts.ridge > 0.0 ? opts.ridge : std::max(lmax, 1.0) * 1e-12;
      Q11.diagonal().array() += jitter;
      result.ridge_fallback = true;
    }

    const Eigen::VectorXcd c = Q11.ldlt().solve(-q12);
    MonicPolynomial next(reversed_to_tail(c));

    double step = 0.0;
    for (int i = 0; i < p; ++i) {
      step += std::norm(next.tail()[static_cast<std::size_t>(i)] -
                        result.poly.tail()[static_cast<std::size_t>(i)]);
    }
    step = std::sqrt(step);

    result.poly = std::move(next);
    result.iterations = l;
    if (step <= opts.tol) break;
  }
  return result;
}

CandidateSet::CandidateSet(std::vector<Complex> base_roots, int factor)
    : base_roots_(std::move(base_roots)), factor_(factor) {
  if (factor_ < 1) {
    throw std::invalid_argument("candidate_set: factor must be >= 1");
  }
  if (base_roots_.empty()) {
    throw std::invalid_argument("candidate_set: at least one base root required");
  }
  const int p = mode_count();

  double tuple_count = 1.0;
  for (int k = 0; k < p; ++k) tuple_count *= factor_;
  if (tuple_count > static_cast<double>(kMaxCandidateTuples)) {
    throw std::invalid_argument("candidate_set: factor^p exceeds the tuple limit");
  }

  principal_.resize(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) {
    principal_[static_cast<std::size_t>(k)] = principal_root(base_roots_[static_cast<std::size_t>(k)], factor_);
  }

  // Cartesian product, last index fastest.
  tuples_.reserve(static_cast<std::size_t>(tuple_count));
  std::vector<int> shifts(static_cast<std::size_t>(p), 0);
  while (true) {
    std::vector<Complex> tuple(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
      const double phase = 2.0 * M_PI * shifts[static_cast<std::size_t>(k)] / factor_;
      tuple[static_cast<std::size_t>(k)] =
          principal_[static_cast<std::size_t>(k)] * std::polar(1.0, phase);
    }
    tuples_.push_back(std::move(tuple));

    int k = p - 1;
    while (k >= 0 && ++shifts[static_cast<std::size_t>(k)] == factor_) {
      shifts[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
}

std::vector<Complex> CandidateSet::orbit(int k) const {
  std::vector<Complex> out(static_cast<std::size_t>(factor_));
  for (int q = 0; q < factor_; ++q) {
    out[static_cast<std::size_t>(q)] =
        principal(k) * std::polar(1.0, 2.0 * M_PI * q / factor_);
  }
  return out;
}

CandidateSet candidate_set(const std::vector<Complex>& base_roots, int factor) {
  return CandidateSet(base_roots, factor);
}

SparseResolution resolve_sparse(const Eigen::MatrixXcd& u, const Eigen::VectorXcd& extra,
                                const CandidateSet& R, int M, int d) {
  const int p = R.mode_count();
  if (u.rows() != p) {
    throw std::invalid_argument("resolve_sparse: u must have one row per mode");
  }
  if (u.cols() != extra.size()) {
    throw std::invalid_argument("resolve_sparse: u and extra must cover the same snapshots");
  }
  if (R.factor() != d) {
    throw std::invalid_argument("resolve_sparse: candidate set factor must equal d");
  }

  const std::vector<Complex>& w = R.base_roots();
  double scale = 1.0;
  for (const Complex& wk : w) scale = std::max(scale, std::abs(wk));
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      if (std::abs(w[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(j)]) <=
          1e-12 * scale) {
        throw std::runtime_error("resolve_sparse: degenerate modes (shared d-th power)");
      }
    }
  }

  // Constraint matrix in the shared d-th powers; only the right side changes
  // from tuple to tuple.
  Eigen::MatrixXcd Vp(p, p);
  for (int k = 0; k < p; ++k) {
    for (int j = 0; j < p; ++j) Vp(j, k) = integer_power(w[static_cast<std::size_t>(k)], j);
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Vp.transpose());

  SparseResolution best;
  double best_objective = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd best_zeta;

  const auto& tuples = R.tuples();
  for (std::size_t idx = 0; idx < tuples.size(); ++idx) {
    const std::vector<Complex>& tuple = tuples[idx];
    Eigen::VectorXcd rhs(p);
    for (int k = 0; k < p; ++k) rhs(k) = -integer_power(tuple[static_cast<std::size_t>(k)], M);
    const Eigen::VectorXcd zeta = lu.solve(rhs);
    const double objective = (extra + u.transpose() * zeta).squaredNorm();
    if (objective < best_objective) {
      best_objective = objective;
      best_zeta = zeta;
      best.modes = tuple;
      best.tuple_index = idx;
    }
  }

  // zeta = [b_p, ..., b_1].
  best.resolver.b.resize(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) best.resolver.b[static_cast<std::size_t>(i)] = best_zeta(p - 1 - i);
  best.resolver.M = M;
  best.resolver.d = d;
  best.objective = best_objective;
  return best;
}

CandidateIntersection intersect_candidates(const CandidateSet& R1, const CandidateSet& R2) {
  const int p = R1.mode_count();
  if (R2.mode_count() != p) {
    throw std::invalid_argument("intersect_candidates: orbit count mismatch");
  }

  struct OrbitPair {
    double dist;
    int i, j;
    Complex c1, c2;
  };
  std::vector<OrbitPair> pairs;
  pairs.reserve(static_cast<std::size_t>(p) * static_cast<std::size_t>(p));

  for (int i = 0; i < p; ++i) {
    const std::vector<Complex> orbit1 = R1.orbit(i);
    for (int j = 0; j < p; ++j) {
      const std::vector<Complex> orbit2 = R2.orbit(j);
      OrbitPair best{std::numeric_limits<double>::infinity(), i, j, {}, {}};
      for (const Complex& c1 : orbit1) {
        for (const Complex& c2 : orbit2) {
          const double dist = std::abs(c1 - c2);
          if (dist < best.dist) {
            best.dist = dist;
            best.c1 = c1;
            best.c2 = c2;
          }
        }
      }
      pairs.push_back(best);
    }
  }

  std::sort(pairs.begin(), pairs.end(), [](const OrbitPair& a, const OrbitPair& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  CandidateIntersection result;
  result.modes.resize(static_cast<std::size_t>(p));
  std::vector<bool> used1(static_cast<std::size_t>(p), false);
  std::vector<bool> used2(static_cast<std::size_t>(p), false);
  int matched = 0;
  for (const OrbitPair& pair : pairs) {
    if (used1[static_cast<std::size_t>(pair.i)] || used2[static_cast<std::size_t>(pair.j)]) {
      continue;
    }
    used1[static_cast<std::size_t>(pair.i)] = true;
    used2[static_cast<std::size_t>(pair.j)] = true;
    result.modes[static_cast<std::size_t>(pair.i)] = 0.5 * (pair.c1 + pair.c2);
    result.distance = std::max(result.distance, pair.dist);
    if (++matched == p) break;
  }
  return result;
}

ModeEstimate estimate_ula(const SnapshotMatrix& Y, int p, const IqmlOptions& opts) {
  if (Y.geometry.kind() != ArrayKind::Uniform) {
    throw std::invalid_argument("estimate_ula: geometry must be a uniform array");
  }
  if (Y.sensors() <= 2 * p) {
    throw std::invalid_argument("estimate_ula: needs m > 2p");
  }

  std::vector<Eigen::VectorXcd> snapshots(static_cast<std::size_t>(Y.snapshots()));
  for (int n = 0; n < Y.snapshots(); ++n) snapshots[static_cast<std::size_t>(n)] = Y.data.col(n);

  const IqmlResult fit = iqml(snapshots, p, opts);

  ModeEstimate estimate{ModeSet(fit.poly.roots()), {}};
  estimate.diagnostics.iqml_iterations = {fit.iterations};
  estimate.diagnostics.ridge_fallback = fit.ridge_fallback;
  estimate.diagnostics.residual_energy = residual_at(Y, estimate.modes);
  return estimate;
}

ModeEstimate estimate_sparse(const SnapshotMatrix& Y, int p, const IqmlOptions& opts) {
  if (Y.geometry.kind() != ArrayKind::Sparse) {
    throw std::invalid_argument("estimate_sparse: geometry must be a sparse array");
  }
  const SparseParams& params = Y.geometry.sparse_params();
  const int sublattice_len = Y.sensors() - 1;
  if (sublattice_len <= 2 * p) {
    throw std::invalid_argument("estimate_sparse: needs m - 1 > 2p sublattice sensors");
  }

  // Step 1: IQML on the sublattice samples, a uniform array in w = z^d.
  const std::vector<Eigen::VectorXcd> sub = gather_rows(Y, Y.geometry.sublattice_indices());
  const IqmlResult fit = iqml(sub, p, opts);

  // Step 2: root and unwrap into the candidate set of d-th roots.
  const CandidateSet R = candidate_set(fit.poly.roots(), params.d);

  // Steps 3-4: the extra sensor scores every alias tuple.
  Eigen::MatrixXcd u(p, Y.snapshots());
  for (int j = 0; j < p; ++j) {
    u.row(j) = Y.data.row(Y.geometry.sublattice_indices()[static_cast<std::size_t>(j)]);
  }
  const Eigen::VectorXcd extra = Y.data.row(Y.geometry.extra_sensor_index()).transpose();
  const SparseResolution resolution = resolve_sparse(u, extra, R, params.M, params.d);

  ModeEstimate estimate{ModeSet(resolution.modes), {}};
  estimate.diagnostics.iqml_iterations = {fit.iterations};
  estimate.diagnostics.ridge_fallback = fit.ridge_fallback;
  estimate.diagnostics.candidate_counts = {R.tuples().size()};
  estimate.diagnostics.resolver_objective = resolution.objective;
  estimate.diagnostics.residual_energy = residual_at(Y, estimate.modes);
  return estimate;
}

ModeEstimate estimate_coprime(const SnapshotMatrix& Y, int p, const IqmlOptions& opts) {
  if (Y.geometry.kind() != ArrayKind::Coprime) {
    throw std::invalid_argument("estimate_coprime: geometry must be a co-prime array");
  }
  const CoprimeParams& params = Y.geometry.coprime_params();
  if (params.m1 <= 2 * p) {
    throw std::invalid_argument("estimate_coprime: needs m1 > 2p");
  }
  if (2 * params.m2 - 1 <= 2 * p) {
    throw std::invalid_argument("estimate_coprime: needs 2*m2 - 1 > 2p");
  }

  // Each subarray is a uniform array in its own decimated variable:
  // subarray 1 in w = z^{m2}, subarray 2 in s = z^{m1}.
  const std::vector<Eigen::VectorXcd> u = gather_rows(Y, Y.geometry.subarray1_indices());
  const std::vector<Eigen::VectorXcd> v = gather_rows(Y, Y.geometry.subarray2_indices());

  const IqmlResult fit1 = iqml(u, p, opts);
  const IqmlResult fit2 = iqml(v, p, opts);

  const CandidateSet R1 = candidate_set(fit1.poly.roots(), params.m2);
  const CandidateSet R2 = candidate_set(fit2.poly.roots(), params.m1);

  const CandidateIntersection intersection = intersect_candidates(R1, R2);

  ModeEstimate estimate{ModeSet(intersection.modes), {}};
  estimate.diagnostics.iqml_iterations = {fit1.iterations, fit2.iterations};
  estimate.diagnostics.ridge_fallback = fit1.ridge_fallback || fit2.ridge_fallback;
  estimate.diagnostics.candidate_counts = {R1.tuples().size(), R2.tuples().size()};
  estimate.diagnostics.intersection_distance = intersection.distance;
  estimate.diagnostics.residual_energy = residual_at(Y, estimate.modes);
  return estimate;
}

ModeEstimate estimate_modes(const SnapshotMatrix& Y, int p, const IqmlOptions& opts) {
  switch (Y.geometry.kind()) {
    case ArrayKind::Uniform:
      return estimate_ula(Y, p, opts);
    case ArrayKind::Sparse:
      return estimate_sparse(Y, p, opts);
    case ArrayKind::Coprime:
      return estimate_coprime(Y, p, opts);
  }
  throw std::logic_error("estimate_modes: unknown geometry kind");
}

}  // namespace modal
