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

#include "modal/analysis.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace modal {

CrbResult fisher_matrix(const ModeSet& modes, const Eigen::MatrixXcd& weights,
                        const ArrayGeometry& geometry, double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("fisher_matrix: sigma2 must be > 0");
  }
  const int p = modes.size();
  if (weights.rows() != p) {
    throw std::invalid_argument("fisher_matrix: weight rows must equal the mode count");
  }
  if (weights.cols() < 1) {
    throw std::invalid_argument("fisher_matrix: at least one snapshot required");
  }
  const int m = geometry.size();

  // Location-weighted derivative pattern, shared by all snapshots.
  Eigen::MatrixXcd deriv(m, p);
  for (int k = 0; k < p; ++k) {
    for (int l = 0; l < m; ++l) {
      const int loc = geometry.location(l);
      deriv(l, k) = loc == 0 ? Complex(0.0, 0.0)
                             : static_cast<double>(loc) * integer_power(modes[k], loc - 1);
    }
  }

  CrbResult result;
  Eigen::MatrixXcd fisher = Eigen::MatrixXcd::Zero(p, p);
  for (Eigen::Index n = 0; n < weights.cols(); ++n) {
    const Eigen::MatrixXcd G = deriv * weights.col(n).asDiagonal();
    fisher.selfadjointView<Eigen::Lower>().rankUpdate(G.adjoint(), 1.0 / sigma2);
  }
  result.fisher = fisher.selfadjointView<Eigen::Lower>();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(result.fisher);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double lmax = lambda.maxCoeff();

  result.per_mode_crb.resize(p);
  if (!(lmax > 0.0) || lambda.minCoeff() <= lmax * 1e-13) {
    result.degenerate = true;
    result.per_mode_crb.setConstant(std::numeric_limits<double>::infinity());
    return result;
  }

  // diag(J^{-1})_k = sum_i |U(k, i)|^2 / lambda_i.
  const Eigen::MatrixXcd& U = eig.eigenvectors();
  for (int k = 0; k < p; ++k) {
    double value = 0.0;
    for (int i = 0; i < p; ++i) value += std::norm(U(k, i)) / lambda(i);
    result.per_mode_crb(k) = value;
  }
  return result;
}

BeampatternCurve beampattern(const ArrayGeometry& geometry, const std::vector<double>& theta_grid) {
  if (theta_grid.empty()) {
    throw std::invalid_argument("beampattern: grid must be nonempty");
  }
  BeampatternCurve curve;
  curve.theta_grid = theta_grid;
  curve.values.resize(theta_grid.size());
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    Complex sum(0.0, 0.0);
    for (int location : geometry.locations()) {
      sum += std::polar(1.0, location * theta_grid[i]);
    }
    curve.values[i] = sum;
  }
  double peak = 0.0;
  for (const Complex& v : curve.values) peak = std::max(peak, std::abs(v));
  curve.magnitude_db.resize(curve.values.size());
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    curve.magnitude_db[i] = 20.0 * std::log10(std::abs(curve.values[i]) / peak);
  }
  return curve;
}

std::vector<double> make_theta_grid(int n) {
  if (n < 1) {
    throw std::invalid_argument("make_theta_grid: n must be >= 1");
  }
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] = -M_PI + 2.0 * M_PI * (i + 1) / n;
  }
  return grid;
}

ModeMatch match_modes(const ModeSet& estimated, const ModeSet& truth) {
  const int p = truth.size();
  if (estimated.size() != p) {
    throw std::invalid_argument("match_modes: mode sets must have equal cardinality");
  }
  if (p > 20) {
    throw std::invalid_argument("match_modes: more than 20 modes not supported");
  }

  // dp[mask] = least total squared distance assigning the estimated modes in
  // mask to truth indices 0 .. popcount(mask)-1.
  const std::size_t full = (std::size_t{1} << p) - 1;
  std::vector<double> dp(full + 1, std::numeric_limits<double>::infinity());
  std::vector<int> choice(full + 1, -1);
  dp[0] = 0.0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    const int t = std::popcount(mask) - 1;
    for (int e = 0; e < p; ++e) {
      if (!(mask & (std::size_t{1} << e))) continue;
      const double cost =
          dp[mask ^ (std::size_t{1} << e)] + std::norm(estimated[e] - truth[t]);
      if (cost < dp[mask]) {
        dp[mask] = cost;
        choice[mask] = e;
      }
    }
  }

  ModeMatch match;
  match.permutation.resize(static_cast<std::size_t>(p));
  match.per_mode_error.resize(static_cast<std::size_t>(p));
  std::size_t mask = full;
  for (int t = p - 1; t >= 0; --t) {
    const int e = choice[mask];
    match.permutation[static_cast<std::size_t>(t)] = e;
    match.per_mode_error[static_cast<std::size_t>(t)] = std::abs(estimated[e] - truth[t]);
    mask ^= (std::size_t{1} << e);
  }
  return match;
}

}  // namespace modal
