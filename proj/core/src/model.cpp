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

#include "modal/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include <Eigen/QR>

namespace modal {

ModeSet::ModeSet(std::vector<Complex> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) {
    throw std::invalid_argument("ModeSet: at least one mode required");
  }
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    for (std::size_t j = i + 1; j < modes_.size(); ++j) {
      if (modes_[i] == modes_[j]) {
        throw std::invalid_argument("ModeSet: modes must be pairwise distinct");
      }
    }
  }
}

bool ModeSet::has_distinct_powers(int factor, double rel_tol) const {
  if (factor < 1) {
    throw std::invalid_argument("has_distinct_powers: factor must be >= 1");
  }
  std::vector<Complex> powers(modes_.size());
  double scale = 1.0;
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    powers[k] = integer_power(modes_[k], factor);
    scale = std::max(scale, std::abs(powers[k]));
  }
  for (std::size_t i = 0; i < powers.size(); ++i) {
    for (std::size_t j = i + 1; j < powers.size(); ++j) {
      if (std::abs(powers[i] - powers[j]) <= rel_tol * scale) return false;
    }
  }
  return true;
}

SnapshotMatrix::SnapshotMatrix(Eigen::MatrixXcd data_in, ArrayGeometry geometry_in)
    : data(std::move(data_in)), geometry(std::move(geometry_in)) {
  if (data.rows() != geometry.size()) {
    throw std::invalid_argument("SnapshotMatrix: row count must equal the sensor count");
  }
  if (data.cols() < 1) {
    throw std::invalid_argument("SnapshotMatrix: at least one snapshot required");
  }
}

Eigen::MatrixXcd vandermonde(const ModeSet& modes, const ArrayGeometry& geometry) {
  const int m = geometry.size();
  const int p = modes.size();
  Eigen::MatrixXcd V(m, p);
  for (int k = 0; k < p; ++k) {
    for (int l = 0; l < m; ++l) {
      V(l, k) = integer_power(modes[k], geometry.location(l));
    }
  }
  return V;
}

SnapshotMatrix synthesize(const ModeSet& modes, const Eigen::MatrixXcd& weights,
                          const ArrayGeometry& geometry, const NoiseModel& noise) {
  if (weights.rows() != modes.size()) {
    throw std::invalid_argument("synthesize: weight rows must equal the mode count");
  }
  if (weights.cols() < 1) {
    throw std::invalid_argument("synthesize: at least one snapshot required");
  }
  if (noise.sigma2 < 0.0) {
    throw std::invalid_argument("synthesize: sigma2 must be >= 0");
  }

  Eigen::MatrixXcd data = vandermonde(modes, geometry) * weights;
  if (noise.sigma2 > 0.0) {
    std::mt19937_64 rng(noise.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = std::sqrt(noise.sigma2 / 2.0);
    for (Eigen::Index n = 0; n < data.cols(); ++n) {
      for (Eigen::Index l = 0; l < data.rows(); ++l) {
        const double re = scale * normal(rng);
        const double im = scale * normal(rng);
        data(l, n) += Complex(re, im);
      }
    }
  }
  return SnapshotMatrix(std::move(data), geometry);
}

Eigen::VectorXcd ls_weights(const Eigen::MatrixXcd& V, const Eigen::VectorXcd& y) {
  if (V.rows() != y.size()) {
    throw std::invalid_argument("ls_weights: dimension mismatch between V and y");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(V);
  if (qr.rank() < V.cols()) {
    throw std::runtime_error("ls_weights: V is rank deficient");
  }
  return qr.solve(y);
}

double residual_energy(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& A) {
  if (Y.rows() != A.rows()) {
    throw std::invalid_argument("residual_energy: Y and A must have the same row count");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
  if (qr.rank() < A.cols()) {
    throw std::runtime_error("residual_energy: basis matrix is rank deficient");
  }
  // Orthonormal basis Q for the span of A; the projected energy is |Q^H Y|_F^2.
  Eigen::MatrixXcd Q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(A.rows(), A.cols());
  return (Q.adjoint() * Y).squaredNorm();
}

}  // namespace modal
