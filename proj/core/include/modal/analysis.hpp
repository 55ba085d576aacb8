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
#include "modal/types.hpp"

namespace modal {

/// Fisher information and per-mode Cramer-Rao bounds for known weights.
struct CrbResult {
  Eigen::VectorXd per_mode_crb;  ///< diag(J^{-1}); +inf entries when degenerate
  Eigen::MatrixXcd fisher;       ///< Hermitian PSD
  bool degenerate = false;       ///< J was numerically singular
};

/// J = (1/sigma2) sum_n G_n^H G_n with sensitivity columns
/// g_k[n] = [i_0 z_k^{i_0-1}, ..., i_{m-1} z_k^{i_{m-1}-1}]^T x_k[n]; the
/// entry at a zero location is exactly zero. Each mode is treated as a single
/// complex parameter and the weights as known. Requires sigma2 > 0.
CrbResult fisher_matrix(const ModeSet& modes, const Eigen::MatrixXcd& weights,
                        const ArrayGeometry& geometry, double sigma2);

struct BeampatternCurve {
  std::vector<double> theta_grid;
  std::vector<Complex> values;        ///< B(theta) = sum_l e^{j i_l theta}
  std::vector<double> magnitude_db;   ///< 20 log10(|B| / max |B|)
};

/// Exact complex beampattern sum on the given grid.
BeampatternCurve beampattern(const ArrayGeometry& geometry, const std::vector<double>& theta_grid);

/// n evenly spaced angles spanning (-pi, pi]; contains 0 for even n.
std::vector<double> make_theta_grid(int n);

struct ModeMatch {
  std::vector<int> permutation;        ///< truth index k -> estimated index
  std::vector<double> per_mode_error;  ///< |estimated[perm[k]] - truth[k]|
};

/// Assignment minimizing the total squared pairing distance, solved exactly
/// by dynamic programming over subsets (fine up to p ~ 20).
ModeMatch match_modes(const ModeSet& estimated, const ModeSet& truth);

}  // namespace modal
