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

#include "modal/config.hpp"
#include "modal/types.hpp"

namespace modal {

struct SweepModeRow {
  int mode_index = 0;
  Complex true_mode;
  double rmse = 0.0;  ///< sqrt(mean |estimate - truth|^2) over successful trials
  Complex bias;       ///< mean(estimate) - truth
};

struct SweepCell {
  GeometrySpec geometry;
  double snr_db = 0.0;
  double sigma2 = 0.0;
  int trials = 0;
  int fail_count = 0;  ///< trials where the estimator raised
  std::vector<SweepModeRow> per_mode;
  double median_intersection_distance = 0.0;  ///< co-prime cells only
  /// Truth-matched per-trial estimates; filled only on request (scatter plots).
  std::vector<std::vector<Complex>> trial_estimates;
};

struct SweepResult {
  std::vector<SweepCell> cells;  ///< geometry-major, SNR-minor order
};

/// Runs trials x (geometry x SNR) Monte Carlo cells. Every trial draws its
/// RNG streams from (master_seed, cell index, trial index), so the result is
/// identical for any worker count or schedule; workers = 0 picks the hardware
/// concurrency. Per-trial estimator failures are counted, not fatal.
///
/// Per-sensor SNR fixes sigma2 = P / 10^(snr/10) with P the average signal
/// power per sensor per snapshot over the actual geometry (expected power
/// for random weights), so a nominal SNR is comparable across geometries of
/// equal aperture.
SweepResult rmse_sweep(const ExperimentConfig& config, int workers = 0,
                       bool collect_estimates = false);

}  // namespace modal
