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

#include "modal/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "modal/analysis.hpp"
#include "modal/estimation.hpp"
#include "modal/model.hpp"

namespace modal {

namespace {

struct TrialOutcome {
  bool ok = false;
  std::vector<Complex> matched;  ///< estimates reordered to the truth order
  double intersection_distance = 0.0;
};

Eigen::MatrixXcd constant_weights(const ExperimentConfig& config, int p) {
  Eigen::MatrixXcd X(p, config.snapshots);
  for (int k = 0; k < p; ++k) {
    const Complex value = config.weights.values.empty()
                              ? Complex(1.0, 0.0)
                              : config.weights.values[static_cast<std::size_t>(k)];
    X.row(k).setConstant(value);
  }
  return X;
}

Eigen::MatrixXcd random_weights(int p, int snapshots, double variance, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = std::sqrt(variance / 2.0);
  Eigen::MatrixXcd X(p, snapshots);
  for (int n = 0; n < snapshots; ++n) {
    for (int k = 0; k < p; ++k) {
      X(k, n) = Complex(scale * normal(rng), scale * normal(rng));
    }
  }
  return X;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

SweepResult rmse_sweep(const ExperimentConfig& config, int workers, bool collect_estimates) {
  validate_config(config);
  const ModeSet truth(config.modes);
  const int p = truth.size();
  const int trials = config.trials;

  int worker_count = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  worker_count = std::max(1, std::min(worker_count, trials));

  SweepResult result;
  const int n_snr = static_cast<int>(config.snr_db_grid.size());

  for (std::size_t g = 0; g < config.geometries.size(); ++g) {
    const GeometrySpec& spec = config.geometries[g];
    const ArrayGeometry geometry = spec.build();
    const Eigen::MatrixXcd V = vandermonde(truth, geometry);
    const Eigen::MatrixXcd X0 = constant_weights(config, p);

    // Average signal power per sensor per snapshot.
    double per_sensor_power;
    if (config.weights.kind == WeightSpec::Kind::Constant) {
      per_sensor_power = (V * X0.col(0)).squaredNorm() / geometry.size();
    } else {
      per_sensor_power = config.weights.variance * V.squaredNorm() / geometry.size();
    }

    for (int s = 0; s < n_snr; ++s) {
      const double snr_db = config.snr_db_grid[static_cast<std::size_t>(s)];
      const double sigma2 =
          std::isinf(snr_db) ? 0.0 : per_sensor_power / std::pow(10.0, snr_db / 10.0);
      const std::uint64_t cell_index = g * static_cast<std::size_t>(n_snr) + static_cast<std::size_t>(s);

      std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
      std::atomic<int> next{0};

      auto run_trials = [&]() {
        for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
          TrialOutcome& outcome = outcomes[static_cast<std::size_t>(t)];
          try {
            const std::uint64_t trial_seed =
                mix_seed(config.master_seed, cell_index, static_cast<std::uint64_t>(t));
            const Eigen::MatrixXcd X =
                config.weights.kind == WeightSpec::Kind::Constant
                    ? X0
                    : random_weights(p, config.snapshots, config.weights.variance,
                                     mix_seed(trial_seed, 1));
            const SnapshotMatrix Y =
                synthesize(truth, X, geometry, NoiseModel{sigma2, mix_seed(trial_seed, 2)});
            const ModeEstimate estimate = estimate_modes(Y, p, config.iqml);
            const ModeMatch match = match_modes(estimate.modes, truth);
            outcome.matched.resize(static_cast<std::size_t>(p));
            for (int k = 0; k < p; ++k) {
              outcome.matched[static_cast<std::size_t>(k)] =
                  estimate.modes[match.permutation[static_cast<std::size_t>(k)]];
            }
            outcome.intersection_distance = estimate.diagnostics.intersection_distance;
            outcome.ok = true;
          } catch (const std::exception&) {
            outcome.ok = false;
          }
        }
      };

      if (worker_count == 1) {
        run_trials();
      } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int w = 0; w < worker_count; ++w) pool.emplace_back(run_trials);
        for (std::thread& thread : pool) thread.join();
      }

      // Sequential reduction in trial order keeps the output identical for
      // any worker count.
      SweepCell cell;
      cell.geometry = spec;
      cell.snr_db = snr_db;
      cell.sigma2 = sigma2;
      cell.trials = trials;
      cell.per_mode.resize(static_cast<std::size_t>(p));

      std::vector<double> sq_error(static_cast<std::size_t>(p), 0.0);
      std::vector<Complex> mean_estimate(static_cast<std::size_t>(p), Complex(0.0, 0.0));
      std::vector<double> distances;
      int ok_count = 0;
      for (const TrialOutcome& outcome : outcomes) {
        if (!outcome.ok) {
          ++cell.fail_count;
          continue;
        }
        ++ok_count;
        for (int k = 0; k < p; ++k) {
          const Complex err = outcome.matched[static_cast<std::size_t>(k)] - truth[k];
          sq_error[static_cast<std::size_t>(k)] += std::norm(err);
          mean_estimate[static_cast<std::size_t>(k)] += outcome.matched[static_cast<std::size_t>(k)];
        }
        if (spec.kind == ArrayKind::Coprime) {
          distances.push_back(outcome.intersection_distance);
        }
        if (collect_estimates) cell.trial_estimates.push_back(outcome.matched);
      }

      for (int k = 0; k < p; ++k) {
        SweepModeRow& row = cell.per_mode[static_cast<std::size_t>(k)];
        row.mode_index = k;
        row.true_mode = truth[k];
        if (ok_count > 0) {
          row.rmse = std::sqrt(sq_error[static_cast<std::size_t>(k)] / ok_count);
          row.bias = mean_estimate[static_cast<std::size_t>(k)] / static_cast<double>(ok_count) -
                     truth[k];
        } else {
          row.rmse = std::numeric_limits<double>::quiet_NaN();
          row.bias = Complex(std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN());
        }
      }
      cell.median_intersection_distance = median(std::move(distances));
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

}  // namespace modal
