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

#include <cmath>
#include <complex>

#include <benchmark/benchmark.h>

#include "modal/analysis.hpp"
#include "modal/estimation.hpp"
#include "modal/model.hpp"
#include "modal/polynomial.hpp"
#include "modal/subspace.hpp"

namespace {

using modal::Complex;

modal::ModeSet study_modes() {
  return modal::ModeSet({std::polar(1.0, 0.52), std::polar(0.95, 0.69)});
}

modal::SnapshotMatrix noisy_snapshots(const modal::ArrayGeometry& geometry, int snapshots) {
  const modal::ModeSet modes = study_modes();
  const Eigen::MatrixXcd weights = Eigen::MatrixXcd::Ones(2, snapshots);
  const double power = (modal::vandermonde(modes, geometry) * weights.col(0)).squaredNorm() /
                       geometry.size();
  const double sigma2 = power / std::pow(10.0, 10.0 / 10.0);  // 10 dB per sensor
  return modal::synthesize(modes, weights, geometry, modal::NoiseModel{sigma2, 7});
}

void BM_vandermonde_ula50(benchmark::State& state) {
  const modal::ModeSet modes = study_modes();
  const modal::ArrayGeometry geometry = modal::make_ula(50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(modal::vandermonde(modes, geometry));
  }
}
BENCHMARK(BM_vandermonde_ula50);

void BM_polynomial_roots(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  std::vector<Complex> roots;
  for (int k = 0; k < degree; ++k) {
    roots.push_back(std::polar(0.8 + 0.02 * k, 0.3 + 0.7 * k));
  }
  const modal::MonicPolynomial poly = modal::MonicPolynomial::from_roots(roots);
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly.roots());
  }
}
BENCHMARK(BM_polynomial_roots)->Arg(2)->Arg(8)->Arg(16);

void BM_ortho_general_coprime(benchmark::State& state) {
  const Eigen::MatrixXcd V = modal::vandermonde(study_modes(), modal::make_coprime(7, 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(modal::ortho_general(V));
  }
}
BENCHMARK(BM_ortho_general_coprime);

void BM_iqml_ula50(benchmark::State& state) {
  const modal::SnapshotMatrix Y = noisy_snapshots(modal::make_ula(50), 4);
  std::vector<Eigen::VectorXcd> snapshots;
  for (int n = 0; n < Y.snapshots(); ++n) snapshots.push_back(Y.data.col(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(modal::iqml(snapshots, 2));
  }
}
BENCHMARK(BM_iqml_ula50);

void BM_estimate_ula(benchmark::State& state) {
  const modal::SnapshotMatrix Y = noisy_snapshots(modal::make_ula(50), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(modal::estimate_ula(Y, 2));
  }
}
BENCHMARK(BM_estimate_ula);

void BM_estimate_sparse(benchmark::State& state) {
  const modal::SnapshotMatrix Y = noisy_snapshots(modal::make_sparse(14, 4, 3), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(modal::estimate_sparse(Y, 2));
  }
}
BENCHMARK(BM_estimate_sparse);

void BM_estimate_coprime(benchmark::State& state) {
  const modal::SnapshotMatrix Y = noisy_snapshots(modal::make_coprime(7, 4), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(modal::estimate_coprime(Y, 2));
  }
}
BENCHMARK(BM_estimate_coprime);

void BM_fisher_matrix(benchmark::State& state) {
  const modal::ModeSet modes = study_modes();
  const modal::ArrayGeometry geometry = modal::make_ula(50);
  const Eigen::MatrixXcd weights = Eigen::MatrixXcd::Ones(2, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(modal::fisher_matrix(modes, weights, geometry, 0.1));
  }
}
BENCHMARK(BM_fisher_matrix);

void BM_beampattern_4096(benchmark::State& state) {
  const modal::ArrayGeometry geometry = modal::make_coprime(7, 4);
  const std::vector<double> grid = modal::make_theta_grid(4096);
  for (auto _ : state) {
    benchmark::DoNotOptimize(modal::beampattern(geometry, grid));
  }
}
BENCHMARK(BM_beampattern_4096);

}  // namespace

BENCHMARK_MAIN();
