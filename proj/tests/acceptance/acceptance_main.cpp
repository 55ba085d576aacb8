// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: end-to-end checks of the estimation library at the
// numerical-study scale. Each criterion prints one PASS/FAIL line with its
// measured runtime and is held to a fixed wall-clock budget. Run with no
// arguments for the full suite, or pass criterion numbers to run a subset.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "modal/analysis.hpp"
#include "modal/cli.hpp"
#include "modal/config.hpp"
#include "modal/estimation.hpp"
#include "modal/model.hpp"
#include "modal/report.hpp"
#include "modal/subspace.hpp"
#include "modal/sweep.hpp"
#include "test_helpers.hpp"

using namespace modal;
using testing::naive_power;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& message) {
    if (!condition) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += message;
    }
  }
  void note(const std::string& message) {
    if (!detail.empty()) detail += "; ";
    detail += message;
  }
};

std::string fmt(double v) { return format_csv_number(v); }

double worst_recovery_error(const ModeEstimate& estimate, const ModeSet& truth) {
  const ModeMatch match = match_modes(estimate.modes, truth);
  double worst = 0.0;
  for (double err : match.per_mode_error) worst = std::max(worst, err);
  return worst;
}

int basis_rank(const Eigen::MatrixXcd& A) {
  return static_cast<int>(Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>(A).rank());
}

// ---------------------------------------------------------------------------
// 1. Noiseless exact recovery for all three estimators, one snapshot.
Outcome criterion_noiseless_recovery() {
  Outcome outcome;
  const ModeSet truth(testing::close_mode_pair());
  const Eigen::MatrixXcd X = Eigen::MatrixXcd::Ones(2, 1);
  struct Setup {
    const char* name;
    ArrayGeometry geometry;
  };
  const Setup setups[] = {{"ula(50)", make_ula(50)},
                          {"sparse(14-4-3)", make_sparse(14, 4, 3)},
                          {"coprime(7-4)", make_coprime(7, 4)}};
  double worst = 0.0;
  for (const Setup& setup : setups) {
    const SnapshotMatrix Y = synthesize(truth, X, setup.geometry, NoiseModel{0.0, 0});
    const ModeEstimate estimate = estimate_modes(Y, 2);
    const double err = worst_recovery_error(estimate, truth);
    worst = std::max(worst, err);
    outcome.require(err <= 1e-6, std::string(setup.name) + " error " + fmt(err) + " > 1e-6");
  }
  outcome.note("worst per-mode error " + fmt(worst));
  return outcome;
}

// ---------------------------------------------------------------------------
// 2. Orthogonality of every subspace constructor over random admissible modes.
Outcome criterion_orthogonality() {
  Outcome outcome;
  std::mt19937_64 rng(240511);
  double worst_defect_ratio = 0.0;
  double worst_projector = 0.0;

  struct Setup {
    ArrayGeometry geometry;
    std::vector<int> factors;
  };
  const Setup setups[] = {{make_ula(50), {1}},
                          {make_sparse(14, 4, 3), {4}},
                          {make_coprime(7, 4), {4, 7}}};

  for (const Setup& setup : setups) {
    const int m = setup.geometry.size();
    for (int trial = 0; trial < 200; ++trial) {
      const int p = 1 + trial % 3;
      const ModeSet modes(testing::sample_admissible_modes(rng, p, setup.factors));
      const Eigen::MatrixXcd V = vandermonde(modes, setup.geometry);
      const double tol = 1e-9 * std::max(1.0, V.cwiseAbs().maxCoeff());

      auto check_basis = [&](const Eigen::MatrixXcd& A, const char* which) {
        const double defect = (A.adjoint() * V).cwiseAbs().maxCoeff();
        worst_defect_ratio = std::max(worst_defect_ratio, defect / tol * 1e-9);
        outcome.require(defect <= tol, std::string(which) + " defect " + fmt(defect));
        outcome.require(basis_rank(A) == m - p, std::string(which) + " rank deficiency");
      };

      const OrthoBasis general = ortho_general(V);
      check_basis(general.matrix, "general");

      switch (setup.geometry.kind()) {
        case ArrayKind::Uniform: {
          check_basis(ortho_ula(MonicPolynomial::from_roots(modes.modes()), m).matrix, "ula");
          break;
        }
        case ArrayKind::Sparse: {
          const SparseParams& params = setup.geometry.sparse_params();
          std::vector<Complex> w;
          for (const Complex& z : modes.modes()) w.push_back(naive_power(z, params.d));
          const SparseResolverPolynomial b{
              testing::solve_resolver_oracle(modes.modes(), params.d, params.M), params.M,
              params.d};
          check_basis(
              ortho_sparse(MonicPolynomial::from_roots(w), b, setup.geometry).matrix, "sparse");
          break;
        }
        case ArrayKind::Coprime: {
          const CoprimeParams& params = setup.geometry.coprime_params();
          std::vector<Complex> w, s;
          for (const Complex& z : modes.modes()) {
            w.push_back(naive_power(z, params.m2));
            s.push_back(naive_power(z, params.m1));
          }
          const CoprimePartialBasis partial =
              ortho_coprime_partial(MonicPolynomial::from_roots(w),
                                    MonicPolynomial::from_roots(s), params.m1, params.m2);
          std::vector<int> i1, i2;
          for (int j = 0; j < params.m1; ++j) i1.push_back(j * params.m2);
          for (int j = 1; j <= 2 * params.m2 - 1; ++j) i2.push_back(j * params.m1);
          const Eigen::MatrixXcd V1 = testing::vandermonde_at(modes.modes(), i1);
          const Eigen::MatrixXcd V2 = testing::vandermonde_at(modes.modes(), i2);
          outcome.require((partial.A1.adjoint() * V1).cwiseAbs().maxCoeff() <= tol,
                          "partial A1 defect");
          outcome.require((partial.B1.adjoint() * V2).cwiseAbs().maxCoeff() <= tol,
                          "partial B1 defect");
          outcome.require(basis_rank(partial.A1) == params.m1 - p, "A1 rank deficiency");
          outcome.require(basis_rank(partial.B1) == 2 * params.m2 - 1 - p,
                          "B1 rank deficiency");

          const OrthoBasis full = ortho_coprime_full(modes, params.m1, params.m2);
          check_basis(full.matrix, "coprime-full");
          const double projector_gap = (testing::span_projector(full.matrix) -
                                        testing::span_projector(general.matrix))
                                           .norm();
          worst_projector = std::max(worst_projector, projector_gap);
          outcome.require(projector_gap <= 1e-8,
                          "span mismatch " + fmt(projector_gap) + " > 1e-8");
          break;
        }
      }
      if (!outcome.pass) return outcome;  // no point grinding out 599 more lines
    }
  }
  outcome.note("600 mode sets; worst span gap " + fmt(worst_projector));
  return outcome;
}

// ---------------------------------------------------------------------------
// 3. The sparse resolver separates the true tuple from single-mode aliases.
Outcome criterion_alias_rejection() {
  Outcome outcome;
  std::mt19937_64 rng(240513);
  std::uniform_real_distribution<double> weight_mag(0.5, 1.5);
  std::uniform_real_distribution<double> phase(-M_PI, M_PI);
  const int d = 4, M = 3, p = 2;
  const ArrayGeometry g = make_sparse(14, d, M);

  double worst_true = 0.0;
  double worst_margin = std::numeric_limits<double>::infinity();

  for (int trial = 0; trial < 100; ++trial) {
    const ModeSet truth(testing::sample_admissible_modes(rng, p, {d}));
    Eigen::MatrixXcd X(p, 1);
    for (int k = 0; k < p; ++k) X(k, 0) = std::polar(weight_mag(rng), phase(rng));
    const SnapshotMatrix Y = synthesize(truth, X, g, NoiseModel{0.0, 0});

    std::vector<Complex> w;
    for (const Complex& z : truth.modes()) w.push_back(naive_power(z, d));
    const CandidateSet R = candidate_set(w, d);

    Eigen::MatrixXcd u(p, 1);
    for (int j = 0; j < p; ++j) u.row(j) = Y.data.row(g.sublattice_indices()[j]);
    const Eigen::VectorXcd extra = Y.data.row(g.extra_sensor_index()).transpose();

    // Production path: the argmin must be the true tuple at zero cost.
    const SparseResolution resolution = resolve_sparse(u, extra, R, M, d);
    const double true_cost_bound = 1e-18 * Y.data.squaredNorm();
    worst_true = std::max(worst_true, resolution.objective);
    outcome.require(resolution.objective <= true_cost_bound,
                    "true-tuple objective " + fmt(resolution.objective));
    double recovery = 0.0;
    for (int k = 0; k < p; ++k) {
      recovery = std::max(recovery, std::abs(resolution.modes[k] - truth[k]));
    }
    outcome.require(recovery <= 1e-7, "wrong winning tuple");

    // Independent scorer for every single-mode-aliased tuple.
    Eigen::MatrixXcd Vp(p, p);
    for (int k = 0; k < p; ++k) {
      for (int j = 0; j < p; ++j) Vp(j, k) = naive_power(w[k], j);
    }
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Vp.transpose());

    double min_weight = std::numeric_limits<double>::infinity();
    for (int k = 0; k < p; ++k) min_weight = std::min(min_weight, std::abs(X(k, 0)));
    const double sin_factor = 2.0 * std::sin(M_PI / d);

    for (int k = 0; k < p; ++k) {
      for (int q = 1; q < d; ++q) {
        std::vector<Complex> tuple = truth.modes();
        tuple[k] *= std::polar(1.0, 2.0 * M_PI * q / d);
        Eigen::VectorXcd rhs(p);
        for (int i = 0; i < p; ++i) rhs(i) = -naive_power(tuple[i], M);
        const Eigen::VectorXcd zeta = lu.solve(rhs);
        const double objective = (extra + u.transpose() * zeta).squaredNorm();
        const double bound = std::pow(std::abs(truth[k]), 2 * M) * sin_factor * sin_factor *
                             min_weight * min_weight;
        worst_margin = std::min(worst_margin, objective / bound);
        outcome.require(objective >= bound * (1.0 - 1e-9),
                        "aliased tuple cost " + fmt(objective) + " below bound " + fmt(bound));
      }
    }
    if (!outcome.pass) return outcome;
  }
  outcome.note("worst true-tuple objective " + fmt(worst_true) + ", min alias/bound ratio " +
               fmt(worst_margin));
  return outcome;
}

// ---------------------------------------------------------------------------
// 4. Closed-form single-mode CRB and linearity in the noise variance.
Outcome criterion_crb_closed_form() {
  Outcome outcome;
  const ModeSet one({Complex(1.0, 0.0)});
  const Eigen::MatrixXcd x = Eigen::MatrixXcd::Ones(1, 1);
  for (int m : {3, 10, 50}) {
    double sum_sq = 0.0;
    for (int l = 0; l < m; ++l) sum_sq += static_cast<double>(l) * l;
    const CrbResult result = fisher_matrix(one, x, make_ula(m), 1.0);
    const double expected = 1.0 / sum_sq;
    outcome.require(std::abs(result.per_mode_crb(0) - expected) <= 1e-14 * expected,
                    "m=" + std::to_string(m) + " crb " + fmt(result.per_mode_crb(0)) +
                        " != " + fmt(expected));

    const CrbResult doubled = fisher_matrix(one, x, make_ula(m), 2.0);
    outcome.require(
        std::abs(doubled.per_mode_crb(0) - 2.0 * result.per_mode_crb(0)) <=
            1e-12 * doubled.per_mode_crb(0),
        "m=" + std::to_string(m) + " not linear in sigma2");
  }
  outcome.note("crb(ula(m)) = 1/sum l^2 for m in {3,10,50}");
  return outcome;
}

// ---------------------------------------------------------------------------
// 5. Compression ordering of the CRB and the expected dB gap.
Outcome criterion_crb_compression() {
  Outcome outcome;
  const Eigen::MatrixXcd x = Eigen::MatrixXcd::Ones(2, 1);
  const ArrayGeometry dense = make_ula(50);
  const ArrayGeometry compressed[] = {make_sparse(14, 4, 3), make_coprime(7, 4)};

  auto crb_at = [&](const ModeSet& modes, const ArrayGeometry& g) {
    const double power = (vandermonde(modes, g) * x.col(0)).squaredNorm() / g.size();
    const double sigma2 = power / std::pow(10.0, 10.0 / 10.0);
    return fisher_matrix(modes, x, g, sigma2).per_mode_crb;
  };

  // Strict ordering at the closely spaced study modes.
  const ModeSet close(testing::close_mode_pair());
  const Eigen::VectorXd dense_close = crb_at(close, dense);
  for (const ArrayGeometry& g : compressed) {
    const Eigen::VectorXd crb = crb_at(close, g);
    for (int k = 0; k < 2; ++k) {
      outcome.require(crb(k) > dense_close(k), "compressed crb not larger (close modes)");
    }
  }

  // dB gap at well-separated modes brackets the 10 log10(50/14) rule of thumb.
  const double nominal = 10.0 * std::log10(50.0 / 14.0);
  const ModeSet separated({std::polar(1.0, 0.3), std::polar(0.95, 2.2)});
  const Eigen::VectorXd dense_sep = crb_at(separated, dense);
  double gap_lo = std::numeric_limits<double>::infinity();
  double gap_hi = -std::numeric_limits<double>::infinity();
  for (const ArrayGeometry& g : compressed) {
    const Eigen::VectorXd crb = crb_at(separated, g);
    for (int k = 0; k < 2; ++k) {
      const double gap = 10.0 * std::log10(crb(k) / dense_sep(k));
      gap_lo = std::min(gap_lo, gap);
      gap_hi = std::max(gap_hi, gap);
      outcome.require(gap >= nominal - 2.0 && gap <= nominal + 4.0,
                      "gap " + fmt(gap) + " dB outside [" + fmt(nominal - 2.0) + ", " +
                          fmt(nominal + 4.0) + "]");
    }
  }
  outcome.note("gaps in [" + fmt(gap_lo) + ", " + fmt(gap_hi) + "] dB around " + fmt(nominal));
  return outcome;
}

// ---------------------------------------------------------------------------
// 6. Beampattern: equal main lobes, higher sidelobes for compressed arrays.
Outcome criterion_beampattern() {
  Outcome outcome;
  const int n = 4096;
  const std::vector<double> grid = make_theta_grid(n);
  const int zero_index = n / 2 - 1;  // theta = 0

  struct Curve {
    std::string name;
    BeampatternCurve curve;
    int null_steps = 0;
    double psl_db = 0.0;
  };
  std::vector<Curve> curves;
  curves.push_back({"ula(50)", beampattern(make_ula(50), grid), 0, 0.0});
  curves.push_back({"sparse(14-4-3)", beampattern(make_sparse(14, 4, 3), grid), 0, 0.0});
  curves.push_back({"coprime(7-4)", beampattern(make_coprime(7, 4), grid), 0, 0.0});

  for (Curve& c : curves) {
    int i = zero_index;
    while (i + 1 < n && std::abs(c.curve.values[i + 1]) < std::abs(c.curve.values[i])) ++i;
    c.null_steps = i - zero_index;
    double psl = -std::numeric_limits<double>::infinity();
    for (int j = i + 1; j < n; ++j) psl = std::max(psl, c.curve.magnitude_db[j]);
    c.psl_db = psl;
  }

  for (std::size_t i = 1; i < curves.size(); ++i) {
    outcome.require(std::abs(curves[i].null_steps - curves[0].null_steps) <= 1,
                    curves[i].name + " first null at " + std::to_string(curves[i].null_steps) +
                        " steps vs " + std::to_string(curves[0].null_steps));
    outcome.require(curves[i].psl_db >= curves[0].psl_db + 3.0,
                    curves[i].name + " psl " + fmt(curves[i].psl_db) + " dB not 3 dB above " +
                        fmt(curves[0].psl_db));
  }
  outcome.note("null steps " + std::to_string(curves[0].null_steps) + "/" +
               std::to_string(curves[1].null_steps) + "/" + std::to_string(curves[2].null_steps) +
               "; psl " + fmt(curves[0].psl_db) + "/" + fmt(curves[1].psl_db) + "/" +
               fmt(curves[2].psl_db) + " dB");
  return outcome;
}

// ---------------------------------------------------------------------------
// 7. Monte Carlo: compressed arrays at +5 dB track the dense array, and RMSE
//    grows when SNR drops.
Outcome criterion_snr_shift() {
  Outcome outcome;

  auto run = [&](GeometrySpec spec, std::vector<double> grid) {
    ExperimentConfig config;
    config.geometries = {spec};
    config.modes = testing::close_mode_pair();
    config.snapshots = 1;
    config.snr_db_grid = std::move(grid);
    config.trials = 256;
    config.master_seed = 424242;
    return rmse_sweep(config, 0);
  };

  const SweepResult ula = run(GeometrySpec::ula(50), {0.0, -5.0});
  const SweepResult sparse = run(GeometrySpec::sparse(14, 4, 3), {5.0, 0.0});
  const SweepResult coprime = run(GeometrySpec::coprime(7, 4), {5.0, 0.0});

  auto rmse_of = [](const SweepResult& result, std::size_t cell, int mode) {
    return result.cells[cell].per_mode[static_cast<std::size_t>(mode)].rmse;
  };

  double worst_ratio = 0.0;
  for (int k = 0; k < 2; ++k) {
    const double reference = rmse_of(ula, 0, k);  // dense array at 0 dB
    for (const SweepResult* compressed : {&sparse, &coprime}) {
      const double shifted = rmse_of(*compressed, 0, k);  // compressed at +5 dB
      const double ratio = shifted / reference;
      worst_ratio = std::max(worst_ratio, std::max(ratio, 1.0 / ratio));
      outcome.require(ratio <= 3.0 && ratio >= 1.0 / 3.0,
                      "rmse ratio " + fmt(ratio) + " outside [1/3, 3] for mode " +
                          std::to_string(k));
    }
  }

  const char* names[] = {"ula", "sparse", "coprime"};
  const SweepResult* results[] = {&ula, &sparse, &coprime};
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 2; ++k) {
      outcome.require(rmse_of(*results[i], 1, k) > rmse_of(*results[i], 0, k),
                      std::string(names[i]) + " rmse not increasing as SNR drops");
    }
  }
  outcome.note("worst compressed/dense rmse ratio " + fmt(worst_ratio));
  return outcome;
}

// ---------------------------------------------------------------------------
// 8. Byte-identical sweep CSV for different MODAL_ARRAYS_THREADS values.
Outcome criterion_determinism() {
  Outcome outcome;
  const auto dir = std::filesystem::temp_directory_path();
  const std::string tag = std::to_string(::getpid());
  const std::filesystem::path config_path = dir / ("modal_acc8_" + tag + ".cfg");
  const std::filesystem::path csv_a = dir / ("modal_acc8_" + tag + "_a.csv");
  const std::filesystem::path csv_b = dir / ("modal_acc8_" + tag + "_b.csv");

  {
    std::ofstream cfg(config_path);
    cfg << "geometry.0.kind = uniform\n"
           "geometry.0.m = 50\n"
           "geometry.1.kind = sparse\n"
           "geometry.1.m = 14\n"
           "geometry.1.d = 4\n"
           "geometry.1.M = 3\n"
           "geometry.2.kind = coprime\n"
           "geometry.2.m1 = 7\n"
           "geometry.2.m2 = 4\n"
           "modes = 1@0.52, 0.95@0.69\n"
           "weights.kind = random\n"
           "weights.variance = 1\n"
           "snapshots = 2\n"
           "snr_db = 10, 0\n"
           "trials = 64\n"
           "seed = 777\n";
  }

  auto run_with_threads = [&](const char* threads, const std::filesystem::path& csv) {
    setenv("MODAL_ARRAYS_THREADS", threads, 1);
    std::ostringstream out, err;
    const int code = cli_run({"sweep", "--config", config_path.string(), "-o", csv.string()},
                             out, err);
    unsetenv("MODAL_ARRAYS_THREADS");
    outcome.require(code == 0, std::string("sweep exited ") + std::to_string(code) + ": " +
                                   err.str());
  };

  run_with_threads("1", csv_a);
  run_with_threads("5", csv_b);

  auto slurp = [](const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  const std::string a = slurp(csv_a);
  const std::string b = slurp(csv_b);
  outcome.require(!a.empty(), "first sweep produced no CSV");
  outcome.require(a == b, "CSV differs between 1 and 5 worker threads");
  outcome.note(std::to_string(a.size()) + " bytes, byte-identical across worker counts");

  std::error_code ec;
  std::filesystem::remove(config_path, ec);
  std::filesystem::remove(csv_a, ec);
  std::filesystem::remove(csv_b, ec);
  return outcome;
}

// ---------------------------------------------------------------------------
// 9. Structural identities: one-iteration IQML is linear prediction, and the
//    banded basis acts as the Hankel stack.
Outcome criterion_oracle_equivalence() {
  Outcome outcome;
  std::mt19937_64 rng(240519);
  std::normal_distribution<double> normal;

  const int q = 12, p = 3, snapshots = 4;
  std::vector<Eigen::VectorXcd> data;
  for (int n = 0; n < snapshots; ++n) {
    Eigen::VectorXcd y(q);
    for (int i = 0; i < q; ++i) y(i) = Complex(normal(rng), normal(rng));
    data.push_back(y);
  }

  IqmlOptions opts;
  opts.max_iters = 1;
  const IqmlResult one_step = iqml(data, p, opts);
  const MonicPolynomial lp = linear_prediction(data, p);
  double coeff_gap = 0.0;
  for (int i = 1; i <= p; ++i) {
    coeff_gap = std::max(coeff_gap, std::abs(one_step.poly.coeff(i) - lp.coeff(i)));
  }
  outcome.require(coeff_gap <= 1e-12, "iqml(1) vs linear prediction gap " + fmt(coeff_gap));

  double identity_gap = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXcd y(q);
    for (int i = 0; i < q; ++i) y(i) = Complex(normal(rng), normal(rng));
    std::vector<Complex> tail(p);
    for (auto& c : tail) c = Complex(normal(rng), normal(rng));
    const MonicPolynomial a(tail);
    const std::vector<Complex> band = a.band_coefficients();
    const Eigen::VectorXcd ata =
        Eigen::Map<const Eigen::VectorXcd>(band.data(), static_cast<Eigen::Index>(band.size()));
    const Eigen::VectorXcd lhs = ortho_ula(a, q).matrix.adjoint() * y;
    const Eigen::VectorXcd rhs = hankel_stack(y, p) * ata;
    identity_gap = std::max(identity_gap, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  outcome.require(identity_gap <= 1e-12, "banded/Hankel identity gap " + fmt(identity_gap));

  outcome.note("coefficient gap " + fmt(coeff_gap) + ", identity gap " + fmt(identity_gap));
  return outcome;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "noiseless exact recovery", 1.0, criterion_noiseless_recovery},
      {2, "orthogonal-subspace constructors", 30.0, criterion_orthogonality},
      {3, "sparse alias rejection", 10.0, criterion_alias_rejection},
      {4, "single-mode CRB closed form", 1.0, criterion_crb_closed_form},
      {5, "CRB compression ordering", 5.0, criterion_crb_compression},
      {6, "beampattern main lobe and sidelobes", 5.0, criterion_beampattern},
      {7, "Monte Carlo SNR shift", 300.0, criterion_snr_shift},
      {8, "sweep determinism across thread counts", 300.0, criterion_determinism},
      {9, "linear-prediction oracle equivalence", 1.0, criterion_oracle_equivalence},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.id) == selected.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criterion.limit_seconds) {
      outcome.pass = false;
      outcome.detail += (outcome.detail.empty() ? "" : "; ") + std::string("over budget");
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << criterion.id << ". "
              << criterion.name << " (" << fmt(elapsed) << " s / " << fmt(criterion.limit_seconds)
              << " s)" << (outcome.detail.empty() ? "" : " -- " + outcome.detail) << "\n";
  }

  if (failures == 0) {
    std::cout << "acceptance: all criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria FAILED\n";
  return 1;
}
