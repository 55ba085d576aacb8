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

#include "modal/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "modal/analysis.hpp"
#include "modal/config.hpp"
#include "modal/estimation.hpp"
#include "modal/model.hpp"
#include "modal/report.hpp"
#include "modal/sweep.hpp"

namespace modal {

namespace {

int env_worker_count() {
  const char* raw = std::getenv("MODAL_ARRAYS_THREADS");
  if (raw == nullptr || raw[0] == '\0') return 0;  // auto
  try {
    std::size_t consumed = 0;
    const int value = std::stoi(raw, &consumed);
    if (consumed != std::string(raw).size() || value < 0) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("MODAL_ARRAYS_THREADS: must be a non-negative integer");
  }
}

struct GeometryFlags {
  std::string kind;
  int m = 0, d = 0, M = 0, m1 = 0, m2 = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--kind", kind, "array kind: ula|uniform|sparse|coprime")->required();
    cmd->add_option("--m", m, "sensor count (ula, sparse)");
    cmd->add_option("--d", d, "sublattice spacing (sparse)");
    cmd->add_option("--M", M, "extra sensor location (sparse)");
    cmd->add_option("--m1", m1, "subarray-1 size / subarray-2 spacing (coprime)");
    cmd->add_option("--m2", m2, "subarray-1 spacing (coprime)");
  }

  GeometrySpec spec() const {
    if (kind == "ula" || kind == "uniform") {
      if (m < 1) throw ConfigError("--m: required for a uniform array");
      return GeometrySpec::ula(m);
    }
    if (kind == "sparse") {
      if (m < 1) throw ConfigError("--m: required for a sparse array");
      if (d < 1) throw ConfigError("--d: required for a sparse array");
      if (M < 1) throw ConfigError("--M: required for a sparse array");
      return GeometrySpec::sparse(m, d, M);
    }
    if (kind == "coprime") {
      if (m1 < 1) throw ConfigError("--m1: required for a co-prime array");
      if (m2 < 1) throw ConfigError("--m2: required for a co-prime array");
      return GeometrySpec::coprime(m1, m2);
    }
    throw ConfigError("--kind: unknown value '" + kind + "'");
  }
};

Eigen::MatrixXcd load_snapshot_file(const std::string& path, int expected_rows) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open data file");

  std::vector<std::vector<Complex>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = line.find_first_not_of(" \t\r,") == std::string::npos;
    if (blank) continue;
    std::istringstream cells(line);
    std::vector<Complex> row;
    while (true) {
      cells >> std::ws;
      while (cells.peek() == ',') {
        cells.get();
        cells >> std::ws;
      }
      if (cells.eof()) break;
      Complex c;
      if (!(cells >> c)) {
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": expected complex values like (re,im)");
      }
      row.push_back(c);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError(path + ": no data rows");
  if (static_cast<int>(rows.size()) != expected_rows) {
    throw ConfigError(path + ": expected " + std::to_string(expected_rows) +
                      " sensor rows, found " + std::to_string(rows.size()));
  }
  Eigen::MatrixXcd data(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return data;
}

void print_estimate(const ModeEstimate& estimate, std::ostream& out) {
  const int p = estimate.modes.size();
  for (int k = 0; k < p; ++k) {
    const Complex z = estimate.modes[k];
    out << "mode " << k << ": " << format_csv_number(z.real()) << " "
        << (z.imag() < 0 ? "- " : "+ ") << format_csv_number(std::abs(z.imag()))
        << "j  (|z| = " << format_csv_number(std::abs(z))
        << ", arg = " << format_csv_number(std::arg(z)) << ")\n";
  }
  out << "iqml iterations:";
  for (int it : estimate.diagnostics.iqml_iterations) out << ' ' << it;
  out << "\nresidual energy: " << format_csv_number(estimate.diagnostics.residual_energy)
      << "\n";
  if (!estimate.diagnostics.candidate_counts.empty()) {
    out << "candidate tuples:";
    for (std::size_t c : estimate.diagnostics.candidate_counts) out << ' ' << c;
    out << "\n";
  }
  if (estimate.modes.size() > 0 && estimate.diagnostics.intersection_distance > 0.0) {
    out << "intersection distance: "
        << format_csv_number(estimate.diagnostics.intersection_distance) << "\n";
  }
}

int run_estimate(const std::string& config_path, const std::string& data_path,
                 const GeometryFlags& flags, int p, std::ostream& out, std::ostream& err) {
  SnapshotMatrix Y{Eigen::MatrixXcd::Zero(1, 1), make_ula(1)};
  const ModeSet* truth = nullptr;
  ModeSet truth_storage({Complex(1.0, 0.0)});
  IqmlOptions opts;

  if (!data_path.empty()) {
    if (p < 1) throw ConfigError("--p: mode count required with --data");
    const ArrayGeometry geometry = flags.spec().build();
    Y = SnapshotMatrix(load_snapshot_file(data_path, geometry.size()), geometry);
  } else if (!config_path.empty()) {
    const ExperimentConfig config = load_config(config_path);
    const ArrayGeometry geometry = config.geometries.front().build();
    truth_storage = ModeSet(config.modes);
    truth = &truth_storage;
    p = truth_storage.size();
    opts = config.iqml;

    Eigen::MatrixXcd X(p, config.snapshots);
    if (config.weights.kind == WeightSpec::Kind::Constant) {
      for (int k = 0; k < p; ++k) {
        X.row(k).setConstant(config.weights.values.empty()
                                 ? Complex(1.0, 0.0)
                                 : config.weights.values[static_cast<std::size_t>(k)]);
      }
    } else {
      std::mt19937_64 rng(mix_seed(config.master_seed, 1));
      std::normal_distribution<double> normal(0.0, 1.0);
      const double scale = std::sqrt(config.weights.variance / 2.0);
      for (int n = 0; n < config.snapshots; ++n) {
        for (int k = 0; k < p; ++k) X(k, n) = Complex(scale * normal(rng), scale * normal(rng));
      }
    }

    const Eigen::MatrixXcd V = vandermonde(truth_storage, geometry);
    double power;
    if (config.weights.kind == WeightSpec::Kind::Constant) {
      power = (V * X.col(0)).squaredNorm() / geometry.size();
    } else {
      power = config.weights.variance * V.squaredNorm() / geometry.size();
    }
    const double snr_db = config.snr_db_grid.front();
    const double sigma2 = std::isinf(snr_db) ? 0.0 : power / std::pow(10.0, snr_db / 10.0);
    Y = synthesize(truth_storage, X, geometry, NoiseModel{sigma2, mix_seed(config.master_seed, 2)});
    out << "synthesized " << config.geometries.front().label() << ", N = " << config.snapshots
        << ", snr_db = " << format_csv_number(snr_db) << "\n";
  } else {
    throw ConfigError("estimate: either --config or --data is required");
  }

  try {
    const ModeEstimate estimate = estimate_modes(Y, p, opts);
    print_estimate(estimate, out);
    if (truth != nullptr) {
      const ModeMatch match = match_modes(estimate.modes, *truth);
      for (int k = 0; k < truth->size(); ++k) {
        out << "error vs truth, mode " << k << ": "
            << format_csv_number(match.per_mode_error[static_cast<std::size_t>(k)]) << "\n";
      }
    }
  } catch (const std::exception& e) {
    err << "estimation failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run_sweep(const std::string& config_path, const std::string& out_csv,
              const std::string& out_svg, const std::string& out_scatter,
              std::ostream& out, std::ostream& err) {
  ExperimentConfig config = load_config(config_path);
  if (!out_csv.empty()) config.output_csv = out_csv;
  if (!out_svg.empty()) config.output_svg = out_svg;
  if (!out_scatter.empty()) config.output_scatter_svg = out_scatter;

  const int workers = env_worker_count();
  const bool collect = !config.output_scatter_svg.empty();
  const SweepResult result = rmse_sweep(config, workers, collect);

  std::ostream& summary = config.output_csv.empty() ? err : out;
  for (const SweepCell& cell : result.cells) {
    summary << cell.geometry.label() << " @ " << format_csv_number(cell.snr_db) << " dB: ";
    for (const SweepModeRow& row : cell.per_mode) {
      summary << "rmse[" << row.mode_index << "] = " << format_csv_number(row.rmse) << "  ";
    }
    summary << "failures = " << cell.fail_count;
    if (cell.geometry.kind == ArrayKind::Coprime) {
      summary << "  median intersection = "
              << format_csv_number(cell.median_intersection_distance);
    }
    summary << "\n";
  }

  if (config.output_csv.empty()) {
    write_results(result, out);
  } else {
    write_results(result, config.output_csv);
    out << "wrote " << config.output_csv << "\n";
  }

  if (!config.output_svg.empty()) {
    // One series per geometry: aggregate RMSE (over modes) against SNR.
    std::vector<PlotSeries> series;
    for (const SweepCell& cell : result.cells) {
      const std::string label = cell.geometry.label();
      auto it = std::find_if(series.begin(), series.end(),
                             [&](const PlotSeries& s) { return s.label == label; });
      if (it == series.end()) {
        series.push_back(PlotSeries{label, {}});
        it = series.end() - 1;
      }
      double mean_sq = 0.0;
      for (const SweepModeRow& row : cell.per_mode) mean_sq += row.rmse * row.rmse;
      mean_sq /= static_cast<double>(cell.per_mode.size());
      it->points.push_back({cell.snr_db, std::sqrt(mean_sq)});
    }
    emit_svg(series, PlotStyle::Lines, "Mode RMSE vs per-sensor SNR", "per-sensor SNR (dB)",
             "RMSE", config.output_svg);
    out << "wrote " << config.output_svg << "\n";
  }

  if (!config.output_scatter_svg.empty()) {
    std::vector<PlotSeries> series;
    for (const SweepCell& cell : result.cells) {
      PlotSeries s;
      s.label = cell.geometry.label() + " @ " + format_csv_number(cell.snr_db) + " dB";
      for (const auto& estimates : cell.trial_estimates) {
        for (const Complex& z : estimates) s.points.push_back({z.real(), z.imag()});
      }
      series.push_back(std::move(s));
    }
    PlotSeries truth_series;
    truth_series.label = "truth";
    for (const Complex& z : config.modes) truth_series.points.push_back({z.real(), z.imag()});
    series.push_back(std::move(truth_series));
    emit_svg(series, PlotStyle::Scatter, "Mode estimates", "Re(z)", "Im(z)",
             config.output_scatter_svg);
    out << "wrote " << config.output_scatter_svg << "\n";
  }
  return 0;
}

int run_crb(const GeometryFlags& flags, double snr_db, int grid_n, double mag_min,
            double mag_max, double phase_min, double phase_max, const std::string& out_path,
            std::ostream& out) {
  if (grid_n < 2) throw ConfigError("--grid-n: must be >= 2");
  const GeometrySpec spec = flags.spec();
  const ArrayGeometry geometry = spec.build();
  const Complex z1(1.0, 0.0);

  std::ostringstream csv;
  csv << "geometry,z2_re,z2_im,z2_mag,z2_phase,crb_z1,crb_z1_db\n";
  for (int i = 0; i < grid_n; ++i) {
    const double mag = mag_min + (mag_max - mag_min) * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double phase = phase_min + (phase_max - phase_min) * j / (grid_n - 1);
      const Complex z2 = std::polar(mag, phase);
      double crb = std::numeric_limits<double>::infinity();
      if (z2 != z1) {
        const ModeSet modes({z1, z2});
        Eigen::MatrixXcd weights = Eigen::MatrixXcd::Ones(2, 1);
        const Eigen::MatrixXcd V = vandermonde(modes, geometry);
        const double power = (V * weights.col(0)).squaredNorm() / geometry.size();
        const double sigma2 = power / std::pow(10.0, snr_db / 10.0);
        const CrbResult result = fisher_matrix(modes, weights, geometry, sigma2);
        crb = result.per_mode_crb(0);
      }
      csv << spec.label() << ',' << format_csv_number(z2.real()) << ','
          << format_csv_number(z2.imag()) << ',' << format_csv_number(mag) << ','
          << format_csv_number(phase) << ',' << format_csv_number(crb) << ','
          << format_csv_number(10.0 * std::log10(crb)) << "\n";
    }
  }

  if (out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(out_path);
    if (!file) throw ConfigError(out_path + ": cannot open for writing");
    file << csv.str();
    if (!file) throw ConfigError(out_path + ": write failed");
    out << "wrote " << out_path << "\n";
  }
  return 0;
}

int run_beampattern(const GeometryFlags& flags, int points, const std::string& out_path,
                    const std::string& svg_path, std::ostream& out) {
  if (points < 16) throw ConfigError("--points: must be >= 16");
  const GeometrySpec spec = flags.spec();
  const ArrayGeometry geometry = spec.build();
  const BeampatternCurve curve = beampattern(geometry, make_theta_grid(points));

  std::ostringstream csv;
  csv << "geometry,theta,re,im,magnitude_db\n";
  for (std::size_t i = 0; i < curve.theta_grid.size(); ++i) {
    csv << spec.label() << ',' << format_csv_number(curve.theta_grid[i]) << ','
        << format_csv_number(curve.values[i].real()) << ','
        << format_csv_number(curve.values[i].imag()) << ','
        << format_csv_number(curve.magnitude_db[i]) << "\n";
  }

  if (out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(out_path);
    if (!file) throw ConfigError(out_path + ": cannot open for writing");
    file << csv.str();
    if (!file) throw ConfigError(out_path + ": write failed");
    out << "wrote " << out_path << "\n";
  }

  if (!svg_path.empty()) {
    PlotSeries series{spec.label(), {}};
    for (std::size_t i = 0; i < curve.theta_grid.size(); ++i) {
      series.points.push_back({curve.theta_grid[i], std::max(curve.magnitude_db[i], -100.0)});
    }
    emit_svg({series}, PlotStyle::Lines, "Beampattern", "theta (rad)", "|B| (dB, normalized)",
             svg_path);
    out << "wrote " << svg_path << "\n";
  }
  return 0;
}

int run_selftest(std::ostream& out) {
  struct Case {
    const char* name;
    std::vector<Complex> modes;
  };
  const std::vector<Case> cases = {
      {"single damped mode", {std::polar(0.9, 1.0)}},
      {"two close modes", {std::polar(1.0, 0.52), std::polar(0.95, 0.69)}},
      {"two separated modes", {std::polar(0.85, -2.2), std::polar(1.02, 0.3)}},
      {"three modes", {std::polar(1.0, 2.4), std::polar(0.9, -0.8), std::polar(0.8, 1.3)}},
  };
  const std::vector<GeometrySpec> geometries = {
      GeometrySpec::ula(50), GeometrySpec::sparse(14, 4, 3), GeometrySpec::coprime(7, 4)};

  int failures = 0;
  for (const GeometrySpec& spec : geometries) {
    const ArrayGeometry geometry = spec.build();
    for (const Case& test : cases) {
      const ModeSet truth(test.modes);
      const int p = truth.size();
      Eigen::MatrixXcd X = Eigen::MatrixXcd::Ones(p, 1);
      const SnapshotMatrix Y = synthesize(truth, X, geometry, NoiseModel{0.0, 0});
      double worst = std::numeric_limits<double>::infinity();
      bool ok = false;
      try {
        const ModeEstimate estimate = estimate_modes(Y, p, IqmlOptions{});
        const ModeMatch match = match_modes(estimate.modes, truth);
        worst = *std::max_element(match.per_mode_error.begin(), match.per_mode_error.end());
        ok = worst <= 1e-6;
      } catch (const std::exception&) {
        ok = false;
      }
      out << (ok ? "[ok]  " : "[FAIL] ") << spec.label() << ", " << test.name
          << ": noiseless recovery, worst error = " << format_csv_number(worst) << "\n";
      if (!ok) ++failures;
    }
  }
  out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"modal-arrays: mode estimation with uniform, sparse, and co-prime line arrays"};
  app.require_subcommand(1);

  // estimate
  auto* cmd_estimate = app.add_subcommand(
      "estimate", "estimate modes from a synthetic config or a snapshot data file");
  std::string est_config, est_data;
  GeometryFlags est_geometry;
  int est_p = 0;
  cmd_estimate->add_option("--config", est_config, "experiment config (synthetic input)");
  cmd_estimate->add_option("--data", est_data, "snapshot CSV: one sensor row per line, (re,im) cells");
  cmd_estimate->add_option("--kind", est_geometry.kind, "array kind (with --data)");
  cmd_estimate->add_option("--m", est_geometry.m, "sensor count (ula, sparse)");
  cmd_estimate->add_option("--d", est_geometry.d, "sublattice spacing (sparse)");
  cmd_estimate->add_option("--M", est_geometry.M, "extra sensor location (sparse)");
  cmd_estimate->add_option("--m1", est_geometry.m1, "co-prime m1");
  cmd_estimate->add_option("--m2", est_geometry.m2, "co-prime m2");
  cmd_estimate->add_option("--p", est_p, "mode count (with --data)");

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "Monte Carlo RMSE sweep over (geometry, SNR)");
  std::string sweep_config, sweep_csv, sweep_svg, sweep_scatter;
  cmd_sweep->add_option("--config", sweep_config, "experiment config")->required();
  cmd_sweep->add_option("-o,--out", sweep_csv, "output CSV path (default: config or stdout)");
  cmd_sweep->add_option("--svg", sweep_svg, "RMSE-vs-SNR curve SVG path");
  cmd_sweep->add_option("--scatter-svg", sweep_scatter, "per-trial estimate scatter SVG path");

  // crb
  auto* cmd_crb = app.add_subcommand(
      "crb", "Cramer-Rao bound for z1 = 1 against an interfering mode on a grid");
  GeometryFlags crb_geometry;
  crb_geometry.attach(cmd_crb);
  double crb_snr = 10.0, crb_mag_min = 0.8, crb_mag_max = 1.1;
  double crb_phase_min = -0.3, crb_phase_max = 0.3;
  int crb_grid = 100;
  std::string crb_out;
  cmd_crb->add_option("--snr-db", crb_snr, "per-sensor SNR in dB");
  cmd_crb->add_option("--grid-n", crb_grid, "grid points per axis");
  cmd_crb->add_option("--mag-min", crb_mag_min, "interferer magnitude grid start");
  cmd_crb->add_option("--mag-max", crb_mag_max, "interferer magnitude grid end");
  cmd_crb->add_option("--phase-min", crb_phase_min, "interferer phase grid start");
  cmd_crb->add_option("--phase-max", crb_phase_max, "interferer phase grid end");
  cmd_crb->add_option("-o,--out", crb_out, "output CSV path (default stdout)");

  // beampattern
  auto* cmd_beam = app.add_subcommand("beampattern", "array beampattern curve");
  GeometryFlags beam_geometry;
  beam_geometry.attach(cmd_beam);
  int beam_points = 4096;
  std::string beam_out, beam_svg;
  cmd_beam->add_option("--points", beam_points, "theta grid size");
  cmd_beam->add_option("-o,--out", beam_out, "output CSV path (default stdout)");
  cmd_beam->add_option("--svg", beam_svg, "curve SVG path");

  // selftest
  auto* cmd_selftest =
      app.add_subcommand("selftest", "noiseless exact-recovery suite for all estimators");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (cmd_estimate->parsed()) {
      return run_estimate(est_config, est_data, est_geometry, est_p, out, err);
    }
    if (cmd_sweep->parsed()) {
      return run_sweep(sweep_config, sweep_csv, sweep_svg, sweep_scatter, out, err);
    }
    if (cmd_crb->parsed()) {
      return run_crb(crb_geometry, crb_snr, crb_grid, crb_mag_min, crb_mag_max, crb_phase_min,
                     crb_phase_max, crb_out, out);
    }
    if (cmd_beam->parsed()) {
      return run_beampattern(beam_geometry, beam_points, beam_out, beam_svg, out);
    }
    if (cmd_selftest->parsed()) {
      return run_selftest(out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace modal
