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

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "modal/estimation.hpp"
#include "modal/geometry.hpp"
#include "modal/types.hpp"

namespace modal {

/// Raised for config parse errors (with file and line context) and for
/// invariant violations (with the offending field named).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Declarative geometry description used in configs, CSV labels, and CLI
/// flags; build() constructs (and thereby validates) the actual geometry.
struct GeometrySpec {
  ArrayKind kind = ArrayKind::Uniform;
  int m = 0;   // uniform and sparse
  int d = 0;   // sparse
  int M = 0;   // sparse
  int m1 = 0;  // coprime
  int m2 = 0;  // coprime

  static GeometrySpec ula(int m);
  static GeometrySpec sparse(int m, int d, int M);
  static GeometrySpec coprime(int m1, int m2);

  ArrayGeometry build() const;
  std::string label() const;  ///< "ula(50)", "sparse(14,4,3)", "coprime(7,4)"
};

struct WeightSpec {
  enum class Kind { Constant, Random };
  Kind kind = Kind::Constant;
  std::vector<Complex> values;  ///< constant weights per mode; empty = all ones
  double variance = 1.0;        ///< per-mode complex variance when random
};

/// Everything a Monte Carlo experiment needs: what to synthesize, how hard
/// to stress it, and where results go. Parsed from a line-oriented
/// `key = value` file with dotted section keys.
struct ExperimentConfig {
  std::vector<GeometrySpec> geometries;
  std::vector<Complex> modes;
  WeightSpec weights;
  int snapshots = 1;
  std::vector<double> snr_db_grid;  ///< per-sensor SNR in dB; +inf = noiseless
  int trials = 256;
  std::uint64_t master_seed = 0;
  IqmlOptions iqml;
  std::string output_csv;
  std::string output_svg;
  std::string output_scatter_svg;
};

/// Parses and validates a config. Unknown keys, malformed lines (reported
/// with their line number), and invariant violations all raise ConfigError.
ExperimentConfig parse_config(std::istream& in, const std::string& source_name);
ExperimentConfig load_config(const std::string& path);

/// Canonical round-trippable text form: parse_config(save_config(c)) == c.
std::string save_config(const ExperimentConfig& config);

/// Field-named invariant checks (called by the parsers; public so configs
/// assembled in code get the same treatment).
void validate_config(const ExperimentConfig& config);

}  // namespace modal
