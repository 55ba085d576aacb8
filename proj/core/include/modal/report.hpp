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

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "modal/sweep.hpp"

namespace modal {

/// Fixed sweep CSV header:
/// geometry,snr_db,trial_count,mode_index,true_re,true_im,rmse,bias_re,bias_im,fail_count
extern const char* const kSweepCsvHeader;

/// Formats a double for CSV output ("%.12g"; inf and nan spelled out).
std::string format_csv_number(double value);

/// One row per (cell, mode) under the fixed header.
void write_results(const SweepResult& result, std::ostream& out);
void write_results(const SweepResult& result, const std::string& path);

struct PlotSeries {
  std::string label;
  std::vector<std::array<double, 2>> points;
};

enum class PlotStyle { Lines, Scatter };

/// Self-contained SVG 1.1 plot: framed axes with ticks, title, axis labels,
/// one colored series per entry, legend on the right. Non-finite points are
/// dropped. Throws std::runtime_error (with the path) on I/O failure.
void emit_svg(const std::vector<PlotSeries>& series, PlotStyle style, const std::string& title,
              const std::string& xlabel, const std::string& ylabel, const std::string& path);

}  // namespace modal
