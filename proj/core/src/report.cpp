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

#include "modal/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace modal {

const char* const kSweepCsvHeader =
    "geometry,snr_db,trial_count,mode_index,true_re,true_im,rmse,bias_re,bias_im,fail_count";

std::string format_csv_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void write_results(const SweepResult& result, std::ostream& out) {
  out << kSweepCsvHeader << "\n";
  for (const SweepCell& cell : result.cells) {
    for (const SweepModeRow& row : cell.per_mode) {
      out << cell.geometry.label() << ',' << format_csv_number(cell.snr_db) << ','
          << cell.trials << ',' << row.mode_index << ','
          << format_csv_number(row.true_mode.real()) << ','
          << format_csv_number(row.true_mode.imag()) << ',' << format_csv_number(row.rmse)
          << ',' << format_csv_number(row.bias.real()) << ','
          << format_csv_number(row.bias.imag()) << ',' << cell.fail_count << "\n";
    }
  }
}

void write_results(const SweepResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_results: cannot open '" + path + "' for writing");
  }
  write_results(result, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("write_results: failed writing '" + path + "'");
  }
}

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 600.0;   // plot frame right edge; legend lives beyond
constexpr double kTop = 48.0;
constexpr double kBottom = 420.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string px(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double map(double v, double out_lo, double out_hi) const {
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

}  // namespace

void emit_svg(const std::vector<PlotSeries>& series, PlotStyle style, const std::string& title,
              const std::string& xlabel, const std::string& ylabel, const std::string& path) {
  Range x_range, y_range;
  bool any = false;
  for (const PlotSeries& s : series) {
    for (const auto& point : s.points) {
      if (!std::isfinite(point[0]) || !std::isfinite(point[1])) continue;
      if (!any) {
        x_range = Range{point[0], point[0]};
        y_range = Range{point[1], point[1]};
        any = true;
      } else {
        x_range.include(point[0]);
        y_range.include(point[1]);
      }
    }
  }
  if (!any) {
    x_range = Range{0.0, 1.0};
    y_range = Range{0.0, 1.0};
  }
  auto pad = [](Range& r) {
    const double span = r.hi - r.lo;
    if (span <= 0.0) {
      r.lo -= 1.0;
      r.hi += 1.0;
    } else {
      r.lo -= 0.05 * span;
      r.hi += 0.05 * span;
    }
  };
  pad(x_range);
  pad(y_range);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
      << "\">\n"
      << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  svg << "<text x=\"" << px((kLeft + kRight) / 2) << "\" y=\"26\" font-family=\"sans-serif\" "
      << "font-size=\"15\" text-anchor=\"middle\">" << escape_xml(title) << "</text>\n";

  // Ticks and grid.
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_range.lo + (x_range.hi - x_range.lo) * i / 4.0;
    const double sx = x_range.map(fx, kLeft, kRight);
    svg << "<line x1=\"" << px(sx) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(sx)
        << "\" y2=\"" << px(kBottom) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << px(sx) << "\" y=\"" << px(kBottom + 18)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << format_csv_number(fx) << "</text>\n";

    const double fy = y_range.lo + (y_range.hi - y_range.lo) * i / 4.0;
    const double sy = y_range.map(fy, kBottom, kTop);
    svg << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(sy) << "\" x2=\"" << px(kRight)
        << "\" y2=\"" << px(sy) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(sy + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
        << format_csv_number(fy) << "</text>\n";
  }

  // Frame.
  svg << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\""
      << px(kRight - kLeft) << "\" height=\"" << px(kBottom - kTop)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // Axis labels.
  svg << "<text x=\"" << px((kLeft + kRight) / 2) << "\" y=\"" << px(kBottom + 40)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
      << escape_xml(xlabel) << "</text>\n";
  svg << "<text x=\"20\" y=\"" << px((kTop + kBottom) / 2)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 20 " << px((kTop + kBottom) / 2) << ")\">"
      << escape_xml(ylabel) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    if (style == PlotStyle::Lines) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
      for (const auto& point : series[s].points) {
        if (!std::isfinite(point[0]) || !std::isfinite(point[1])) continue;
        svg << px(x_range.map(point[0], kLeft, kRight)) << ','
            << px(y_range.map(point[1], kBottom, kTop)) << ' ';
      }
      svg << "\"/>\n";
    } else {
      for (const auto& point : series[s].points) {
        if (!std::isfinite(point[0]) || !std::isfinite(point[1])) continue;
        svg << "<circle cx=\"" << px(x_range.map(point[0], kLeft, kRight)) << "\" cy=\""
            << px(y_range.map(point[1], kBottom, kTop)) << "\" r=\"2.5\" fill=\"" << color
            << "\" fill-opacity=\"0.7\"/>\n";
      }
    }
    // Legend entry.
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(s);
    svg << "<line x1=\"" << px(kRight + 12) << "\" y1=\"" << px(ly) << "\" x2=\""
        << px(kRight + 34) << "\" y2=\"" << px(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"3\"/>\n";
    svg << "<text x=\"" << px(kRight + 40) << "\" y=\"" << px(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(series[s].label)
        << "</text>\n";
  }

  svg << "</svg>\n";

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("emit_svg: cannot open '" + path + "' for writing");
  }
  out << svg.str();
  out.flush();
  if (!out) {
    throw std::runtime_error("emit_svg: failed writing '" + path + "'");
  }
}

}  // namespace modal
