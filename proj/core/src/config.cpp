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

#include "modal/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "modal/model.hpp"

namespace modal {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(trim(s.substr(start)));
      break;
    }
    parts.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
  return parts;
}

std::string fmt_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

[[noreturn]] void fail(const std::string& where, int line, const std::string& message) {
  throw ConfigError(where + ":" + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& value, const std::string& where, int line,
                    const std::string& key) {
  try {
    std::size_t consumed = 0;
    const double v = std::stod(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(where, line, key + ": expected a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& value, const std::string& where, int line,
                    const std::string& key) {
  try {
    std::size_t consumed = 0;
    const long long v = std::stoll(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(where, line, key + ": expected an integer, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& value, const std::string& where, int line,
                        const std::string& key) {
  try {
    std::size_t consumed = 0;
    const std::uint64_t v = std::stoull(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail(where, line, key + ": expected an unsigned integer, got '" + value + "'");
  }
}

// magnitude@phase, e.g. "0.95@0.69".
Complex parse_polar(const std::string& value, const std::string& where, int line,
                    const std::string& key) {
  const std::size_t at = value.find('@');
  if (at == std::string::npos) {
    fail(where, line, key + ": expected magnitude@phase, got '" + value + "'");
  }
  const double mag = parse_double(trim(value.substr(0, at)), where, line, key);
  const double phase = parse_double(trim(value.substr(at + 1)), where, line, key);
  return std::polar(mag, phase);
}

std::string fmt_polar(Complex z) {
  return fmt_double(std::abs(z)) + "@" + fmt_double(std::arg(z));
}

ArrayKind parse_kind(const std::string& value, const std::string& where, int line,
                     const std::string& key) {
  if (value == "uniform" || value == "ula") return ArrayKind::Uniform;
  if (value == "sparse") return ArrayKind::Sparse;
  if (value == "coprime") return ArrayKind::Coprime;
  fail(where, line, key + ": unknown value '" + value + "' (expected uniform, sparse, or coprime)");
}

}  // namespace

GeometrySpec GeometrySpec::ula(int m) {
  GeometrySpec spec;
  spec.kind = ArrayKind::Uniform;
  spec.m = m;
  return spec;
}

GeometrySpec GeometrySpec::sparse(int m, int d, int M) {
  GeometrySpec spec;
  spec.kind = ArrayKind::Sparse;
  spec.m = m;
  spec.d = d;
  spec.M = M;
  return spec;
}

GeometrySpec GeometrySpec::coprime(int m1, int m2) {
  GeometrySpec spec;
  spec.kind = ArrayKind::Coprime;
  spec.m1 = m1;
  spec.m2 = m2;
  return spec;
}

ArrayGeometry GeometrySpec::build() const {
  switch (kind) {
    case ArrayKind::Uniform:
      return make_ula(m);
    case ArrayKind::Sparse:
      return make_sparse(m, d, M);
    case ArrayKind::Coprime:
      return make_coprime(m1, m2);
  }
  throw std::logic_error("GeometrySpec: unknown kind");
}

std::string GeometrySpec::label() const {
  // Field separator is '-' so labels stay single CSV cells.
  switch (kind) {
    case ArrayKind::Uniform:
      return "ula(" + std::to_string(m) + ")";
    case ArrayKind::Sparse:
      return "sparse(" + std::to_string(m) + "-" + std::to_string(d) + "-" +
             std::to_string(M) + ")";
    case ArrayKind::Coprime:
      return "coprime(" + std::to_string(m1) + "-" + std::to_string(m2) + ")";
  }
  throw std::logic_error("GeometrySpec: unknown kind");
}

ExperimentConfig parse_config(std::istream& in, const std::string& source_name) {
  ExperimentConfig config;
  config.snr_db_grid.clear();

  // Geometry fields arrive piecemeal; collect per index, assemble afterwards.
  std::map<int, GeometrySpec> geometry_by_index;
  std::map<int, int> geometry_first_line;
  bool saw_unindexed_geometry = false;
  bool saw_indexed_geometry = false;
  std::map<std::string, int> seen_keys;

  std::string line;
  int line_no = 0;
  int key_count = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;

    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
      fail(source_name, line_no, "expected 'key = value'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) fail(source_name, line_no, "missing key before '='");
    if (value.empty()) fail(source_name, line_no, key + ": missing value");

    if (auto [it, inserted] = seen_keys.emplace(key, line_no); !inserted) {
      fail(source_name, line_no,
           key + ": duplicate key (first seen on line " + std::to_string(it->second) + ")");
    }
    ++key_count;

    if (key.rfind("geometry.", 0) == 0) {
      std::string rest = key.substr(9);
      int index = 0;
      const std::size_t dot = rest.find('.');
      if (dot != std::string::npos && !rest.empty() &&
          std::isdigit(static_cast<unsigned char>(rest[0]))) {
        index = static_cast<int>(parse_int(rest.substr(0, dot), source_name, line_no, key));
        rest = rest.substr(dot + 1);
        saw_indexed_geometry = true;
      } else {
        saw_unindexed_geometry = true;
      }
      if (saw_indexed_geometry && saw_unindexed_geometry) {
        fail(source_name, line_no,
             "geometry: do not mix indexed (geometry.0.*) and unindexed (geometry.*) keys");
      }
      GeometrySpec& spec = geometry_by_index[index];
      geometry_first_line.emplace(index, line_no);
      if (rest == "kind") {
        spec.kind = parse_kind(value, source_name, line_no, key);
      } else if (rest == "m") {
        spec.m = static_cast<int>(parse_int(value, source_name, line_no, key));
      } else if (rest == "d") {
        spec.d = static_cast<int>(parse_int(value, source_name, line_no, key));
      } else if (rest == "M") {
        spec.M = static_cast<int>(parse_int(value, source_name, line_no, key));
      } else if (rest == "m1") {
        spec.m1 = static_cast<int>(parse_int(value, source_name, line_no, key));
      } else if (rest == "m2") {
        spec.m2 = static_cast<int>(parse_int(value, source_name, line_no, key));
      } else {
        fail(source_name, line_no, "unknown key '" + key + "'");
      }
      continue;
    }

    if (key == "modes") {
      for (const std::string& part : split(value, ',')) {
        config.modes.push_back(parse_polar(part, source_name, line_no, key));
      }
    } else if (key == "weights.kind") {
      if (value == "constant") {
        config.weights.kind = WeightSpec::Kind::Constant;
      } else if (value == "random") {
        config.weights.kind = WeightSpec::Kind::Random;
      } else {
        fail(source_name, line_no, key + ": unknown value '" + value + "'");
      }
    } else if (key == "weights.values") {
      for (const std::string& part : split(value, ',')) {
        config.weights.values.push_back(parse_polar(part, source_name, line_no, key));
      }
    } else if (key == "weights.variance") {
      config.weights.variance = parse_double(value, source_name, line_no, key);
    } else if (key == "snapshots") {
      config.snapshots = static_cast<int>(parse_int(value, source_name, line_no, key));
    } else if (key == "snr_db") {
      for (const std::string& part : split(value, ',')) {
        config.snr_db_grid.push_back(parse_double(part, source_name, line_no, key));
      }
    } else if (key == "trials") {
      config.trials = static_cast<int>(parse_int(value, source_name, line_no, key));
    } else if (key == "seed") {
      config.master_seed = parse_u64(value, source_name, line_no, key);
    } else if (key == "iqml.max_iters") {
      config.iqml.max_iters = static_cast<int>(parse_int(value, source_name, line_no, key));
    } else if (key == "iqml.tol") {
      config.iqml.tol = parse_double(value, source_name, line_no, key);
    } else if (key == "iqml.ridge") {
      config.iqml.ridge = parse_double(value, source_name, line_no, key);
    } else if (key == "output.csv") {
      config.output_csv = value;
    } else if (key == "output.svg") {
      config.output_svg = value;
    } else if (key == "output.scatter_svg") {
      config.output_scatter_svg = value;
    } else {
      fail(source_name, line_no, "unknown key '" + key + "'");
    }
  }

  if (key_count == 0) {
    fail(source_name, 1, "empty config");
  }

  int expected = 0;
  for (const auto& [index, spec] : geometry_by_index) {
    if (index != expected) {
      fail(source_name, geometry_first_line.at(index),
           "geometry." + std::to_string(index) + ": indices must be contiguous from 0");
    }
    ++expected;
    config.geometries.push_back(spec);
  }

  if (config.snr_db_grid.empty()) {
    config.snr_db_grid.push_back(std::numeric_limits<double>::infinity());
  }

  validate_config(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open config file");
  }
  return parse_config(in, path);
}

std::string save_config(const ExperimentConfig& config) {
  std::ostringstream out;
  const bool indexed = config.geometries.size() > 1;
  for (std::size_t i = 0; i < config.geometries.size(); ++i) {
    const GeometrySpec& spec = config.geometries[i];
    const std::string prefix =
        indexed ? "geometry." + std::to_string(i) + "." : std::string("geometry.");
    switch (spec.kind) {
      case ArrayKind::Uniform:
        out << prefix << "kind = uniform\n" << prefix << "m = " << spec.m << "\n";
        break;
      case ArrayKind::Sparse:
        out << prefix << "kind = sparse\n"
            << prefix << "m = " << spec.m << "\n"
            << prefix << "d = " << spec.d << "\n"
            << prefix << "M = " << spec.M << "\n";
        break;
      case ArrayKind::Coprime:
        out << prefix << "kind = coprime\n"
            << prefix << "m1 = " << spec.m1 << "\n"
            << prefix << "m2 = " << spec.m2 << "\n";
        break;
    }
  }

  out << "modes = ";
  for (std::size_t k = 0; k < config.modes.size(); ++k) {
    if (k) out << ", ";
    out << fmt_polar(config.modes[k]);
  }
  out << "\n";

  out << "weights.kind = "
      << (config.weights.kind == WeightSpec::Kind::Constant ? "constant" : "random") << "\n";
  if (!config.weights.values.empty()) {
    out << "weights.values = ";
    for (std::size_t k = 0; k < config.weights.values.size(); ++k) {
      if (k) out << ", ";
      out << fmt_polar(config.weights.values[k]);
    }
    out << "\n";
  }
  if (config.weights.kind == WeightSpec::Kind::Random) {
    out << "weights.variance = " << fmt_double(config.weights.variance) << "\n";
  }

  out << "snapshots = " << config.snapshots << "\n";
  out << "snr_db = ";
  for (std::size_t i = 0; i < config.snr_db_grid.size(); ++i) {
    if (i) out << ", ";
    out << fmt_double(config.snr_db_grid[i]);
  }
  out << "\n";
  out << "trials = " << config.trials << "\n";
  out << "seed = " << config.master_seed << "\n";
  out << "iqml.max_iters = " << config.iqml.max_iters << "\n";
  out << "iqml.tol = " << fmt_double(config.iqml.tol) << "\n";
  out << "iqml.ridge = " << fmt_double(config.iqml.ridge) << "\n";
  if (!config.output_csv.empty()) out << "output.csv = " << config.output_csv << "\n";
  if (!config.output_svg.empty()) out << "output.svg = " << config.output_svg << "\n";
  if (!config.output_scatter_svg.empty()) {
    out << "output.scatter_svg = " << config.output_scatter_svg << "\n";
  }
  return out.str();
}

void validate_config(const ExperimentConfig& config) {
  if (config.geometries.empty()) {
    throw ConfigError("geometry: at least one geometry required");
  }
  for (const GeometrySpec& spec : config.geometries) {
    try {
      (void)spec.build();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("geometry: ") + e.what());
    }
  }
  if (config.modes.empty()) {
    throw ConfigError("modes: at least one mode required");
  }
  for (const Complex& z : config.modes) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ConfigError("modes: values must be finite");
    }
  }
  try {
    (void)ModeSet(config.modes);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("modes: ") + e.what());
  }
  if (!config.weights.values.empty() && config.weights.values.size() != config.modes.size()) {
    throw ConfigError("weights.values: need exactly one weight per mode");
  }
  if (config.weights.kind == WeightSpec::Kind::Random && !(config.weights.variance > 0.0)) {
    throw ConfigError("weights.variance: must be > 0 for random weights");
  }
  if (config.snapshots < 1) {
    throw ConfigError("snapshots: must be >= 1");
  }
  if (config.snr_db_grid.empty()) {
    throw ConfigError("snr_db: grid must be nonempty");
  }
  for (double snr : config.snr_db_grid) {
    if (std::isnan(snr)) throw ConfigError("snr_db: values must not be NaN");
  }
  if (config.trials < 1) {
    throw ConfigError("trials: must be >= 1");
  }
  if (config.iqml.max_iters < 1) {
    throw ConfigError("iqml.max_iters: must be >= 1");
  }
  if (!(config.iqml.tol > 0.0)) {
    throw ConfigError("iqml.tol: must be > 0");
  }
  if (config.iqml.ridge < 0.0) {
    throw ConfigError("iqml.ridge: must be >= 0");
  }
}

}  // namespace modal
